//! Difference distribution tables: counts of x with f(x+a) + f(x) = b,
//! differential uniformity, and the APN / locally-APN classifications.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::func::{Func, FuncBody};
use crate::table::{RowSpectrum, TableKind, UniformityTable, FULL_STORAGE_MAX_N};

/// All-rows table computations are refused above these dimensions: a lut
/// gets the naive O(2^2n) sweep, a power map the a=1 row reduction.
pub const LUT_TABLE_MAX_N: u32 = 12;
pub const POWER_TABLE_MAX_N: u32 = 16;

pub(crate) fn ensure_table_budget(f: &Func, what: &str) -> Result<()> {
    let n = f.field().n();
    let cap = match f.body() {
        FuncBody::Power { .. } => POWER_TABLE_MAX_N,
        FuncBody::Lut(_) => LUT_TABLE_MAX_N,
    };
    if n > cap {
        return Err(Error::BudgetExceeded {
            what: format!("{what} at n={n}"),
            estimate: format!(
                "roughly 2^{} cell updates across 2^{n} rows; the limit is n <= {cap} for this input",
                2 * n
            ),
        });
    }
    Ok(())
}

/// One table row in a single O(q) sweep over x.
pub(crate) fn ddt_row_of(values: &[Elem], a: Elem) -> Vec<u64> {
    let q = values.len();
    let mut row = vec![0u64; q];
    for x in 0..q {
        row[(values[x] ^ values[x ^ a as usize]) as usize] += 1;
    }
    row
}

/// Exact count of x with f(x+a) + f(x) = b.
pub fn ddt_entry(f: &Func, a: Elem, b: Elem) -> u64 {
    let values = f.values();
    let q = values.len();
    (0..q)
        .filter(|&x| values[x] ^ values[x ^ a as usize] == b)
        .count() as u64
}

/// The directly computed row a.
pub fn ddt_row(f: &Func, a: Elem) -> Vec<u64> {
    ddt_row_of(&f.values(), a)
}

/// The complete table. Full storage up to n = 10; above that, row spectra.
/// Power maps above n = 10 use the fact that every nonzero row is a
/// re-indexing of row 1 (see [`ddt_row_powermap`]), so one row determines
/// every spectrum.
pub fn ddt(f: &Func) -> Result<UniformityTable> {
    ensure_table_budget(f, "ddt")?;
    let field = f.field();
    let q = field.q() as usize;
    let values = f.values();
    if field.n() <= FULL_STORAGE_MAX_N {
        let rows: Vec<Vec<u64>> = (0..q)
            .into_par_iter()
            .map(|a| ddt_row_of(&values, a as Elem))
            .collect();
        return UniformityTable::from_rows(TableKind::Ddt, field, f.desc(), rows);
    }
    let spectra = match f.body() {
        FuncBody::Power { .. } => {
            let shared = RowSpectrum::from_row(&ddt_row_of(&values, 1));
            let mut spectra = vec![trivial_ddt_row_spectrum(q); 1];
            spectra.extend(std::iter::repeat(shared).take(q - 1));
            spectra
        }
        FuncBody::Lut(_) => (0..q)
            .into_par_iter()
            .map(|a| RowSpectrum::from_row(&ddt_row_of(&values, a as Elem)))
            .collect(),
    };
    Ok(UniformityTable::from_spectra(
        TableKind::Ddt,
        field,
        f.desc(),
        spectra,
    ))
}

/// Row a = 0: the zero derivative puts all q inputs at b = 0.
fn trivial_ddt_row_spectrum(q: usize) -> RowSpectrum {
    RowSpectrum {
        zero_b: q as u64,
        counts: vec![(0, (q - 1) as u32)],
    }
}

/// Max entry over a != 0 and all b, b = 0 included.
pub fn differential_uniformity(t: &UniformityTable) -> Result<u64> {
    if t.kind() != TableKind::Ddt {
        return Err(Error::KindMismatch {
            expected: "ddt",
            got: t.kind().name(),
        });
    }
    Ok(t.max_nontrivial())
}

/// Differential uniformity straight from the function: row 1 suffices for a
/// power map, anything else takes the full row sweep.
pub(crate) fn delta_of(f: &Func) -> Result<u64> {
    ensure_table_budget(f, "differential uniformity")?;
    let values = f.values();
    let q = values.len();
    match f.body() {
        FuncBody::Power { .. } => Ok(ddt_row_of(&values, 1).into_iter().max().unwrap_or(0)),
        FuncBody::Lut(_) => Ok((1..q)
            .into_par_iter()
            .map(|a| ddt_row_of(&values, a as Elem).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0)),
    }
}

/// Differential uniformity exactly 2.
pub fn is_apn(f: &Func) -> Result<bool> {
    Ok(delta_of(f)? == 2)
}

/// Power maps with row-1 entries at most 2 outside b in {0, 1}. Defined for
/// power maps only; lut input is refused rather than guessed at.
pub fn is_locally_apn(f: &Func) -> Result<bool> {
    if f.exponent().is_none() {
        return Err(Error::NotAPowerMap);
    }
    let row = ddt_row(f, 1);
    Ok(row.iter().skip(2).all(|&c| c <= 2))
}

/// Row a of a power map rebuilt from row 1: substituting x = aX shows
/// entry (a, b) equals entry (1, b * a^-d), i.e. row 1 re-indexed by
/// b -> b * a^d.
pub fn ddt_row_powermap(f: &Func, a: Elem) -> Result<Vec<u64>> {
    let d = f.exponent().ok_or(Error::NotAPowerMap)?;
    if a == 0 {
        return Err(Error::ZeroRowIndex);
    }
    let field = f.field();
    let row1 = ddt_row(f, 1);
    let scale = field.pow(a, d);
    let mut row = vec![0u64; row1.len()];
    for (b, &count) in row1.iter().enumerate() {
        row[field.mul(b as Elem, scale) as usize] = count;
    }
    Ok(row)
}
