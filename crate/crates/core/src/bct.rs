//! Boomerang connectivity tables, computed from the two-equation system
//! f(x)+f(y) = b, f(x+a)+f(y+a) = b over all pairs (x, y).
//!
//! The row kernel never enumerates pairs directly. XORing the two equations
//! shows x and y must share a derivative value f(x)+f(x+a), so the inputs
//! are bucketed by that key in one O(q) pass; inside a bucket any value pair
//! (f(x), f(y)) solves the system for b = f(x)+f(y), and the whole row falls
//! out of convolving each bucket's value histogram with itself. Per-row cost
//! is O(q + sum of squared bucket sizes) time and O(q) space.

use rayon::prelude::*;

use crate::ddt::ensure_table_budget;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::func::{Func, FuncBody};
use crate::table::{RowSpectrum, TableKind, UniformityTable, FULL_STORAGE_MAX_N};

/// One BCT row for fixed a, all b at once.
pub(crate) fn bct_row_of(values: &[Elem], a: Elem) -> Vec<u64> {
    let q = values.len();
    let mut row = vec![0u64; q];
    if a == 0 {
        // Both equations coincide: count pairs with f(x)+f(y) = b via the
        // value histogram. A permutation has the closed form row of all q.
        let mut hist = vec![0u64; q];
        for &v in values {
            hist[v as usize] += 1;
        }
        if hist.iter().all(|&c| c <= 1) {
            return vec![q as u64; q];
        }
        let present: Vec<(u32, u64)> = hist
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(v, &c)| (v as u32, c))
            .collect();
        for &(v1, c1) in &present {
            for &(v2, c2) in &present {
                row[(v1 ^ v2) as usize] += c1 * c2;
            }
        }
        return row;
    }

    // Group the inputs by derivative key with a counting sort, then fold
    // each bucket's value multiset onto the row.
    let mut keys = vec![0u32; q];
    for x in 0..q {
        keys[x] = values[x] ^ values[x ^ a as usize];
    }
    let mut start = vec![0u32; q + 1];
    for &k in &keys {
        start[k as usize + 1] += 1;
    }
    for i in 0..q {
        start[i + 1] += start[i];
    }
    let mut cursor: Vec<u32> = start[..q].to_vec();
    let mut grouped = vec![0u32; q];
    for x in 0..q {
        let k = keys[x] as usize;
        grouped[cursor[k] as usize] = values[x];
        cursor[k] += 1;
    }

    let mut rle: Vec<(u32, u64)> = Vec::new();
    for k in 0..q {
        let (lo, hi) = (start[k] as usize, start[k + 1] as usize);
        if lo == hi {
            continue;
        }
        let bucket = &mut grouped[lo..hi];
        bucket.sort_unstable();
        rle.clear();
        let mut i = 0;
        while i < bucket.len() {
            let v = bucket[i];
            let mut j = i + 1;
            while j < bucket.len() && bucket[j] == v {
                j += 1;
            }
            rle.push((v, (j - i) as u64));
            i = j;
        }
        for &(v1, c1) in &rle {
            for &(v2, c2) in &rle {
                row[(v1 ^ v2) as usize] += c1 * c2;
            }
        }
    }
    row
}

/// Number of solutions (x, y) of the system at (a, b).
pub fn bct_entry(f: &Func, a: Elem, b: Elem) -> u64 {
    bct_row_of(&f.values(), a)[b as usize]
}

/// The directly computed row a.
pub fn bct_row(f: &Func, a: Elem) -> Vec<u64> {
    bct_row_of(&f.values(), a)
}

/// The complete table; same storage and budget policy as the DDT builder,
/// with the a = 0 row computed and stored but excluded from the maximum.
pub fn bct(f: &Func) -> Result<UniformityTable> {
    ensure_table_budget(f, "bct")?;
    let field = f.field();
    let q = field.q() as usize;
    let values = f.values();
    if field.n() <= FULL_STORAGE_MAX_N {
        let rows: Vec<Vec<u64>> = (0..q)
            .into_par_iter()
            .map(|a| bct_row_of(&values, a as Elem))
            .collect();
        return UniformityTable::from_rows(TableKind::Bct, field, f.desc(), rows);
    }
    let spectra = match f.body() {
        FuncBody::Power { .. } => {
            let shared = RowSpectrum::from_row(&bct_row_of(&values, 1));
            let mut spectra = vec![RowSpectrum::from_row(&bct_row_of(&values, 0))];
            spectra.extend(std::iter::repeat(shared).take(q - 1));
            spectra
        }
        FuncBody::Lut(_) => (0..q)
            .into_par_iter()
            .map(|a| RowSpectrum::from_row(&bct_row_of(&values, a as Elem)))
            .collect(),
    };
    Ok(UniformityTable::from_spectra(
        TableKind::Bct,
        field,
        f.desc(),
        spectra,
    ))
}

/// Max entry over a != 0 and b != 0.
pub fn boomerang_uniformity(t: &UniformityTable) -> Result<u64> {
    if t.kind() != TableKind::Bct {
        return Err(Error::KindMismatch {
            expected: "bct",
            got: t.kind().name(),
        });
    }
    Ok(t.max_nontrivial())
}

/// Row a of a power map rebuilt from row 1 (substitute x -> aX, y -> aY in
/// the system; entry (a, b) equals entry (1, b * a^-d)).
pub fn bct_row_powermap(f: &Func, a: Elem) -> Result<Vec<u64>> {
    let d = f.exponent().ok_or(Error::NotAPowerMap)?;
    if a == 0 {
        return Err(Error::ZeroRowIndex);
    }
    let field = f.field();
    let row1 = bct_row(f, 1);
    let scale = field.pow(a, d);
    let mut row = vec![0u64; row1.len()];
    for (b, &count) in row1.iter().enumerate() {
        row[field.mul(b as Elem, scale) as usize] = count;
    }
    Ok(row)
}

/// The inverse-based count the system formulation is equivalent to for
/// permutations: x with f^-1(f(x)+b) + f^-1(f(x+a)+b) = a. Kept as a
/// cross-check; non-permutations are rejected.
pub fn bct_entry_inverse(f: &Func, a: Elem, b: Elem) -> Result<u64> {
    if !f.is_permutation() {
        return Err(Error::NotAPermutation);
    }
    let values = f.values();
    let q = values.len();
    let mut inverse = vec![0u32; q];
    for (x, &v) in values.iter().enumerate() {
        inverse[v as usize] = x as u32;
    }
    Ok((0..q)
        .filter(|&x| {
            inverse[(values[x] ^ b) as usize] ^ inverse[(values[x ^ a as usize] ^ b) as usize]
                == a
        })
        .count() as u64)
}
