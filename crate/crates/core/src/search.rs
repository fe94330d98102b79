//! Exhaustive scan of power-map exponents for functions whose boomerang
//! uniformity falls strictly below their differential uniformity.
//!
//! Exponents in one cyclotomic coset {d * 2^i mod 2^n - 1} are conjugate
//! under squaring and share both table spectra, so the scan visits only the
//! smallest member of each coset and re-verifies every hit from its full
//! tables afterwards, without the coset shortcut.

use rayon::prelude::*;

use crate::bct::{bct, boomerang_uniformity};
use crate::ddt::{ddt, differential_uniformity};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::func::Func;
use crate::report::{analyze, AnalysisReport};

pub const SEARCH_MAX_N: u32 = 10;

/// Smallest member of the cyclotomic coset of d modulo 2^n - 1.
pub fn cyclotomic_coset_min(d: u64, n: u32) -> u64 {
    let order = (1u64 << n) - 1;
    let d = d % order;
    let mut best = d;
    let mut cur = d;
    loop {
        cur = cur * 2 % order;
        if cur == d {
            return best;
        }
        best = best.min(cur);
    }
}

/// Coset representatives within [2, 2^n - 2]; the cosets of 0 (constant) and
/// 1 (the linear maps x^(2^i)) are skipped.
pub fn coset_representatives(n: u32) -> Vec<u64> {
    let order = (1u64 << n) - 1;
    (2..order)
        .filter(|&d| cyclotomic_coset_min(d, n) == d)
        .collect()
}

/// All coset representatives d with boomerang uniformity strictly below
/// differential uniformity, sorted by d, each report re-verified from full
/// naive tables.
pub fn search_power_maps(field: &Field) -> Result<Vec<AnalysisReport>> {
    let n = field.n();
    if n > SEARCH_MAX_N {
        return Err(Error::BudgetExceeded {
            what: format!("exponent search at n={n}"),
            estimate: format!(
                "~2^{n}/n coset scans of 2^{} cells each; the limit is n <= {SEARCH_MAX_N}",
                2 * n
            ),
        });
    }
    let hits: Vec<AnalysisReport> = coset_representatives(n)
        .into_par_iter()
        .map(|d| analyze(&Func::power(*field, d)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|r| r.boomerang < r.delta)
        .collect();

    for report in &hits {
        let d = match report.d {
            crate::func::FuncDesc::Power(d) => d,
            crate::func::FuncDesc::Lut => unreachable!("search scans power maps"),
        };
        let f = Func::power(*field, d);
        let delta = differential_uniformity(&ddt(&f)?)?;
        let boomerang = boomerang_uniformity(&bct(&f)?)?;
        if (delta, boomerang) != (report.delta, report.boomerang) {
            return Err(Error::Internal(format!(
                "search hit d={d} re-verified to ({delta}, {boomerang}), scan said ({}, {})",
                report.delta, report.boomerang
            )));
        }
    }
    Ok(hits)
}
