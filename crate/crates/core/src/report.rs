//! Per-function summary: permutation/APN/locally-APN flags, both
//! uniformities, and the cells achieving them.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bct::bct_row_of;
use crate::ddt::{ddt_row_of, ensure_table_budget};
use crate::error::Result;
use crate::field::Elem;
use crate::func::{Func, FuncBody, FuncDesc};

/// Cap on how many max-achieving cells a report carries per table.
pub const WITNESS_CAP: usize = 32;

/// A cell achieving a uniformity maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: Elem,
    pub b: Elem,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: u32,
    pub modulus: String,
    pub d: FuncDesc,
    /// Exponent reduced to 0: the constant-1 map under the 0^0 convention.
    pub degenerate: bool,
    pub permutation: bool,
    pub apn: bool,
    /// None for lut input, where the notion is undefined.
    pub locally_apn: Option<bool>,
    pub delta: u64,
    pub boomerang: u64,
    /// Cells achieving delta, in (a, b) order, at most [`WITNESS_CAP`].
    pub delta_witnesses: Vec<Witness>,
    /// Cells achieving the boomerang max, same ordering and cap.
    pub boomerang_witnesses: Vec<Witness>,
    pub runtime_ms: u64,
}

/// Full classification of one function. Power maps are handled through the
/// a=1 row (every nonzero row is a re-indexing of it), luts by sweeping all
/// rows; witnesses are collected in a second pass over the maximal rows.
pub fn analyze(f: &Func) -> Result<AnalysisReport> {
    let start = Instant::now();
    ensure_table_budget(f, "analysis")?;
    let field = f.field();
    let values = f.values();
    let q = values.len();

    let (delta, boomerang, delta_witnesses, boomerang_witnesses, locally_apn);
    match f.body() {
        FuncBody::Power { .. } => {
            let drow = ddt_row_of(&values, 1);
            let brow = bct_row_of(&values, 1);
            delta = drow.iter().copied().max().unwrap_or(0);
            boomerang = brow[1..].iter().copied().max().unwrap_or(0);
            locally_apn = Some(drow.iter().skip(2).all(|&c| c <= 2));
            delta_witnesses = collect_row_witnesses(1, &drow, delta, false);
            boomerang_witnesses = collect_row_witnesses(1, &brow, boomerang, true);
        }
        FuncBody::Lut(_) => {
            locally_apn = None;
            let row_maxima: Vec<(u64, u64)> = (1..q)
                .into_par_iter()
                .map(|a| {
                    let dmax = ddt_row_of(&values, a as Elem).into_iter().max().unwrap_or(0);
                    let bmax = bct_row_of(&values, a as Elem)[1..]
                        .iter()
                        .copied()
                        .max()
                        .unwrap_or(0);
                    (dmax, bmax)
                })
                .collect();
            delta = row_maxima.iter().map(|&(d, _)| d).max().unwrap_or(0);
            boomerang = row_maxima.iter().map(|&(_, b)| b).max().unwrap_or(0);
            let mut dwit = Vec::new();
            let mut bwit = Vec::new();
            for (i, &(dmax, bmax)) in row_maxima.iter().enumerate() {
                let a = (i + 1) as Elem;
                if dmax == delta && dwit.len() < WITNESS_CAP {
                    let row = ddt_row_of(&values, a);
                    dwit.extend(collect_row_witnesses(a, &row, delta, false));
                    dwit.truncate(WITNESS_CAP);
                }
                if bmax == boomerang && bwit.len() < WITNESS_CAP {
                    let row = bct_row_of(&values, a);
                    bwit.extend(collect_row_witnesses(a, &row, boomerang, true));
                    bwit.truncate(WITNESS_CAP);
                }
            }
            delta_witnesses = dwit;
            boomerang_witnesses = bwit;
        }
    }

    Ok(AnalysisReport {
        n: field.n(),
        modulus: field.modulus_hex(),
        d: f.desc(),
        degenerate: f.is_degenerate(),
        permutation: f.is_permutation(),
        apn: delta == 2,
        locally_apn,
        delta,
        boomerang,
        delta_witnesses,
        boomerang_witnesses,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

fn collect_row_witnesses(a: Elem, row: &[u64], target: u64, skip_b0: bool) -> Vec<Witness> {
    row.iter()
        .enumerate()
        .skip(if skip_b0 { 1 } else { 0 })
        .filter(|&(_, &c)| c == target)
        .take(WITNESS_CAP)
        .map(|(b, &count)| Witness {
            a,
            b: b as Elem,
            count,
        })
        .collect()
}
