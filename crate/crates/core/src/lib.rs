//! Tables and uniformities for functions over GF(2^n).
//!
//! The crate computes difference distribution tables (DDT) and boomerang
//! connectivity tables (BCT) for power maps and arbitrary lookup tables,
//! extracts differential and boomerang uniformity, classifies functions
//! (permutation, APN, locally-APN), verifies a battery of exact claims
//! about the x^(2^m - 1) family, and searches exponent space for functions
//! whose boomerang uniformity drops below their differential uniformity.

pub mod bct;
pub mod claims;
pub mod ddt;
pub mod error;
pub mod export;
pub mod field;
pub mod func;
pub mod report;
pub mod search;
pub mod table;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use func::{Func, FuncBody, FuncDesc};
pub use report::{analyze, AnalysisReport, Witness};
pub use table::{RowSpectrum, Storage, TableKind, UniformityTable};
