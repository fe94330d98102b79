//! Error type shared by the whole toolkit.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field dimension n={n} is outside the supported range 2..=20")]
    DimensionOutOfRange { n: u32 },

    #[error("modulus {modulus:#x} has degree {found}, expected degree {expected}")]
    ModulusWrongDegree {
        modulus: u32,
        found: i32,
        expected: u32,
    },

    #[error("modulus {modulus:#x} is reducible: divisible by {factor:#x}")]
    ModulusReducible { modulus: u32, factor: u32 },

    #[error("cannot parse '{0}' as a modulus (expected hex, decimal, or e.g. \"x^3+x+1\")")]
    ModulusParse(String),

    #[error("0 has no multiplicative inverse")]
    ZeroInverse,

    #[error("lookup table has {got} entries, expected q={expected}")]
    LutLength { got: usize, expected: usize },

    #[error("lookup table entry {value} at index {index} is outside the field (q={q})")]
    LutValue { index: usize, value: u64, q: u32 },

    #[error("lut file line {line}: {msg}")]
    LutParse { line: usize, msg: String },

    #[error("operation is defined for power maps only")]
    NotAPowerMap,

    #[error("operation requires a permutation")]
    NotAPermutation,

    #[error("function is not APN (differential uniformity is {delta})")]
    NotApn { delta: u64 },

    #[error("boomerang uniformity is {observed}, expected 2")]
    BoomerangNotTwo { observed: u64 },

    #[error("a=0 rejected: the scaling reduction needs a nonzero row index")]
    ZeroRowIndex,

    #[error("m={m} is outside the supported range {lo}..={hi}")]
    MOutOfRange { m: u32, lo: u32, hi: u32 },

    #[error("m={m} must be {expected}")]
    WrongParity { m: u32, expected: &'static str },

    #[error("max_m={max_m} yields an empty verification range (need max_m >= 2)")]
    EmptyRange { max_m: u32 },

    #[error("budget exceeded for {what}: {estimate}")]
    BudgetExceeded { what: String, estimate: String },

    #[error("full q x q table is not materialized at n={n} (threshold n <= {threshold}); the spectra (json) format is available")]
    FullTableTooLarge { n: u32, threshold: u32 },

    #[error("count {value} does not fit the 32-bit full-table storage")]
    CountOverflow { value: u64 },

    #[error("table kind mismatch: expected {expected}, got {got}")]
    KindMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("malformed table file: {0}")]
    TableParse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
