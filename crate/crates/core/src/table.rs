//! The q x q count table shared by the DDT and BCT computations, with a
//! compressed per-row spectrum form for dimensions where the full table is
//! too large to keep around.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::func::FuncDesc;

/// Full q x q storage is kept only up to this dimension (4 MiB of 32-bit
/// counts at n=10); larger tables are stored as row spectra.
pub const FULL_STORAGE_MAX_N: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Ddt,
    Bct,
}

impl TableKind {
    pub fn name(&self) -> &'static str {
        match self {
            TableKind::Ddt => "ddt",
            TableKind::Bct => "bct",
        }
    }
}

impl std::fmt::Display for TableKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Multiset of the counts in one row, with the b=0 cell kept separate so the
/// two uniformity maxima (which treat the b=0 column differently) can both be
/// recovered from the compressed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSpectrum {
    /// Count at b = 0.
    pub zero_b: u64,
    /// Sorted (count value, multiplicity) pairs over b != 0.
    pub counts: Vec<(u64, u32)>,
}

impl RowSpectrum {
    pub fn from_row(row: &[u64]) -> RowSpectrum {
        let mut rest: Vec<u64> = row[1..].to_vec();
        rest.sort_unstable();
        let mut counts = Vec::new();
        let mut i = 0;
        while i < rest.len() {
            let v = rest[i];
            let mut j = i + 1;
            while j < rest.len() && rest[j] == v {
                j += 1;
            }
            counts.push((v, (j - i) as u32));
            i = j;
        }
        RowSpectrum {
            zero_b: row[0],
            counts,
        }
    }

    /// Largest count in the row, b = 0 included.
    pub fn max_all(&self) -> u64 {
        self.max_nonzero_b().max(self.zero_b)
    }

    /// Largest count over b != 0.
    pub fn max_nonzero_b(&self) -> u64 {
        self.counts.last().map(|&(v, _)| v).unwrap_or(0)
    }

    /// Number of b values covered (including b = 0).
    pub fn width(&self) -> u64 {
        1 + self.counts.iter().map(|&(_, m)| m as u64).sum::<u64>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Storage {
    /// Row-major q x q counts.
    Full(Vec<u32>),
    /// One spectrum per row a.
    Spectra(Vec<RowSpectrum>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformityTable {
    kind: TableKind,
    field: Field,
    func: FuncDesc,
    storage: Storage,
    max_nontrivial: u64,
}

impl UniformityTable {
    /// Builds full storage from u64 rows, checking the 32-bit bound.
    pub(crate) fn from_rows(
        kind: TableKind,
        field: Field,
        func: FuncDesc,
        rows: Vec<Vec<u64>>,
    ) -> Result<UniformityTable> {
        let q = field.q() as usize;
        debug_assert_eq!(rows.len(), q);
        let mut counts = Vec::with_capacity(q * q);
        for row in &rows {
            debug_assert_eq!(row.len(), q);
            for &c in row {
                counts.push(u32::try_from(c).map_err(|_| Error::CountOverflow { value: c })?);
            }
        }
        let max_nontrivial = max_nontrivial_full(kind, &counts, q);
        Ok(UniformityTable {
            kind,
            field,
            func,
            storage: Storage::Full(counts),
            max_nontrivial,
        })
    }

    pub(crate) fn from_spectra(
        kind: TableKind,
        field: Field,
        func: FuncDesc,
        spectra: Vec<RowSpectrum>,
    ) -> UniformityTable {
        debug_assert_eq!(spectra.len(), field.q() as usize);
        let max_nontrivial = max_nontrivial_spectra(kind, &spectra);
        UniformityTable {
            kind,
            field,
            func,
            storage: Storage::Spectra(spectra),
            max_nontrivial,
        }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn func(&self) -> FuncDesc {
        self.func
    }

    pub fn storage(&self) -> &Storage {
        &self.storage
    }

    pub fn is_full(&self) -> bool {
        matches!(self.storage, Storage::Full(_))
    }

    /// Maximum over the kind's defining range: all b for a DDT, b != 0 for a
    /// BCT; the a = 0 row is excluded for both.
    pub fn max_nontrivial(&self) -> u64 {
        self.max_nontrivial
    }

    /// Single cell; available only with full storage.
    pub fn entry(&self, a: Elem, b: Elem) -> Option<u64> {
        match &self.storage {
            Storage::Full(counts) => {
                let q = self.field.q() as usize;
                Some(counts[a as usize * q + b as usize] as u64)
            }
            Storage::Spectra(_) => None,
        }
    }

    /// Spectrum of row a, computed on the fly for full storage.
    pub fn row_spectrum(&self, a: Elem) -> RowSpectrum {
        match &self.storage {
            Storage::Full(counts) => {
                let q = self.field.q() as usize;
                let row: Vec<u64> = counts[a as usize * q..(a as usize + 1) * q]
                    .iter()
                    .map(|&c| c as u64)
                    .collect();
                RowSpectrum::from_row(&row)
            }
            Storage::Spectra(spectra) => spectra[a as usize].clone(),
        }
    }
}

fn max_nontrivial_full(kind: TableKind, counts: &[u32], q: usize) -> u64 {
    let mut max = 0u32;
    for a in 1..q {
        let row = &counts[a * q..(a + 1) * q];
        let cells = match kind {
            TableKind::Ddt => &row[..],
            TableKind::Bct => &row[1..],
        };
        for &c in cells {
            max = max.max(c);
        }
    }
    max as u64
}

fn max_nontrivial_spectra(kind: TableKind, spectra: &[RowSpectrum]) -> u64 {
    spectra[1..]
        .iter()
        .map(|s| match kind {
            TableKind::Ddt => s.max_all(),
            TableKind::Bct => s.max_nonzero_b(),
        })
        .max()
        .unwrap_or(0)
}
