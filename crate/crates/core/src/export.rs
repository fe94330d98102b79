//! Table serialization: CSV for full q x q tables, a JSON spectrum dump for
//! either storage form, and the CSV reader used for round-trips.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::func::FuncDesc;
use crate::table::{RowSpectrum, Storage, TableKind, UniformityTable, FULL_STORAGE_MAX_N};

pub fn toolkit_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Writes the row-major CSV form. The single header line carries the table
/// metadata as `key=value` tokens; requires full storage.
pub fn write_table_csv<W: Write>(t: &UniformityTable, w: &mut W) -> Result<()> {
    let Storage::Full(counts) = t.storage() else {
        return Err(Error::FullTableTooLarge {
            n: t.field().n(),
            threshold: FULL_STORAGE_MAX_N,
        });
    };
    let field = t.field();
    let q = field.q() as usize;
    writeln!(
        w,
        "# sboxtab v{} kind={} n={} modulus={} poly={} d={}",
        toolkit_version(),
        t.kind(),
        field.n(),
        field.modulus_hex(),
        field.modulus_poly(),
        t.func()
    )?;
    let mut line = String::new();
    for a in 0..q {
        line.clear();
        for b in 0..q {
            if b > 0 {
                line.push(',');
            }
            line.push_str(itoa(counts[a * q + b]).as_str());
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

fn itoa(v: u32) -> String {
    v.to_string()
}

pub fn table_csv_string(t: &UniformityTable) -> Result<String> {
    let mut out = Vec::new();
    write_table_csv(t, &mut out)?;
    Ok(String::from_utf8(out).expect("csv output is ascii"))
}

/// Reads a table written by [`write_table_csv`].
pub fn read_table_csv<R: BufRead>(reader: R) -> Result<UniformityTable> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::TableParse("empty file".to_string()))??;
    let mut kind = None;
    let mut n = None;
    let mut modulus = None;
    let mut func = None;
    for token in header.trim_start_matches('#').split_whitespace() {
        let Some((key, value)) = token.split_once('=') else {
            continue;
        };
        match key {
            "kind" => {
                kind = Some(match value {
                    "ddt" => TableKind::Ddt,
                    "bct" => TableKind::Bct,
                    other => return Err(Error::TableParse(format!("unknown kind '{other}'"))),
                })
            }
            "n" => {
                n = Some(
                    value
                        .parse::<u32>()
                        .map_err(|_| Error::TableParse(format!("bad n '{value}'")))?,
                )
            }
            "modulus" => modulus = Some(crate::field::parse_modulus(value)?),
            "d" => {
                func = Some(if value == "lut" {
                    FuncDesc::Lut
                } else {
                    FuncDesc::Power(
                        value
                            .parse::<u64>()
                            .map_err(|_| Error::TableParse(format!("bad d '{value}'")))?,
                    )
                })
            }
            _ => {}
        }
    }
    let kind = kind.ok_or_else(|| Error::TableParse("header lacks kind".to_string()))?;
    let n = n.ok_or_else(|| Error::TableParse("header lacks n".to_string()))?;
    let modulus = modulus.ok_or_else(|| Error::TableParse("header lacks modulus".to_string()))?;
    let func = func.ok_or_else(|| Error::TableParse("header lacks d".to_string()))?;
    let field = Field::new(n, Some(modulus))?;
    let q = field.q() as usize;

    let mut rows = Vec::with_capacity(q);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                cell.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::TableParse(format!("bad count '{cell}'")))
            })
            .collect::<Result<Vec<u64>>>()?;
        if row.len() != q {
            return Err(Error::TableParse(format!(
                "row {} has {} cells, expected {q}",
                rows.len(),
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != q {
        return Err(Error::TableParse(format!(
            "found {} rows, expected {q}",
            rows.len()
        )));
    }
    UniformityTable::from_rows(kind, field, func, rows)
}

/// The JSON spectrum dump: per-row (count, multiplicity) pairs over b != 0
/// with the b = 0 cell kept separate, rows ordered by a.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableDump {
    pub toolkit: String,
    pub version: String,
    pub kind: TableKind,
    pub n: u32,
    pub modulus: String,
    pub modulus_poly: String,
    pub d: FuncDesc,
    pub max_nontrivial: u64,
    pub rows: Vec<RowDump>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RowDump {
    pub a: Elem,
    /// The a = 0 row is excluded from both uniformity maxima.
    pub trivial: bool,
    pub b0: u64,
    pub spectrum: Vec<(u64, u32)>,
}

pub fn table_dump(t: &UniformityTable) -> TableDump {
    let field = t.field();
    let rows = (0..field.q())
        .map(|a| {
            let s: RowSpectrum = t.row_spectrum(a);
            RowDump {
                a,
                trivial: a == 0,
                b0: s.zero_b,
                spectrum: s.counts,
            }
        })
        .collect();
    TableDump {
        toolkit: "sboxtab".to_string(),
        version: toolkit_version().to_string(),
        kind: t.kind(),
        n: field.n(),
        modulus: field.modulus_hex(),
        modulus_poly: field.modulus_poly(),
        d: t.func(),
        max_nontrivial: t.max_nontrivial(),
        rows,
    }
}

pub fn table_json(t: &UniformityTable) -> Result<String> {
    serde_json::to_string_pretty(&table_dump(t))
        .map_err(|e| Error::TableParse(format!("json encoding failed: {e}")))
}
