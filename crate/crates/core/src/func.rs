//! Functions from GF(2^n) to itself: power maps x^d and lookup tables.

use std::borrow::Cow;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuncBody {
    /// x -> x^d with the exponent stored reduced modulo 2^n - 1.
    Power { d: u64 },
    /// Explicit value table indexed by the input element.
    Lut(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Func {
    field: Field,
    body: FuncBody,
}

impl Func {
    /// Power map x^d. Exponents are equivalent modulo 2^n - 1 on the unit
    /// group, so `d` is stored reduced; a `d` that reduces to 0 becomes the
    /// constant-1 map (0^0 = 1) and is flagged degenerate.
    pub fn power(field: Field, d: u64) -> Func {
        let d = d % (field.q() as u64 - 1);
        Func {
            field,
            body: FuncBody::Power { d },
        }
    }

    pub fn from_lut(field: Field, table: Vec<Elem>) -> Result<Func> {
        let q = field.q();
        if table.len() != q as usize {
            return Err(Error::LutLength {
                got: table.len(),
                expected: q as usize,
            });
        }
        for (index, &value) in table.iter().enumerate() {
            if value >= q {
                return Err(Error::LutValue {
                    index,
                    value: value as u64,
                    q,
                });
            }
        }
        Ok(Func {
            field,
            body: FuncBody::Lut(table),
        })
    }

    /// Reads the lut file format: one integer per line (decimal or 0x-hex),
    /// q lines, index = input element value. Blank lines and lines starting
    /// with '#' are skipped.
    pub fn from_lut_path(field: Field, path: &Path) -> Result<Func> {
        Self::from_lut_reader(field, BufReader::new(File::open(path)?))
    }

    pub fn from_lut_reader<R: BufRead>(field: Field, reader: R) -> Result<Func> {
        let mut table = Vec::with_capacity(field.q() as usize);
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let s = line.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let value = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
                u32::from_str_radix(hex, 16)
            } else {
                s.parse::<u32>()
            }
            .map_err(|_| Error::LutParse {
                line: i + 1,
                msg: format!("'{s}' is not a decimal or 0x-hex integer"),
            })?;
            table.push(value);
        }
        Self::from_lut(field, table)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn body(&self) -> &FuncBody {
        &self.body
    }

    pub fn desc(&self) -> FuncDesc {
        match self.body {
            FuncBody::Power { d } => FuncDesc::Power(d),
            FuncBody::Lut(_) => FuncDesc::Lut,
        }
    }

    /// The reduced exponent, when this is a power map.
    pub fn exponent(&self) -> Option<u64> {
        match self.body {
            FuncBody::Power { d } => Some(d),
            FuncBody::Lut(_) => None,
        }
    }

    /// True for the constant map left after exponent reduction hit 0.
    pub fn is_degenerate(&self) -> bool {
        matches!(self.body, FuncBody::Power { d: 0 })
    }

    pub fn eval(&self, x: Elem) -> Elem {
        match &self.body {
            FuncBody::Power { d } => self.field.pow(x, *d),
            FuncBody::Lut(table) => table[x as usize],
        }
    }

    /// The full value table; borrows for lut functions, evaluates once for
    /// power maps.
    pub fn values(&self) -> Cow<'_, [Elem]> {
        match &self.body {
            FuncBody::Power { d } => {
                Cow::Owned((0..self.field.q()).map(|x| self.field.pow(x, *d)).collect())
            }
            FuncBody::Lut(table) => Cow::Borrowed(table),
        }
    }

    /// Pointwise-equal lut form of this function.
    pub fn to_lut(&self) -> Func {
        Func {
            field: self.field,
            body: FuncBody::Lut(self.values().into_owned()),
        }
    }

    /// Bijectivity. For power maps this is the gcd test
    /// gcd(d, 2^n - 1) = 1; for luts a direct seen-set scan.
    pub fn is_permutation(&self) -> bool {
        match &self.body {
            FuncBody::Power { d } => num_integer::gcd(*d, self.field.q() as u64 - 1) == 1,
            FuncBody::Lut(table) => {
                let mut seen = vec![false; table.len()];
                for &v in table {
                    if seen[v as usize] {
                        return false;
                    }
                    seen[v as usize] = true;
                }
                true
            }
        }
    }
}

/// Compact function identity for reports and file headers: an exponent, or
/// the marker "lut". Serializes as a JSON number or the string "lut".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuncDesc {
    Power(u64),
    Lut,
}

impl std::fmt::Display for FuncDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FuncDesc::Power(d) => write!(f, "{d}"),
            FuncDesc::Lut => write!(f, "lut"),
        }
    }
}

impl Serialize for FuncDesc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FuncDesc::Power(d) => serializer.serialize_u64(*d),
            FuncDesc::Lut => serializer.serialize_str("lut"),
        }
    }
}

impl<'de> Deserialize<'de> for FuncDesc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct DescVisitor;
        impl<'de> Visitor<'de> for DescVisitor {
            type Value = FuncDesc;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an exponent or the string \"lut\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<FuncDesc, E> {
                Ok(FuncDesc::Power(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<FuncDesc, E> {
                if v == "lut" {
                    Ok(FuncDesc::Lut)
                } else {
                    v.parse::<u64>()
                        .map(FuncDesc::Power)
                        .map_err(|_| E::custom("expected an exponent or \"lut\""))
                }
            }
        }
        deserializer.deserialize_any(DescVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u32) -> Field {
        Field::new(n, None).unwrap()
    }

    #[test]
    fn eval_power_map_fixed_points() {
        let x7 = Func::power(f(6), 7);
        assert_eq!(x7.eval(0), 0);
        assert_eq!(x7.eval(1), 1);
    }

    #[test]
    fn eval_matches_iterated_multiplication() {
        // F_8^* is cyclic of prime order 7, so any element outside {0,1}
        // generates it.
        let field = f(3);
        let g = 0b010;
        let mut acc = 1;
        for d in 0..8u64 {
            let fd = Func::power(field, d);
            if d == 0 {
                assert_eq!(fd.eval(g), 1);
            } else {
                acc = field.mul(acc, g);
                assert_eq!(fd.eval(g), acc, "d={d}");
            }
        }
    }

    #[test]
    fn to_lut_agrees_pointwise() {
        for d in [0u64, 1, 3, 7] {
            let p = Func::power(f(4), d);
            let l = p.to_lut();
            for x in 0..16 {
                assert_eq!(p.eval(x), l.eval(x));
            }
        }
    }

    #[test]
    fn to_lut_known_tables() {
        let identity = Func::power(f(4), 1).to_lut();
        assert_eq!(identity.values().as_ref(), (0..16).collect::<Vec<_>>());

        let constant = Func::power(f(4), 0).to_lut();
        assert_eq!(constant.values().as_ref(), vec![1u32; 16]);

        // x^3 = 1 on all of F_4^*, 0 at 0.
        let cube = Func::power(f(2), 3);
        assert!(cube.is_degenerate(), "3 = q-1 reduces to 0");
        // The non-reduced cube over F_4 via an explicit lut:
        let field = f(2);
        let lut: Vec<u32> = (0..4).map(|x| field.pow(x, 3)).collect();
        assert_eq!(lut, vec![0, 1, 1, 1]);
    }

    #[test]
    fn exponent_reduction() {
        let field = f(4);
        let wrapped = Func::power(field, 16);
        assert_eq!(wrapped.exponent(), Some(1));
        let degenerate = Func::power(field, 15);
        assert_eq!(degenerate.exponent(), Some(0));
        assert!(degenerate.is_degenerate());
        assert_eq!(degenerate.eval(0), 1);
    }

    #[test]
    fn permutation_gcd_examples() {
        assert!(!Func::power(f(6), 7).is_permutation()); // gcd(7,63)=7
        assert!(!Func::power(f(8), 15).is_permutation()); // gcd(15,255)=15
        assert!(Func::power(f(5), 3).is_permutation()); // gcd(3,31)=1
    }

    #[test]
    fn permutation_gcd_agrees_with_lut_bijectivity() {
        for n in 2..=10u32 {
            let field = f(n);
            let q = field.q();
            // Build x^d tables incrementally: table(d+1) = table(d) * x.
            let mut table: Vec<u32> = vec![1; q as usize];
            for d in 0..q as u64 - 1 {
                if d > 0 {
                    for x in 0..q {
                        table[x as usize] = field.mul(table[x as usize], x);
                    }
                }
                let by_lut = {
                    let mut tab = table.clone();
                    if d == 0 {
                        tab[0] = 1; // 0^0 convention
                    }
                    Func::from_lut(field, tab).unwrap().is_permutation()
                };
                let by_gcd = Func::power(field, d).is_permutation();
                assert_eq!(by_gcd, by_lut, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn eval_commutes_with_frobenius() {
        for n in 2..=10u32 {
            let field = f(n);
            let q = field.q() as u64;
            for d in [0, 1, 2, 3, 5, 7, q - 2] {
                let func = Func::power(field, d);
                for x in 0..field.q() {
                    let sq = field.mul(x, x);
                    assert_eq!(
                        func.eval(sq),
                        field.mul(func.eval(x), func.eval(x)),
                        "n={n} d={d} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn lut_validation() {
        let field = f(3);
        assert!(matches!(
            Func::from_lut(field, vec![0; 7]),
            Err(Error::LutLength {
                got: 7,
                expected: 8
            })
        ));
        assert!(matches!(
            Func::from_lut(field, vec![0, 1, 2, 3, 4, 5, 6, 8]),
            Err(Error::LutValue { index: 7, .. })
        ));
    }

    #[test]
    fn lut_file_parsing() {
        let field = f(2);
        let good = "# comment\n0\n0x1\n\n2\n3\n";
        let func = Func::from_lut_reader(field, good.as_bytes()).unwrap();
        assert_eq!(func.values().as_ref(), vec![0, 1, 2, 3]);

        let bad = "0\n1\ntwo\n3\n";
        assert!(matches!(
            Func::from_lut_reader(field, bad.as_bytes()),
            Err(Error::LutParse { line: 3, .. })
        ));
    }

    #[test]
    fn desc_serialization() {
        assert_eq!(serde_json::to_string(&FuncDesc::Power(45)).unwrap(), "45");
        assert_eq!(serde_json::to_string(&FuncDesc::Lut).unwrap(), "\"lut\"");
        let d: FuncDesc = serde_json::from_str("45").unwrap();
        assert_eq!(d, FuncDesc::Power(45));
        let l: FuncDesc = serde_json::from_str("\"lut\"").unwrap();
        assert_eq!(l, FuncDesc::Lut);
    }
}
