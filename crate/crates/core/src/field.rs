//! Arithmetic in GF(2^n) in polynomial basis.
//!
//! An element is an n-bit integer whose bit `i` is the coefficient of `x^i`
//! (little-endian coefficient order), so addition is plain XOR. A [`Field`]
//! carries the dimension and the irreducible modulus; every operation is a
//! pure function on `Copy` values and can be called from any thread.

use crate::error::{Error, Result};

/// A field element, encoded as an n-bit coefficient bitmask.
pub type Elem = u32;

pub const MIN_DIMENSION: u32 = 2;
pub const MAX_DIMENSION: u32 = 20;

/// A concrete GF(2^n): dimension plus irreducible modulus.
///
/// The modulus bitmask includes the leading `x^n` term, e.g. `0b1011`
/// is `x^3+x+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    n: u32,
    modulus: u32,
}

impl Field {
    /// Builds GF(2^n). With `modulus = None` the lexicographically smallest
    /// irreducible polynomial of degree n is selected, so the default field
    /// for a given n is deterministic.
    pub fn new(n: u32, modulus: Option<u32>) -> Result<Field> {
        if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&n) {
            return Err(Error::DimensionOutOfRange { n });
        }
        let modulus = match modulus {
            Some(m) => {
                if poly_degree(m) != n as i32 {
                    return Err(Error::ModulusWrongDegree {
                        modulus: m,
                        found: poly_degree(m),
                        expected: n,
                    });
                }
                if let Some(factor) = smallest_factor(m) {
                    return Err(Error::ModulusReducible { modulus: m, factor });
                }
                m
            }
            None => default_modulus(n),
        };
        Ok(Field { n, modulus })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Field size q = 2^n.
    pub fn q(&self) -> u32 {
        1 << self.n
    }

    /// Addition: coefficient-wise XOR.
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a < self.q() && b < self.q());
        a ^ b
    }

    /// Polynomial product reduced by the modulus (shift-and-add with a
    /// reduction after every shift).
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a < self.q() && b < self.q());
        let (mut a, mut b) = (a, b);
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & self.q() != 0 {
                a ^= self.modulus;
            }
        }
        acc
    }

    /// Square-and-multiply exponentiation. `0^0` is defined as 1, matching
    /// evaluation of the constant term of a polynomial.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        debug_assert!(a < self.q());
        let mut base = a;
        let mut e = e;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^(q-2).
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q() as u64 - 2))
    }

    /// All x with x^3 = 1, sorted ascending. Three elements iff
    /// 3 | 2^n - 1, i.e. iff n is even; otherwise just {1}.
    pub fn cube_roots_of_unity(&self) -> Vec<Elem> {
        (1..self.q())
            .filter(|&x| self.mul(self.mul(x, x), x) == 1)
            .collect()
    }

    pub fn modulus_hex(&self) -> String {
        format!("{:#x}", self.modulus)
    }

    pub fn modulus_poly(&self) -> String {
        poly_string(self.modulus)
    }
}

/// Renders a coefficient bitmask as a polynomial, e.g. `0b1011` -> "x^3+x+1".
pub fn poly_string(mask: u32) -> String {
    if mask == 0 {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for i in (0..32).rev() {
        if mask >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    terms.join("+")
}

/// Parses a modulus given as hex ("0x43"), decimal ("67"), or a polynomial
/// ("x^6+x+1").
pub fn parse_modulus(s: &str) -> Result<u32> {
    let s = s.trim();
    let err = || Error::ModulusParse(s.to_string());
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        return u32::from_str_radix(hex, 16).map_err(|_| err());
    }
    if s.chars().all(|c| c.is_ascii_digit()) {
        return s.parse::<u32>().map_err(|_| err());
    }
    let mut mask = 0u32;
    for term in s.split('+') {
        let term = term.trim();
        let bit = if term == "1" {
            0
        } else if term == "x" {
            1
        } else if let Some(exp) = term.strip_prefix("x^") {
            exp.parse::<u32>().map_err(|_| err())?
        } else {
            return Err(err());
        };
        if bit > 31 {
            return Err(err());
        }
        mask ^= 1 << bit;
    }
    if mask == 0 {
        return Err(err());
    }
    Ok(mask)
}

fn poly_degree(mask: u32) -> i32 {
    31 - mask.leading_zeros() as i32
}

/// Remainder of a by b as polynomials over GF(2).
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Trial division by every polynomial of degree 1..=deg/2. Returns the
/// smallest divisor found, or None when the polynomial is irreducible.
fn smallest_factor(p: u32) -> Option<u32> {
    let deg = poly_degree(p);
    for d in 1..=deg / 2 {
        for g in 1u32 << d..1 << (d + 1) {
            if poly_rem(p, g) == 0 {
                return Some(g);
            }
        }
    }
    None
}

/// Lexicographically smallest irreducible polynomial of degree n, found by
/// ascending enumeration of the bitmasks with bit n set.
fn default_modulus(n: u32) -> u32 {
    ((1u32 << n) + 1..1 << (n + 1))
        .find(|&mask| smallest_factor(mask).is_none())
        .expect("an irreducible polynomial exists for every degree")
}
