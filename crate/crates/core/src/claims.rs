//! Executable checks for the headline facts about the x^(2^m - 1) family
//! and APN functions, each one reduced to an expected/observed comparison,
//! plus the driver that runs the whole battery and emits a manifest.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bct::{bct, boomerang_uniformity, bct_row};
use crate::ddt::{ddt_row, is_apn};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::func::{Func, FuncDesc};
use crate::report::analyze;

pub const MIN_M: u32 = 2;
pub const MAX_M: u32 = 8;

/// Outcome of one claim check. `pass` holds exactly when the canonical
/// expected and observed strings agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub claim_id: String,
    pub n: u32,
    pub m: Option<u32>,
    pub d: FuncDesc,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl VerificationOutcome {
    fn new(
        claim_id: String,
        n: u32,
        m: Option<u32>,
        d: FuncDesc,
        expected: String,
        observed: String,
    ) -> VerificationOutcome {
        let pass = expected == observed;
        VerificationOutcome {
            claim_id,
            n,
            m,
            d,
            expected,
            observed,
            pass,
        }
    }
}

/// The family member x^(2^m - 1) over GF(2^(2m)).
fn family_func(m: u32) -> Result<(Field, Func, u64)> {
    let d = (1u64 << m) - 1;
    let field = Field::new(2 * m, None)?;
    Ok((field, Func::power(field, d), d))
}

fn check_m_range(m: u32) -> Result<()> {
    if !(MIN_M..=MAX_M).contains(&m) {
        return Err(Error::MOutOfRange {
            m,
            lo: MIN_M,
            hi: MAX_M,
        });
    }
    Ok(())
}

/// Row-1 DDT profile of x^(2^m - 1) over GF(2^(2m)): the b=0 entry is
/// 2^m - 2, the b=1 entry is 4 for odd m and 2 for even m, and every entry
/// outside b in {0,1} is at most 2 (the locally-APN profile).
pub fn verify_ddt_row_profile(m: u32) -> Result<VerificationOutcome> {
    check_m_range(m)?;
    let (field, f, d) = family_func(m)?;
    let row = ddt_row(&f, 1);
    let expect_zero = (1u64 << m) - 2;
    let expect_one = if m % 2 == 1 { 4 } else { 2 };
    let rest_le_2 = row.iter().skip(2).all(|&c| c <= 2);
    let rest_max = row.iter().skip(2).max().copied().unwrap_or(0);
    let expected = format!(
        "delta(1,0)={expect_zero} delta(1,1)={expect_one} delta(1,b)<=2 outside {{0,1}}"
    );
    let observed = if rest_le_2 {
        format!(
            "delta(1,0)={} delta(1,1)={} delta(1,b)<=2 outside {{0,1}}",
            row[0], row[1]
        )
    } else {
        format!(
            "delta(1,0)={} delta(1,1)={} max outside {{0,1}} is {rest_max}",
            row[0], row[1]
        )
    };
    Ok(VerificationOutcome::new(
        format!("ddt-row-profile-m{m}"),
        field.n(),
        Some(m),
        FuncDesc::Power(d),
        expected,
        observed,
    ))
}

/// For odd m the boomerang uniformity of the family member is exactly 4,
/// and the solutions with a coordinate in {0,1} occur exactly at
/// b in {1, w, w^2} (the cube roots of unity).
pub fn verify_boomerang_uniformity_odd(m: u32) -> Result<VerificationOutcome> {
    check_m_range(m)?;
    if m % 2 == 0 {
        return Err(Error::WrongParity { m, expected: "odd" });
    }
    let (field, f, d) = family_func(m)?;
    let row = bct_row(&f, 1);
    let uniformity = row[1..].iter().copied().max().unwrap_or(0);

    // Scan for b values reached by a solution with x in {0,1}; one O(q)
    // pass per x suffices since b is determined by (x, y).
    let values = f.values();
    let q = field.q();
    let mut boundary = BTreeSet::new();
    for x in [0u32, 1] {
        for y in 0..q {
            let b = values[x as usize] ^ values[y as usize];
            if b != 0 && values[(x ^ 1) as usize] ^ values[(y ^ 1) as usize] == b {
                boundary.insert(b);
            }
        }
    }
    let roots: BTreeSet<u32> = field.cube_roots_of_unity().into_iter().collect();
    let expected = format!("B=4 boundary_b={roots:?}");
    let observed = format!("B={uniformity} boundary_b={boundary:?}");
    Ok(VerificationOutcome::new(
        format!("boomerang-4-odd-m{m}"),
        field.n(),
        Some(m),
        FuncDesc::Power(d),
        expected,
        observed,
    ))
}

/// For even m the boomerang uniformity of the family member is exactly 2.
pub fn verify_boomerang_uniformity_even(m: u32) -> Result<VerificationOutcome> {
    check_m_range(m)?;
    if m % 2 == 1 {
        return Err(Error::WrongParity { m, expected: "even" });
    }
    let (field, f, d) = family_func(m)?;
    let row = bct_row(&f, 1);
    let uniformity = row[1..].iter().copied().max().unwrap_or(0);
    Ok(VerificationOutcome::new(
        format!("boomerang-2-even-m{m}"),
        field.n(),
        Some(m),
        FuncDesc::Power(d),
        "B=2".to_string(),
        format!("B={uniformity}"),
    ))
}

/// Any APN function has boomerang uniformity exactly 2, permutation or not.
/// Non-APN input is a precondition error.
pub fn verify_apn_implies_boomerang_two(f: &Func) -> Result<VerificationOutcome> {
    let delta = crate::ddt::delta_of(f)?;
    if delta != 2 {
        return Err(Error::NotApn { delta });
    }
    let uniformity = boomerang_uniformity(&bct(f)?)?;
    Ok(VerificationOutcome::new(
        format!("apn-implies-boomerang-2-n{}-d{}", f.field().n(), f.desc()),
        f.field().n(),
        None,
        f.desc(),
        "B=2".to_string(),
        format!("B={uniformity}"),
    ))
}

/// A permutation with boomerang uniformity 2 is APN. Violated preconditions
/// are reported distinctly: not a permutation, or uniformity other than 2.
pub fn verify_boomerang_two_implies_apn(f: &Func) -> Result<VerificationOutcome> {
    if !f.is_permutation() {
        return Err(Error::NotAPermutation);
    }
    let uniformity = boomerang_uniformity(&bct(f)?)?;
    if uniformity != 2 {
        return Err(Error::BoomerangNotTwo {
            observed: uniformity,
        });
    }
    let apn = is_apn(f)?;
    Ok(VerificationOutcome::new(
        format!(
            "boomerang-2-permutation-implies-apn-n{}-d{}",
            f.field().n(),
            f.desc()
        ),
        f.field().n(),
        None,
        f.desc(),
        "apn=true".to_string(),
        format!("apn={apn}"),
    ))
}

/// One fully worked (n, d) data point with its exact expected profile.
fn verify_worked_example(
    claim_id: String,
    n: u32,
    d: u64,
    expect: (u64, u64, bool, bool),
) -> Result<VerificationOutcome> {
    let field = Field::new(n, None)?;
    let r = analyze(&Func::power(field, d))?;
    let (delta, boomerang, permutation, locally_apn) = expect;
    let expected = format!(
        "delta={delta} boomerang={boomerang} permutation={permutation} locally_apn={locally_apn}"
    );
    let observed = format!(
        "delta={} boomerang={} permutation={} locally_apn={}",
        r.delta,
        r.boomerang,
        r.permutation,
        r.locally_apn.unwrap_or(false)
    );
    Ok(VerificationOutcome::new(
        claim_id,
        n,
        None,
        FuncDesc::Power(d),
        expected,
        observed,
    ))
}

/// x^15 over GF(2^8): boomerang uniformity 2 without being APN (and without
/// being a permutation) — uniformity 2 does not imply APN off permutations.
fn verify_boomerang_two_without_apn() -> Result<VerificationOutcome> {
    let field = Field::new(8, None)?;
    let f = Func::power(field, 15);
    let r = analyze(&f)?;
    Ok(VerificationOutcome::new(
        "boomerang-2-without-apn-n8-d15".to_string(),
        8,
        None,
        FuncDesc::Power(15),
        "boomerang=2 apn=false permutation=false".to_string(),
        format!(
            "boomerang={} apn={} permutation={}",
            r.boomerang, r.apn, r.permutation
        ),
    ))
}

/// (n, d, delta, boomerang, permutation, locally_apn)
const WORKED_EXAMPLES: [(u32, u64, u64, u64, bool, bool); 3] = [
    (6, 7, 6, 4, false, true),
    (8, 15, 14, 2, false, true),
    (8, 45, 14, 2, false, true),
];

/// Runs every claim check over its admissible range up to `max_m`: the
/// row-profile and boomerang claims for the x^(2^m - 1) family, the
/// APN <-> boomerang-2 instances on x^3, and the worked examples, each
/// gated by n = 2m <= 2 * max_m.
pub fn verify_all(max_m: u32) -> Result<Vec<VerificationOutcome>> {
    if max_m < MIN_M {
        return Err(Error::EmptyRange { max_m });
    }
    if max_m > MAX_M {
        return Err(Error::MOutOfRange {
            m: max_m,
            lo: MIN_M,
            hi: MAX_M,
        });
    }
    let max_n = 2 * max_m;
    let mut outcomes = Vec::new();
    for m in MIN_M..=max_m {
        outcomes.push(verify_ddt_row_profile(m)?);
    }
    for m in (3..=max_m.min(7)).filter(|m| m % 2 == 1) {
        outcomes.push(verify_boomerang_uniformity_odd(m)?);
    }
    for m in (MIN_M..=max_m).filter(|m| m % 2 == 0) {
        outcomes.push(verify_boomerang_uniformity_even(m)?);
    }
    for n in 4..=max_n.min(8) {
        let f = Func::power(Field::new(n, None)?, 3);
        outcomes.push(verify_apn_implies_boomerang_two(&f)?);
    }
    for n in [5u32, 7] {
        if n <= max_n {
            let f = Func::power(Field::new(n, None)?, 3);
            outcomes.push(verify_boomerang_two_implies_apn(&f)?);
        }
    }
    for (n, d, delta, boomerang, permutation, locally_apn) in WORKED_EXAMPLES {
        if n <= max_n {
            outcomes.push(verify_worked_example(
                format!("example-n{n}-d{d}"),
                n,
                d,
                (delta, boomerang, permutation, locally_apn),
            )?);
        }
    }
    if 8 <= max_n {
        outcomes.push(verify_boomerang_two_without_apn()?);
    }
    Ok(outcomes)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldUse {
    pub n: u32,
    pub modulus: String,
    pub modulus_poly: String,
}

/// Machine-readable result of a full verification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationManifest {
    pub toolkit: String,
    pub version: String,
    pub fields: Vec<FieldUse>,
    pub outcomes: Vec<VerificationOutcome>,
    pub all_pass: bool,
}

pub fn verification_manifest(max_m: u32) -> Result<VerificationManifest> {
    let outcomes = verify_all(max_m)?;
    let ns: BTreeSet<u32> = outcomes.iter().map(|o| o.n).collect();
    let fields = ns
        .into_iter()
        .map(|n| {
            let f = Field::new(n, None)?;
            Ok(FieldUse {
                n,
                modulus: f.modulus_hex(),
                modulus_poly: f.modulus_poly(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_pass = outcomes.iter().all(|o| o.pass);
    Ok(VerificationManifest {
        toolkit: "sboxtab".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        fields,
        outcomes,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ddt_row_profile_small_m() {
        for (m, zero, one) in [(2u32, 2u64, 2u64), (3, 6, 4), (4, 14, 2)] {
            let o = verify_ddt_row_profile(m).unwrap();
            assert!(o.pass, "m={m}: {o:?}");
            assert!(o.observed.contains(&format!("delta(1,0)={zero}")));
            assert!(o.observed.contains(&format!("delta(1,1)={one}")));
        }
        assert!(matches!(
            verify_ddt_row_profile(1),
            Err(Error::MOutOfRange { .. })
        ));
        assert!(matches!(
            verify_ddt_row_profile(9),
            Err(Error::MOutOfRange { .. })
        ));
    }

    #[test]
    fn boomerang_claims() {
        let odd = verify_boomerang_uniformity_odd(3).unwrap();
        assert!(odd.pass, "{odd:?}");
        assert!(matches!(
            verify_boomerang_uniformity_odd(4),
            Err(Error::WrongParity { .. })
        ));
        let even = verify_boomerang_uniformity_even(2).unwrap();
        assert!(even.pass, "{even:?}");
        assert!(matches!(
            verify_boomerang_uniformity_even(3),
            Err(Error::WrongParity { .. })
        ));
    }

    #[test]
    fn apn_boomerang_two_instances() {
        let field5 = Field::new(5, None).unwrap();
        let o = verify_apn_implies_boomerang_two(&Func::power(field5, 3)).unwrap();
        assert!(o.pass);

        let field4 = Field::new(4, None).unwrap();
        let non_perm = Func::power(field4, 3);
        assert!(!non_perm.is_permutation());
        assert!(verify_apn_implies_boomerang_two(&non_perm).unwrap().pass);

        let field6 = Field::new(6, None).unwrap();
        assert!(matches!(
            verify_apn_implies_boomerang_two(&Func::power(field6, 7)),
            Err(Error::NotApn { delta: 6 })
        ));
    }

    #[test]
    fn boomerang_two_implies_apn_instances() {
        let field5 = Field::new(5, None).unwrap();
        assert!(verify_boomerang_two_implies_apn(&Func::power(field5, 3))
            .unwrap()
            .pass);

        // The uniformity-2 non-permutation counterexample is rejected at the
        // permutation precondition, and logged by its own claim.
        let field8 = Field::new(8, None).unwrap();
        assert!(matches!(
            verify_boomerang_two_implies_apn(&Func::power(field8, 15)),
            Err(Error::NotAPermutation)
        ));
        let o = verify_boomerang_two_without_apn().unwrap();
        assert!(o.pass, "{o:?}");

        // The identity permutation has uniformity q, not 2.
        let field4 = Field::new(4, None).unwrap();
        assert!(matches!(
            verify_boomerang_two_implies_apn(&Func::power(field4, 1)),
            Err(Error::BoomerangNotTwo { observed: 16 })
        ));
    }

    #[test]
    fn verify_all_ranges() {
        assert!(matches!(verify_all(1), Err(Error::EmptyRange { max_m: 1 })));
        assert!(matches!(verify_all(9), Err(Error::MOutOfRange { .. })));

        let small = verify_all(2).unwrap();
        let ids: Vec<&str> = small.iter().map(|o| o.claim_id.as_str()).collect();
        assert_eq!(
            ids,
            vec![
                "ddt-row-profile-m2",
                "boomerang-2-even-m2",
                "apn-implies-boomerang-2-n4-d3"
            ]
        );
        assert!(small.iter().all(|o| o.pass));

        let mid = verify_all(4).unwrap();
        assert!(mid.iter().all(|o| o.pass), "{mid:#?}");
        let mid_ids: Vec<&str> = mid.iter().map(|o| o.claim_id.as_str()).collect();
        for id in [
            "ddt-row-profile-m2",
            "ddt-row-profile-m3",
            "ddt-row-profile-m4",
            "boomerang-4-odd-m3",
            "boomerang-2-even-m2",
            "boomerang-2-even-m4",
            "example-n6-d7",
            "example-n8-d15",
            "example-n8-d45",
            "boomerang-2-without-apn-n8-d15",
        ] {
            assert!(mid_ids.contains(&id), "missing {id}");
        }

        let with_n10 = verify_all(5).unwrap();
        assert!(with_n10
            .iter()
            .any(|o| o.claim_id == "boomerang-4-odd-m5" && o.pass));
    }

    #[test]
    fn manifest_shape() {
        let m = verification_manifest(3).unwrap();
        assert!(m.all_pass);
        assert_eq!(m.toolkit, "sboxtab");
        assert!(!m.version.is_empty());
        assert!(m.fields.iter().any(|f| f.n == 6));
        let json = serde_json::to_string(&m).unwrap();
        let back: VerificationManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(back.outcomes.len(), m.outcomes.len());
    }
}
