//! Cuntz-algebra evaluators: the trivial cases, the stored Z/2 crossed
//! product tables, and the vanishing theorem for units with nilpotent
//! tensor powers.

use serde_json::json;

use crate::abgrp::{unit_power_vanishes, Ab, GradedAb, Supernatural};
use crate::error::{Error, Result};
use crate::perm::{GSetSpec, PermGroup};

use super::report::{KReport, Term, Truncation};

/// `K(O_{n+1}^{⊗Z/2} ⋊ Z/2)` and its suspended companion, as computed by
/// Izumi's Z/2 classification. The parameter is n (the algebra is O_{n+1}).
pub fn izumi_z2(n: u64, suspended: bool) -> Result<GradedAb> {
    if n < 2 {
        return Err(Error::InvalidInput("Izumi table requires n >= 2".into()));
    }
    let deg0 = if n % 2 == 1 {
        Ab::cyclic(n).direct_sum(&Ab::cyclic(n))
    } else {
        Ab::cyclic(n / 2).direct_sum(&Ab::cyclic(2 * n))
    };
    let table = GradedAb::new(deg0, Ab::zero());
    Ok(if suspended { table.shifted() } else { table })
}

/// Comparison data for the suspended family: K_1 carries the torsion.
pub fn izumi_z2_report(n: u64, suspended: bool) -> Result<KReport> {
    let value = izumi_z2(n, suspended)?;
    Ok(KReport::new(
        "cuntz_izumi_z2",
        json!({ "n": n, "suspended": suspended }),
        Truncation::exact(),
        vec![Term {
            key: if suspended {
                format!("(C0(R)⊗O_{})^{{⊗Z/2}}⋊Z/2", n + 1)
            } else {
                format!("O_{}^{{⊗Z/2}}⋊Z/2", n + 1)
            },
            value,
        }],
    ))
}

/// `O_∞` coefficients: the unital inclusion of C is a KK-equivalence, so
/// the answer is the group algebra term alone.
pub fn o_infinity(group: &PermGroup) -> Result<KReport> {
    let whole = group.as_subgroup()?;
    let value = GradedAb::free_even(whole.class_count()?);
    Ok(KReport::new(
        "cuntz_o_infinity",
        json!({}),
        Truncation::exact(),
        vec![Term {
            key: "C*r(G)".to_string(),
            value,
        }],
    ))
}

/// `O_2` coefficients are KK-equivalent to zero, so everything vanishes.
pub fn o2(_group: &PermGroup) -> Result<KReport> {
    Ok(KReport::new(
        "cuntz_o2",
        json!({}),
        Truncation::exact(),
        vec![],
    ))
}

/// Outcome of the vanishing theorem: either a certificate power r with
/// `unit^{⊗r} = 0`, or no conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroOutcome {
    Zero { r: u32 },
    Undetermined,
}

/// If the class of the unit has a vanishing tensor power, the whole crossed
/// product K-theory vanishes for any infinite G-set.
pub fn zero_theorem(
    k0: &Ab,
    unit: &[i64],
    r_max: u32,
    gset: &GSetSpec,
) -> Result<ZeroOutcome> {
    if !gset.is_infinite() {
        return Err(Error::ZNotInfinite);
    }
    Ok(match unit_power_vanishes(k0, unit, r_max)? {
        Some(r) => ZeroOutcome::Zero { r },
        None => ZeroOutcome::Undetermined,
    })
}

pub fn zero_theorem_report(outcome: &ZeroOutcome, k0: &Ab, unit: &[i64]) -> KReport {
    match outcome {
        ZeroOutcome::Zero { r } => KReport::new(
            "zero_theorem",
            json!({ "k0": k0, "unit": unit, "certificate_r": r }),
            Truncation::exact(),
            vec![],
        ),
        ZeroOutcome::Undetermined => KReport::new(
            "zero_theorem",
            json!({ "k0": k0, "unit": unit, "outcome": "undetermined" }),
            Truncation {
                complete: false,
                max_subset_size: None,
                window: None,
            },
            vec![],
        ),
    }
}

/// Structural consistency of the stored tables: for prime n the whole table
/// must die after inverting n.
pub fn izumi_prime_consistency(n: u64) -> Result<bool> {
    let loc = Supernatural::from_natural(n)?;
    let plain = izumi_z2(n, false)?.localize(&loc);
    let susp = izumi_z2(n, true)?.localize(&loc);
    Ok(plain.is_zero() && susp.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn izumi_families() {
        // odd n: Z/n ⊕ Z/n in degree 0
        assert_eq!(
            izumi_z2(3, false).unwrap(),
            GradedAb::new(Ab::cyclic(3).direct_sum(&Ab::cyclic(3)), Ab::zero())
        );
        // even n: Z/(n/2) ⊕ Z/2n in degree 0
        assert_eq!(
            izumi_z2(4, false).unwrap(),
            GradedAb::new(Ab::cyclic(2).direct_sum(&Ab::cyclic(8)), Ab::zero())
        );
        // n = 2: Z/1 ⊕ Z/4 = Z/4
        assert_eq!(
            izumi_z2(2, false).unwrap(),
            GradedAb::new(Ab::cyclic(4), Ab::zero())
        );
        // the suspended family swaps degrees
        assert_eq!(
            izumi_z2(5, true).unwrap(),
            GradedAb::new(Ab::zero(), Ab::cyclic(5).direct_sum(&Ab::cyclic(5)))
        );
    }

    #[test]
    fn izumi_prime_groups_vanish_at_p() {
        for p in [2u64, 3, 5, 7] {
            assert!(izumi_prime_consistency(p).unwrap());
        }
        // composite n = 6: Z/3 ⊕ Z/12 does not die at 6? it does: both are
        // supported at 2 and 3. A genuine non-example: localize at the wrong
        // prime instead.
        let at5 = Supernatural::from_natural(5).unwrap();
        assert!(!izumi_z2(6, false).unwrap().localize(&at5).is_zero());
    }

    #[test]
    fn o2_vanishes_and_oinfty_is_group_algebra() {
        let g = PermGroup::symmetric(3);
        assert!(o2(&g).unwrap().total.is_zero());
        let r = o_infinity(&g).unwrap();
        assert_eq!(r.total, GradedAb::free_even(3));
    }

    #[test]
    fn zero_theorem_cases() {
        let g = PermGroup::cyclic(2);
        let infinite = GSetSpec {
            pieces: vec![crate::perm::GSetPiece {
                stabilizer: crate::perm::Subgroup::trivial(&g).unwrap(),
                multiplicity: crate::perm::Multiplicity::Omega,
            }],
        };
        let finite = GSetSpec::regular(&g).unwrap();
        // Z/4 with unit 2: vanishes at r = 2 (the O_{n^r+1} pattern)
        assert_eq!(
            zero_theorem(&Ab::cyclic(4), &[2], 3, &infinite).unwrap(),
            ZeroOutcome::Zero { r: 2 }
        );
        // free unit: no conclusion
        assert_eq!(
            zero_theorem(&Ab::free(1), &[1], 5, &infinite).unwrap(),
            ZeroOutcome::Undetermined
        );
        // zero unit: r = 1
        assert_eq!(
            zero_theorem(&Ab::cyclic(2), &[0], 5, &infinite).unwrap(),
            ZeroOutcome::Zero { r: 1 }
        );
        // finite Z rejected
        assert_eq!(
            zero_theorem(&Ab::cyclic(4), &[2], 3, &finite).unwrap_err(),
            Error::ZNotInfinite
        );
    }
}
