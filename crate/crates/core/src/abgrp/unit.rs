//! Detecting when a tensor power of the unit class vanishes.

use itertools::Itertools;

use super::ab::Ab;
use crate::error::{Error, Result};

/// The smallest `r <= r_max` with `unit^{⊗r} = 0` in `K0^{⊗r}`, or `None`.
///
/// `unit` gives the coordinates of the class in the canonical generators of
/// `K0` (free summands first, then torsion summands). The tensor power is
/// expanded through the canonical summand decomposition and the image of the
/// elementary tensor is tracked componentwise.
pub fn unit_power_vanishes(k0: &Ab, unit: &[i64], r_max: u32) -> Result<Option<u32>> {
    if unit.len() != k0.generator_count() {
        return Err(Error::ShapeMismatch(format!(
            "unit has {} coordinates, K0 has {} generators",
            unit.len(),
            k0.generator_count()
        )));
    }
    #[derive(Clone)]
    enum Slot {
        Free(std::collections::BTreeSet<u64>),
        Torsion(u64, u32),
    }
    let slots: Vec<(Slot, i64)> = k0
        .free_summands()
        .iter()
        .map(|s| Slot::Free(s.clone()))
        .chain(
            k0.torsion_summands()
                .iter()
                .map(|&(p, k)| Slot::Torsion(p, k)),
        )
        .zip(unit.iter().copied())
        .collect();

    for r in 1..=r_max {
        let mut all_vanish = true;
        'tuples: for combo in (0..slots.len()).combinations_with_replacement(r as usize) {
            // classify the tensor product of the chosen summands
            let mut prime: Option<(u64, u32)> = None;
            let mut dead = false;
            for &i in &combo {
                if let (Slot::Torsion(p, k), _) = &slots[i] {
                    match prime {
                        None => prime = Some((*p, *k)),
                        Some((q, kq)) if q == *p => prime = Some((q, kq.min(*k))),
                        Some(_) => {
                            dead = true;
                            break;
                        }
                    }
                }
            }
            if !dead {
                if let Some((p, _)) = prime {
                    // a free factor with p inverted kills the product
                    dead = combo.iter().any(|&i| {
                        matches!(&slots[i].0, Slot::Free(s) if s.contains(&p))
                    });
                }
            }
            if dead {
                continue 'tuples;
            }
            // image of the elementary tensor in this component
            match prime {
                Some((p, k)) => {
                    let modulus = (p as i128).pow(k);
                    let mut acc: i128 = 1;
                    for &i in &combo {
                        acc = (acc * slots[i].1 as i128).rem_euclid(modulus);
                    }
                    if acc != 0 {
                        all_vanish = false;
                        break;
                    }
                }
                None => {
                    // torsion-free target: zero iff some coordinate is zero
                    if combo.iter().all(|&i| slots[i].1 != 0) {
                        all_vanish = false;
                        break;
                    }
                }
            }
        }
        if all_vanish {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_in_z4_squares_to_zero() {
        assert_eq!(unit_power_vanishes(&Ab::cyclic(4), &[2], 3).unwrap(), Some(2));
    }

    #[test]
    fn free_unit_never_vanishes() {
        assert_eq!(unit_power_vanishes(&Ab::free(1), &[1], 10).unwrap(), None);
    }

    #[test]
    fn zero_unit_vanishes_at_one() {
        assert_eq!(unit_power_vanishes(&Ab::cyclic(2), &[0], 3).unwrap(), Some(1));
    }

    #[test]
    fn n_in_z_n_pow_r() {
        // unit n in Z/n^r vanishes at exactly r
        for (n, r) in [(2u64, 3u32), (3, 2), (5, 2)] {
            let k0 = Ab::cyclic(n.pow(r));
            let got = unit_power_vanishes(&k0, &[n as i64], r + 2).unwrap();
            assert_eq!(got, Some(r));
        }
    }

    #[test]
    fn mixed_component_blocks_vanishing() {
        // Z ⊕ Z/2 with unit (1, 1): the free component never dies
        let k0 = Ab::free(1).direct_sum(&Ab::cyclic(2));
        assert_eq!(unit_power_vanishes(&k0, &[1, 1], 5).unwrap(), None);
    }

    #[test]
    fn coordinate_count_checked() {
        assert!(unit_power_vanishes(&Ab::cyclic(4), &[1, 2], 3).is_err());
    }
}
