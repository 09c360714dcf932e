//! Orbit-category colimits of the group K-theory functor, and the pushout
//! formula for AF-type coefficients.

use std::collections::BTreeMap;

use crate::abgrp::{self, GradedAb, IntMatrix, PushoutSquare, Supernatural};
use crate::chartab::{character_table, induction_matrix_with, CharacterTable};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup, Subgroup};

/// Colimit over the orbit category of finite subgroups of the functor
/// `G/H ↦ K_*(C*_r(H)) = (Z^{c(H)}, 0)`, with arrows realized by induction
/// matrices composed with conjugation identifications.
///
/// For finite G the orbit category has the terminal object `G/G`, so the
/// colimit must equal `(Z^{c(G)}, 0)`.
pub fn orbit_colim(group: &PermGroup) -> Result<GradedAb> {
    let classes = group.subgroup_classes()?;
    let elems = group.elements()?;

    // character tables per subgroup, keyed by sorted member list
    let mut tables: BTreeMap<Vec<Perm>, (PermGroup, CharacterTable)> = BTreeMap::new();
    let mut table_of = |sub: &Subgroup| -> Result<(PermGroup, CharacterTable)> {
        let key = sub.sorted_members()?;
        if let Some(hit) = tables.get(&key) {
            return Ok(hit.clone());
        }
        let g = sub.group().clone();
        let t = character_table(&g)?;
        tables.insert(key, (g.clone(), t.clone()));
        Ok((g, t))
    };

    let objects: Vec<GradedAb> = classes
        .iter()
        .map(|(sub, _)| Ok(GradedAb::free_even(sub.class_count()?)))
        .collect::<Result<_>>()?;

    let mut arrows = Vec::new();
    for (i, (hi, _)) in classes.iter().enumerate() {
        let hi_gens = hi.generators().to_vec();
        for (j, (hj, _)) in classes.iter().enumerate() {
            let (hj_group, hj_table) = table_of(hj)?;
            // cosets gH_j, dedup by the coset's minimal element
            let mut seen = std::collections::BTreeSet::new();
            for gi in 0..elems.len() {
                let g = elems.get(gi);
                let coset_min = hj
                    .group()
                    .elements()?
                    .list()
                    .iter()
                    .map(|h| g.compose(h))
                    .min()
                    .expect("groups are nonempty");
                if !seen.insert(coset_min) {
                    continue;
                }
                // morphism exists iff g^{-1} H_i g <= H_j
                let g_inv = g.inverse();
                let conj_gens: Vec<Perm> = hi_gens
                    .iter()
                    .map(|x| x.conjugate_by(&g_inv))
                    .collect();
                let k_sub = match Subgroup::new(&hj_group, conj_gens) {
                    Ok(k) => k,
                    Err(Error::NotASubgroup(_)) => continue,
                    Err(e) => return Err(e),
                };
                let (k_group, k_table) = table_of(&k_sub)?;
                let (_, hi_table) = table_of(hi)?;
                // conjugation identification R(H_i) ≅ R(K): the character
                // x ↦ χ(g x g^{-1}) of K matches exactly one row of K's table
                let hi_classes = hi.group().conjugacy_classes()?;
                let hi_elems = hi.group().elements()?;
                let k_classes = k_group.conjugacy_classes()?;
                let k_elems = k_group.elements()?;
                let mut perm_matrix =
                    vec![vec![0i64; hi_table.class_count()]; k_table.class_count()];
                for a in 0..hi_table.class_count() {
                    let transported: Vec<_> = k_classes
                        .classes
                        .iter()
                        .map(|c| {
                            let y = k_elems.get(c.rep);
                            let back = y.conjugate_by(g);
                            let cls = hi_classes.class_of[hi_elems
                                .index_of(&back)
                                .expect("conjugate lands back in H_i")];
                            hi_table.value(a, cls).clone()
                        })
                        .collect();
                    let b = (0..k_table.class_count())
                        .find(|&b| {
                            (0..k_table.class_count())
                                .all(|c| *k_table.value(b, c) == transported[c])
                        })
                        .expect("conjugated character is again irreducible");
                    perm_matrix[b][a] = 1;
                }
                let ind = induction_matrix_with(&hj_group, &hj_table, &k_sub, &k_table)?;
                let composed = ind
                    .to_int_matrix()
                    .mul(&int_matrix_from_i64(&perm_matrix))?;
                arrows.push(abgrp::Arrow {
                    src: i,
                    dst: j,
                    map0: composed,
                    map1: IntMatrix::zero(0, 0),
                });
            }
        }
    }
    abgrp::colimit(&abgrp::Diagram { objects, arrows })
}

fn int_matrix_from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect(),
    )
    .expect("rectangular by construction")
}

/// General corner-data pushout per the AF formula; the caller pre-applies
/// the localizations to the corners. When the left map is an isomorphism of
/// free modules the square degenerates to the right-hand colimit, which is
/// returned directly (this covers the finite-group case where `G/G` is
/// terminal on both colimits).
pub fn af_pushout(square: &PushoutSquare) -> Result<GradedAb> {
    if f_is_free_iso(square)? {
        return Ok(square.c.clone());
    }
    abgrp::pushout(square)
}

fn f_is_free_iso(square: &PushoutSquare) -> Result<bool> {
    for deg in 0..2 {
        let (a, b) = (square.a.by_degree(deg), square.b.by_degree(deg));
        let f = if deg == 0 { &square.f0 } else { &square.f1 };
        if !a.torsion_summands().is_empty() || !b.torsion_summands().is_empty() {
            return Ok(false);
        }
        if a.rank() != b.rank() || f.rows() != b.rank() || f.cols() != a.rank() {
            return Ok(false);
        }
        let sa = a.uniform_inversion_set()?;
        let sb = b.uniform_inversion_set()?;
        if a.rank() > 0 && sa != sb {
            return Ok(false);
        }
        // |det f| is the product of its invariant factors; an S-unit means
        // the map is invertible over Z[1/S]
        let smith = abgrp::smith_normal_form(f);
        let mut det: i128 = 1;
        for &d in &smith.diag {
            if d == 0 {
                return Ok(false);
            }
            det = det.saturating_mul(d);
        }
        let mut rem = det.unsigned_abs();
        for &p in &sb {
            while rem % p as u128 == 0 {
                rem /= p as u128;
            }
        }
        if rem != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The torsion-free degeneration of the AF pushout:
/// `K̃(C*_r(G))[S^{-1}] ⊕ (coinvariants of K(A^{⊗Z}))`.
pub fn af_pushout_torsion_free(
    k_tilde: &GradedAb,
    s: &Supernatural,
    coinvariants: &GradedAb,
) -> GradedAb {
    k_tilde.localize(s).direct_sum(coinvariants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgrp::Ab;

    #[test]
    fn orbit_colim_equals_group_value_for_small_groups() {
        for g in [
            PermGroup::trivial(1),
            PermGroup::cyclic(2),
            PermGroup::cyclic(3),
            PermGroup::cyclic(4),
            PermGroup::direct_product(&PermGroup::cyclic(2), &PermGroup::cyclic(2)),
            PermGroup::symmetric(3),
        ] {
            let expected = GradedAb::free_even(g.class_count().unwrap());
            assert_eq!(orbit_colim(&g).unwrap(), expected);
        }
    }

    #[test]
    fn user_diagram_infinite_dihedral() {
        // objects: trivial, Z/2, Z/2'; arrows: regular-representation
        // inductions (1,1) from the trivial object into both Z/2 factors
        let z = GradedAb::new(Ab::free(1), Ab::zero());
        let z2 = GradedAb::new(Ab::free(2), Ab::zero());
        let reg = IntMatrix::from_rows(vec![vec![1], vec![1]]).unwrap();
        let d = abgrp::Diagram {
            objects: vec![z, z2.clone(), z2],
            arrows: vec![
                abgrp::Arrow {
                    src: 0,
                    dst: 1,
                    map0: reg.clone(),
                    map1: IntMatrix::zero(0, 0),
                },
                abgrp::Arrow {
                    src: 0,
                    dst: 2,
                    map0: reg,
                    map1: IntMatrix::zero(0, 0),
                },
            ],
        };
        let col = abgrp::colimit(&d).unwrap();
        assert_eq!(col, GradedAb::new(Ab::free(3), Ab::zero()));
    }

    #[test]
    fn pushout_torsion_free_display() {
        // K̃(C*_r(Z)) = (0, Z), coinvariants = (Z, 0): total (Z, Z)
        let k_tilde = GradedAb::new(Ab::zero(), Ab::free(1));
        let coinv = GradedAb::new(Ab::free(1), Ab::zero());
        let s = Supernatural::one();
        assert_eq!(
            af_pushout_torsion_free(&k_tilde, &s, &coinv),
            GradedAb::new(Ab::free(1), Ab::free(1))
        );
    }

    #[test]
    fn pushout_iso_degeneration_returns_right_colimit() {
        // A = B = K(C*_r(G))[S^{-1}] with f = id: the pushout is C even when
        // C lives over plain Z
        let set: crate::abgrp::PrimeSet = [2u64].into_iter().collect();
        let local = GradedAb::new(Ab::free_localized(2, &set), Ab::zero());
        let c = GradedAb::new(Ab::free(1).direct_sum(&Ab::cyclic(3)), Ab::zero());
        let sq = PushoutSquare {
            a: local.clone(),
            b: local,
            c: c.clone(),
            f0: IntMatrix::identity(2),
            f1: IntMatrix::zero(0, 0),
            g0: IntMatrix::zero(2, 2),
            g1: IntMatrix::zero(0, 0),
        };
        assert_eq!(af_pushout(&sq).unwrap(), c);
    }

    #[test]
    fn pushout_trivial_group_gives_a_corner() {
        // trivial G: all corners equal (Z,0)[S^{-1}], f = g = id
        let v = GradedAb::new(Ab::free(1), Ab::zero());
        let sq = PushoutSquare {
            a: v.clone(),
            b: v.clone(),
            c: v.clone(),
            f0: IntMatrix::identity(1),
            f1: IntMatrix::zero(0, 0),
            g0: IntMatrix::identity(1),
            g1: IntMatrix::zero(0, 0),
        };
        assert_eq!(af_pushout(&sq).unwrap(), v);
    }
}
