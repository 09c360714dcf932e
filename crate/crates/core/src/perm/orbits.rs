//! Orbit/stabilizer enumeration over subsets, labelling functions and
//! disjoint subset pairs.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};

use super::action::{subgroup_element_ids, SetAction};
use super::group::PermGroup;
use super::gset::RealizedGSet;
use super::subgroup::Subgroup;

/// Cap on the number of candidates scanned by one orbit enumeration.
pub const ORBIT_ENUM_CAP: usize = 1 << 22;

/// One orbit: its canonical representative (the lexicographic minimum under
/// the fixed point ordering), the stabilizer, and the orbit size.
#[derive(Debug, Clone)]
pub struct OrbitEntry<R> {
    pub rep: R,
    pub stabilizer: Subgroup,
    pub orbit_size: u64,
}

/// Result of a subset-orbit scan, with the completeness flag demanded of
/// every truncated enumeration.
#[derive(Debug, Clone)]
pub struct SubsetOrbits {
    pub entries: Vec<OrbitEntry<Vec<usize>>>,
    /// true iff the realization covers the spec and `max_size` reached the
    /// full point count, so the orbit list is provably exhaustive
    pub complete: bool,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All G-orbits of subsets `F` of the realized window with `|F| <= max_size`,
/// with setwise stabilizers. The empty set is included (stabilizer G).
pub fn subset_orbits(
    group: &PermGroup,
    z: &RealizedGSet,
    max_size: usize,
) -> Result<SubsetOrbits> {
    let elems = group.elements()?;
    let n = z.point_count();
    let bound = max_size.min(n);

    let mut total: u128 = 0;
    for s in 0..=bound {
        total += binomial(n, s);
    }
    if total > ORBIT_ENUM_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "subset orbit scan",
            cap: ORBIT_ENUM_CAP,
        });
    }

    let canonical = |f: &[usize]| -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for gi in 0..elems.len() {
            let mut moved: Vec<usize> = f.iter().map(|&p| z.apply(gi, p)).collect();
            moved.sort_unstable();
            if best.as_ref().map_or(true, |b| moved < *b) {
                best = Some(moved);
            }
        }
        best.unwrap_or_default()
    };

    let mut entries = Vec::new();
    for s in 0..=bound {
        let combos: Vec<Vec<usize>> = (0..n).combinations(s).collect();
        let canons = crate::exec::map_slice(&combos, |f| canonical(f));
        let reps: BTreeSet<Vec<usize>> = canons.into_iter().collect();
        let reps: Vec<Vec<usize>> = reps.into_iter().collect();
        let stabs = crate::exec::map_slice(&reps, |rep| stabilizer_of_subset(group, z, rep));
        for (rep, stab) in reps.into_iter().zip(stabs) {
            let stab = stab?;
            let orbit_size = group.order()? / stab.order()?;
            entries.push(OrbitEntry {
                rep,
                stabilizer: stab,
                orbit_size,
            });
        }
    }
    Ok(SubsetOrbits {
        entries,
        complete: z.covers_spec() && max_size >= n,
    })
}

/// The setwise stabilizer of a subset of realized points.
pub fn stabilizer_of_subset(
    group: &PermGroup,
    z: &RealizedGSet,
    f: &[usize],
) -> Result<Subgroup> {
    let elems = group.elements()?;
    let f_sorted: Vec<usize> = f.iter().copied().sorted_unstable().collect();
    let members: Vec<_> = (0..elems.len())
        .filter(|&gi| {
            let mut moved: Vec<usize> = f.iter().map(|&p| z.apply(gi, p)).collect();
            moved.sort_unstable();
            moved == f_sorted
        })
        .map(|gi| elems.get(gi).clone())
        .collect();
    Subgroup::from_members(group, members)
}

/// H-orbits of labelling functions `S: F -> {1, ..., alphabet}`, where the
/// H-action on the positions of F is given by `act` (tabulated in H's
/// element order). Stabilizers are returned as subgroups of H.
///
/// Representatives are the value vectors over the positions `0..|F|`,
/// minimized lexicographically over the H-translates `S ∘ h^{-1}`.
pub fn function_orbits(
    h: &Subgroup,
    act: &SetAction,
    alphabet: u64,
) -> Result<Vec<OrbitEntry<Vec<u8>>>> {
    assert!(alphabet >= 1, "alphabet must contain at least one letter");
    assert!(alphabet <= u8::MAX as u64, "alphabet letters must fit in u8");
    let h_elems = h.group().elements()?;
    debug_assert_eq!(h_elems.len(), act.element_count());
    let npos = act.point_count();
    let total = (alphabet as u128).checked_pow(npos as u32).unwrap_or(u128::MAX);
    if total > ORBIT_ENUM_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "function orbit scan",
            cap: ORBIT_ENUM_CAP,
        });
    }
    let total = total as usize;

    // (h·S)(x) = S(h^{-1} x)
    let transformed = |vec: &[u8], hi: usize| -> Vec<u8> {
        let inv = h_elems.inverse_of(hi);
        (0..npos).map(|x| vec[act.apply(inv, x)]).collect()
    };
    let decode = |mut idx: usize| -> Vec<u8> {
        let mut vec = vec![0u8; npos];
        for slot in (0..npos).rev() {
            vec[slot] = (idx % alphabet as usize) as u8 + 1;
            idx /= alphabet as usize;
        }
        vec
    };

    let canons = crate::exec::map_range(total, |idx| {
        let vec = decode(idx);
        (0..h_elems.len())
            .map(|hi| transformed(&vec, hi))
            .min()
            .unwrap()
    });
    let reps: BTreeSet<Vec<u8>> = canons.into_iter().collect();
    let reps: Vec<Vec<u8>> = reps.into_iter().collect();
    let entries = crate::exec::map_slice(&reps, |rep| -> Result<OrbitEntry<Vec<u8>>> {
        let members: Vec<_> = (0..h_elems.len())
            .filter(|&hi| transformed(rep, hi) == *rep)
            .map(|hi| h_elems.get(hi).clone())
            .collect();
        let stabilizer = Subgroup::from_members(h.group(), members)?;
        let orbit_size = h.order()? / stabilizer.order()?;
        Ok(OrbitEntry {
            rep: rep.clone(),
            stabilizer,
            orbit_size,
        })
    });
    entries.into_iter().collect()
}

/// A disjoint ordered pair of subsets, stored by positions into the acted
/// point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRep {
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
}

/// H-orbits of ordered pairs `(X1, X2)` of disjoint (possibly empty) subsets
/// of F. A pair is encoded as the function F -> {0, 1, 2} marking membership,
/// and the representative is the lexicographically minimal encoding.
pub fn disjoint_pair_orbits(h: &Subgroup, act: &SetAction) -> Result<Vec<OrbitEntry<PairRep>>> {
    let raw = function_orbits_with_zero(h, act)?;
    Ok(raw
        .into_iter()
        .map(|e| {
            let x1 = e.rep.iter().positions(|&v| v == 1).collect();
            let x2 = e.rep.iter().positions(|&v| v == 2).collect();
            OrbitEntry {
                rep: PairRep { x1, x2 },
                stabilizer: e.stabilizer,
                orbit_size: e.orbit_size,
            }
        })
        .collect())
}

/// Orbit scan over functions F -> {0, 1, 2} (letter 0 allowed).
fn function_orbits_with_zero(h: &Subgroup, act: &SetAction) -> Result<Vec<OrbitEntry<Vec<u8>>>> {
    let h_elems = h.group().elements()?;
    let npos = act.point_count();
    let total = 3u128.checked_pow(npos as u32).unwrap_or(u128::MAX);
    if total > ORBIT_ENUM_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "pair orbit scan",
            cap: ORBIT_ENUM_CAP,
        });
    }
    let total = total as usize;
    let transformed = |vec: &[u8], hi: usize| -> Vec<u8> {
        let inv = h_elems.inverse_of(hi);
        (0..npos).map(|x| vec[act.apply(inv, x)]).collect()
    };
    let decode = |mut idx: usize| -> Vec<u8> {
        let mut vec = vec![0u8; npos];
        for slot in (0..npos).rev() {
            vec[slot] = (idx % 3) as u8;
            idx /= 3;
        }
        vec
    };
    let canons = crate::exec::map_range(total, |idx| {
        let vec = decode(idx);
        (0..h_elems.len())
            .map(|hi| transformed(&vec, hi))
            .min()
            .unwrap()
    });
    let reps: BTreeSet<Vec<u8>> = canons.into_iter().collect();
    let reps: Vec<Vec<u8>> = reps.into_iter().collect();
    let entries = crate::exec::map_slice(&reps, |rep| -> Result<OrbitEntry<Vec<u8>>> {
        let members: Vec<_> = (0..h_elems.len())
            .filter(|&hi| transformed(rep, hi) == *rep)
            .map(|hi| h_elems.get(hi).clone())
            .collect();
        let stabilizer = Subgroup::from_members(h.group(), members)?;
        let orbit_size = h.order()? / stabilizer.order()?;
        Ok(OrbitEntry {
            rep: rep.clone(),
            stabilizer,
            orbit_size,
        })
    });
    entries.into_iter().collect()
}

/// Restriction of the realized action to the stabilizer of F, acting on the
/// positions of F.
pub fn action_on_subset(
    group: &PermGroup,
    z: &RealizedGSet,
    h: &Subgroup,
    f: &[usize],
) -> Result<SetAction> {
    SetAction::restricted(group, h, z, f)
}

/// G-orbits of functions `S: Z -> {0, ..., alphabet-1}` over the whole
/// realized window. Used by the support-decomposition cross-check.
pub fn full_function_orbit_count(
    group: &PermGroup,
    z: &RealizedGSet,
    alphabet: u64,
) -> Result<usize> {
    let whole = group.as_subgroup()?;
    let ids = subgroup_element_ids(group, &whole)?;
    let points: Vec<usize> = (0..z.point_count()).collect();
    let maps: Vec<Vec<usize>> = ids
        .iter()
        .map(|&gi| points.iter().map(|&p| z.apply(gi, p)).collect())
        .collect();
    let act = SetAction::from_parts(z.point_count(), maps);
    Ok(function_orbits(&whole, &act, alphabet)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::gset::GSetSpec;
    use crate::perm::{gset, Perm};

    fn regular_window(g: &PermGroup) -> RealizedGSet {
        gset::realize(g, &GSetSpec::regular(g).unwrap(), None).unwrap()
    }

    #[test]
    fn z2_regular_subsets() {
        let g = PermGroup::cyclic(2);
        let z = regular_window(&g);
        let res = subset_orbits(&g, &z, 2).unwrap();
        assert!(res.complete);
        assert_eq!(res.entries.len(), 3);
        let stab_orders: Vec<u64> = res
            .entries
            .iter()
            .map(|e| e.stabilizer.order().unwrap())
            .collect();
        assert_eq!(stab_orders, vec![2, 1, 2]);
    }

    #[test]
    fn trivial_group_every_subset_is_an_orbit() {
        let g = PermGroup::trivial(4);
        let z = regular_window(&g);
        // the regular set of the trivial group is a single point; use an
        // explicit 4-copy window instead
        assert_eq!(z.point_count(), 1);
        let spec = GSetSpec {
            pieces: vec![crate::perm::gset::GSetPiece {
                stabilizer: Subgroup::trivial(&g).unwrap(),
                multiplicity: crate::perm::gset::Multiplicity::Finite(4),
            }],
        };
        let z = gset::realize(&g, &spec, None).unwrap();
        assert_eq!(z.point_count(), 4);
        let res = subset_orbits(&g, &z, 4).unwrap();
        assert_eq!(res.entries.len(), 16);
        assert!(res
            .entries
            .iter()
            .all(|e| e.stabilizer.order().unwrap() == 1));
    }

    #[test]
    fn z3_regular_subsets() {
        let g = PermGroup::cyclic(3);
        let z = regular_window(&g);
        let res = subset_orbits(&g, &z, 3).unwrap();
        assert_eq!(res.entries.len(), 4);
        let stab_orders: Vec<u64> = res
            .entries
            .iter()
            .map(|e| e.stabilizer.order().unwrap())
            .collect();
        assert_eq!(stab_orders, vec![3, 1, 1, 3]);
    }

    #[test]
    fn orbit_stabilizer_and_class_equation() {
        for g in [
            PermGroup::cyclic(4),
            PermGroup::symmetric(3),
            PermGroup::dihedral(4),
        ] {
            let order = g.order().unwrap();
            let z = regular_window(&g);
            let n = z.point_count();
            let res = subset_orbits(&g, &z, n).unwrap();
            assert!(res.complete);
            let mut by_size = std::collections::BTreeMap::<usize, u64>::new();
            for e in &res.entries {
                assert_eq!(e.orbit_size * e.stabilizer.order().unwrap(), order);
                *by_size.entry(e.rep.len()).or_default() += e.orbit_size;
            }
            for (s, count) in by_size {
                assert_eq!(count as u128, binomial(n, s));
            }
        }
    }

    #[test]
    fn regular_translation_acts_freely_on_nonempty_subsets() {
        let g = PermGroup::symmetric(3);
        let z = regular_window(&g);
        let res = subset_orbits(&g, &z, 6).unwrap();
        for e in &res.entries {
            if e.rep.is_empty() {
                continue;
            }
            // point stabilizers inside F are trivial under left translation
            let act = action_on_subset(&g, &z, &e.stabilizer, &e.rep).unwrap();
            let h_elems = e.stabilizer.group().elements().unwrap();
            for hi in 1..h_elems.len() {
                for pos in 0..act.point_count() {
                    assert_ne!(act.apply(hi, pos), pos);
                }
            }
        }
    }

    #[test]
    fn function_orbits_single_letter() {
        let g = PermGroup::cyclic(2);
        let h = g.as_subgroup().unwrap();
        let act = SetAction::regular(&g).unwrap();
        let orbits = function_orbits(&h, &act, 1).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].stabilizer.order().unwrap(), 2);
    }

    #[test]
    fn function_orbits_swap_two_points() {
        let g = PermGroup::cyclic(2);
        let h = g.as_subgroup().unwrap();
        let act = SetAction::natural(&g).unwrap();
        let orbits = function_orbits(&h, &act, 2).unwrap();
        assert_eq!(orbits.len(), 3);
        let stab_orders: Vec<u64> = orbits
            .iter()
            .map(|e| e.stabilizer.order().unwrap())
            .collect();
        // reps in lex order: (1,1), (1,2) fused with (2,1), (2,2)
        assert_eq!(
            orbits.iter().map(|e| e.rep.clone()).collect::<Vec<_>>(),
            vec![vec![1, 1], vec![1, 2], vec![2, 2]]
        );
        assert_eq!(stab_orders, vec![2, 1, 2]);
    }

    #[test]
    fn function_orbits_trivial_group() {
        let g = PermGroup::trivial(3);
        let h = g.as_subgroup().unwrap();
        let act = SetAction::natural(&g).unwrap();
        assert_eq!(function_orbits(&h, &act, 3).unwrap().len(), 27);
    }

    #[test]
    fn pair_orbits_one_point() {
        let g = PermGroup::trivial(1);
        let h = g.as_subgroup().unwrap();
        let act = SetAction::natural(&g).unwrap();
        let orbits = disjoint_pair_orbits(&h, &act).unwrap();
        assert_eq!(orbits.len(), 3);
        assert_eq!(orbits[0].rep, PairRep { x1: vec![], x2: vec![] });
        assert_eq!(orbits[1].rep, PairRep { x1: vec![0], x2: vec![] });
        assert_eq!(orbits[2].rep, PairRep { x1: vec![], x2: vec![0] });
    }

    #[test]
    fn pair_orbits_trivial_group_count() {
        let g = PermGroup::trivial(3);
        let h = g.as_subgroup().unwrap();
        let act = SetAction::natural(&g).unwrap();
        assert_eq!(disjoint_pair_orbits(&h, &act).unwrap().len(), 27);
    }

    #[test]
    fn pair_orbits_swap_fuses_mirrors() {
        let g = PermGroup::cyclic(2);
        let h = g.as_subgroup().unwrap();
        let act = SetAction::natural(&g).unwrap();
        let orbits = disjoint_pair_orbits(&h, &act).unwrap();
        assert_eq!(orbits.len(), 6);
        let total: u64 = orbits.iter().map(|e| e.orbit_size).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn support_decomposition_identity() {
        // |G \ {0..N}^Z| = sum over subset orbits of |G_F \ {1..N}^F|
        for g in [PermGroup::cyclic(2), PermGroup::cyclic(3), PermGroup::symmetric(3)] {
            let z = regular_window(&g);
            for n_letters in 1..=2u64 {
                let lhs = full_function_orbit_count(&g, &z, n_letters + 1).unwrap();
                let subsets = subset_orbits(&g, &z, z.point_count()).unwrap();
                let mut rhs = 0usize;
                for e in &subsets.entries {
                    let act = action_on_subset(&g, &z, &e.stabilizer, &e.rep).unwrap();
                    rhs += function_orbits(&e.stabilizer, &act, n_letters).unwrap().len();
                }
                assert_eq!(lhs, rhs, "group {:?} N={}", g.generators(), n_letters);
            }
        }
    }

    #[test]
    fn determinism_across_runs() {
        let g = PermGroup::dihedral(4);
        let z = regular_window(&g);
        let a = subset_orbits(&g, &z, 8).unwrap();
        let b = subset_orbits(&g, &z, 8).unwrap();
        let reps_a: Vec<_> = a.entries.iter().map(|e| e.rep.clone()).collect();
        let reps_b: Vec<_> = b.entries.iter().map(|e| e.rep.clone()).collect();
        assert_eq!(reps_a, reps_b);
    }

    #[test]
    fn window_growth_only_adds_orbits() {
        let g = PermGroup::cyclic(2);
        let spec = GSetSpec {
            pieces: vec![crate::perm::gset::GSetPiece {
                stabilizer: Subgroup::trivial(&g).unwrap(),
                multiplicity: crate::perm::gset::Multiplicity::Omega,
            }],
        };
        let w1: std::collections::BTreeMap<usize, u64> = [(0usize, 1u64)].into_iter().collect();
        let w2: std::collections::BTreeMap<usize, u64> = [(0usize, 2u64)].into_iter().collect();
        let z1 = gset::realize(&g, &spec, Some(&w1)).unwrap();
        let z2 = gset::realize(&g, &spec, Some(&w2)).unwrap();
        let r1 = subset_orbits(&g, &z1, 2).unwrap();
        let r2 = subset_orbits(&g, &z2, 2).unwrap();
        assert!(!r1.complete && !r2.complete);
        // label-keyed reps of the small window persist in the large one
        let key = |z: &RealizedGSet, rep: &[usize]| -> Vec<String> {
            rep.iter().map(|&p| z.label(p).to_string()).collect()
        };
        let keys1: BTreeSet<Vec<String>> =
            r1.entries.iter().map(|e| key(&z1, &e.rep)).collect();
        let keys2: BTreeSet<Vec<String>> =
            r2.entries.iter().map(|e| key(&z2, &e.rep)).collect();
        assert!(keys1.is_subset(&keys2));
    }

    #[test]
    fn stabilizer_of_subset_is_setwise() {
        let g = PermGroup::dihedral(4);
        let z = regular_window(&g);
        let f = vec![0usize, 1];
        let stab = stabilizer_of_subset(&g, &z, &f).unwrap();
        let elems = g.elements().unwrap();
        for p in stab.group().elements().unwrap().list() {
            let gi = elems.index_of(p).unwrap();
            let mut moved: Vec<usize> = f.iter().map(|&x| z.apply(gi, x)).collect();
            moved.sort();
            assert_eq!(moved, f);
        }
        let _ = Perm::identity(1);
    }
}
