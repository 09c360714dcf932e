//! Ranks of equivariant topological K-theory `K*_H(R^X)` for a finite group
//! H permuting the coordinates of a finite H-set X, by the oriented
//! even/odd conjugacy-class count.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, SetAction};

/// Per-class data and the resulting ranks of K^0 and K^1.
#[derive(Debug, Clone, Serialize)]
pub struct KaroubiRank {
    pub rank0: usize,
    pub rank1: usize,
    pub per_class: Vec<ClassEntry>,
}

/// One conjugacy class of H: the dimension of the fixed subspace of its
/// representative and whether the class is oriented.
#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    /// Image sequence of the class representative.
    pub representative: Vec<usize>,
    /// dim V^g = number of ⟨g⟩-orbits on X.
    pub fixed_dim: usize,
    /// Whether every centralizer element acts on V^g with determinant +1.
    pub oriented: bool,
}

impl KaroubiRank {
    /// The graded free group with rank0 in degree 0 and rank1 in degree 1.
    pub fn graded(&self) -> crate::abgrp::GradedAb {
        crate::abgrp::GradedAb::new(
            crate::abgrp::Ab::free(self.rank0),
            crate::abgrp::Ab::free(self.rank1),
        )
    }
}

/// Partition of X into ⟨g⟩-orbits: returns for each point its orbit id and
/// the number of orbits.
fn cyclic_orbits(act: &SetAction, g: usize) -> (Vec<usize>, usize) {
    let n = act.point_count();
    let mut orbit_of = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = count;
        count += 1;
        let mut x = start;
        while orbit_of[x] == usize::MAX {
            orbit_of[x] = id;
            x = act.apply(g, x);
        }
    }
    (orbit_of, count)
}

/// Sign of the permutation that `c` induces on the ⟨g⟩-orbits of X. This is
/// the determinant of `c` on the fixed subspace V^g, whose basis consists of
/// the orbit sums.
fn orbit_sign(act: &SetAction, orbit_of: &[usize], n_orbits: usize, c: usize) -> i32 {
    let mut image = vec![usize::MAX; n_orbits];
    for x in 0..act.point_count() {
        image[orbit_of[x]] = orbit_of[act.apply(c, x)];
    }
    let mut seen = vec![false; n_orbits];
    let mut transpositions = 0usize;
    for start in 0..n_orbits {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = image[x];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Rank of `K*_H(R^X)`: a conjugacy class contributes to K^0 when it is
/// oriented with even fixed dimension, to K^1 when oriented with odd fixed
/// dimension. Orientation is checked over the full centralizer.
pub fn euclidean_rank(h: &PermGroup, x: &SetAction) -> Result<KaroubiRank> {
    euclidean_rank_impl(h, x, false)
}

/// Same count, but the orientation check only runs over a generating set of
/// the centralizer (the sign map is a homomorphism). Must agree with
/// [`euclidean_rank`].
pub fn euclidean_rank_generator_path(h: &PermGroup, x: &SetAction) -> Result<KaroubiRank> {
    euclidean_rank_impl(h, x, true)
}

fn euclidean_rank_impl(h: &PermGroup, x: &SetAction, generators_only: bool) -> Result<KaroubiRank> {
    let elems = h.elements()?;
    if x.element_count() != elems.len() {
        return Err(Error::ShapeMismatch(
            "H-set action table does not match the group order".into(),
        ));
    }
    let classes = h.conjugacy_classes()?;
    let per_class: Vec<ClassEntry> = classes
        .classes
        .iter()
        .map(|cls| {
            let g = cls.rep;
            let (orbit_of, n_orbits) = cyclic_orbits(x, g);
            let centralizer: Vec<usize> = if generators_only {
                let sub = h.centralizer(elems.get(g))?;
                sub.generators()
                    .iter()
                    .map(|p| elems.index_of(p).expect("centralizer members lie in H"))
                    .collect()
            } else {
                (0..elems.len())
                    .filter(|&ci| {
                        let c = elems.get(ci);
                        let gp = elems.get(g);
                        c.compose(gp) == gp.compose(c)
                    })
                    .collect()
            };
            let oriented = centralizer
                .iter()
                .all(|&c| orbit_sign(x, &orbit_of, n_orbits, c) == 1);
            Ok(ClassEntry {
                representative: elems.get(g).images().to_vec(),
                fixed_dim: n_orbits,
                oriented,
            })
        })
        .collect::<Result<_>>()?;
    let rank0 = per_class
        .iter()
        .filter(|e| e.oriented && e.fixed_dim % 2 == 0)
        .count();
    let rank1 = per_class
        .iter()
        .filter(|e| e.oriented && e.fixed_dim % 2 == 1)
        .count();
    Ok(KaroubiRank {
        rank0,
        rank1,
        per_class,
    })
}

/// Checks that H acts freely on X.
pub fn check_free(h: &PermGroup, x: &SetAction) -> Result<()> {
    let elems = h.elements()?;
    for e in 1..elems.len() {
        for pt in 0..x.point_count() {
            if x.apply(e, pt) == pt {
                return Err(Error::ActionNotFree { point: pt });
            }
        }
    }
    Ok(())
}

/// K-theory of `C_0(R^X) ⋊ H` for a free H-set X, through the parity
/// reduction: an even number of orbits trivializes the action up to Bott
/// periodicity, an odd number reduces to the regular Euclidean H-space.
pub fn free_action_reduction(h: &PermGroup, x: &SetAction) -> Result<crate::abgrp::GradedAb> {
    check_free(h, x)?;
    let order = h.order()? as usize;
    debug_assert_eq!(x.point_count() % order, 0);
    let orbits = x.point_count() / order;
    if orbits % 2 == 0 {
        Ok(crate::abgrp::GradedAb::free_even(h.class_count()?))
    } else {
        Ok(euclidean_rank(h, &SetAction::regular(h)?)?.graded())
    }
}
