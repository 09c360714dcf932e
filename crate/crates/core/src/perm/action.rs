//! Actions of a finite group on an abstract finite point set.

use crate::error::Result;

use super::group::PermGroup;
use super::gset::RealizedGSet;
use super::subgroup::Subgroup;

/// The action of a group on `point_count` abstract points, tabulated per
/// group element (in the group's element order).
#[derive(Debug, Clone)]
pub struct SetAction {
    point_count: usize,
    maps: Vec<Vec<usize>>,
}

impl SetAction {
    /// The left-translation action of a group on its own element list.
    pub fn regular(group: &PermGroup) -> Result<SetAction> {
        let elems = group.elements()?;
        let n = elems.len();
        let maps = crate::exec::map_range(n, |gi| {
            let g = elems.get(gi);
            (0..n)
                .map(|x| elems.index_of(&g.compose(elems.get(x))).unwrap())
                .collect()
        });
        Ok(SetAction {
            point_count: n,
            maps,
        })
    }

    /// The natural action of a permutation group on its degree points.
    pub fn natural(group: &PermGroup) -> Result<SetAction> {
        let elems = group.elements()?;
        let maps = elems
            .list()
            .iter()
            .map(|g| (0..group.degree()).map(|x| g.apply(x)).collect())
            .collect();
        Ok(SetAction {
            point_count: group.degree(),
            maps,
        })
    }

    /// Restricts the realized action of a parent group to a subgroup acting
    /// on a subgroup-stable subset of realized points. Positions in the
    /// returned action index into `points`.
    pub fn restricted(
        parent: &PermGroup,
        h: &Subgroup,
        z: &RealizedGSet,
        points: &[usize],
    ) -> Result<SetAction> {
        let ids = subgroup_element_ids(parent, h)?;
        let pos_of = |pt: usize| points.iter().position(|&p| p == pt);
        let maps = ids
            .iter()
            .map(|&gi| {
                points
                    .iter()
                    .map(|&p| {
                        pos_of(z.apply(gi, p)).expect("point set must be H-stable")
                    })
                    .collect()
            })
            .collect();
        Ok(SetAction {
            point_count: points.len(),
            maps,
        })
    }

    /// Disjoint union with another action of the same group (element lists
    /// must be aligned).
    pub fn disjoint_union(&self, other: &SetAction) -> SetAction {
        assert_eq!(self.maps.len(), other.maps.len());
        let n = self.point_count;
        SetAction {
            point_count: n + other.point_count,
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| {
                    a.iter()
                        .copied()
                        .chain(b.iter().map(|&y| y + n))
                        .collect()
                })
                .collect(),
        }
    }

    /// Disjoint union of the action with itself.
    pub fn doubled(&self) -> SetAction {
        self.disjoint_union(self)
    }

    /// Assembles an action from a raw table; used by tests and by scans that
    /// precompute their own maps.
    pub fn from_parts(point_count: usize, maps: Vec<Vec<usize>>) -> SetAction {
        debug_assert!(maps.iter().all(|m| m.len() == point_count));
        SetAction { point_count, maps }
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn element_count(&self) -> usize {
        self.maps.len()
    }

    #[inline]
    pub fn apply(&self, element: usize, pos: usize) -> usize {
        self.maps[element][pos]
    }

    pub fn images(&self, element: usize) -> &[usize] {
        &self.maps[element]
    }
}

/// Indices of the subgroup's elements inside the parent's element list, in
/// the subgroup's own element order.
pub fn subgroup_element_ids(parent: &PermGroup, h: &Subgroup) -> Result<Vec<usize>> {
    h.check_parent(parent)?;
    let parent_elems = parent.elements()?;
    h.group()
        .elements()?
        .list()
        .iter()
        .map(|p| {
            parent_elems
                .index_of(p)
                .ok_or(crate::error::Error::ElementNotInGroup)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_action_is_free() {
        let g = PermGroup::symmetric(3);
        let act = SetAction::regular(&g).unwrap();
        assert_eq!(act.point_count(), 6);
        for e in 1..act.element_count() {
            for x in 0..act.point_count() {
                assert_ne!(act.apply(e, x), x);
            }
        }
    }

    #[test]
    fn natural_action_matches_images() {
        let g = PermGroup::cyclic(4);
        let act = SetAction::natural(&g).unwrap();
        let elems = g.elements().unwrap();
        for (e, p) in elems.list().iter().enumerate() {
            for x in 0..4 {
                assert_eq!(act.apply(e, x), p.apply(x));
            }
        }
    }
}
