//! Subgroups of a permutation group.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::group::PermGroup;
use super::perm::Perm;

/// A subgroup of a parent [`PermGroup`], carrying its own closure caches.
///
/// Construction validates that every generator lies in the parent and that
/// Lagrange's relation holds between the two orders.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: PermGroup,
    parent_degree: usize,
    parent_order: u64,
}

impl Subgroup {
    pub fn new(parent: &PermGroup, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if !parent.contains(g)? {
                return Err(Error::NotASubgroup(format!(
                    "generator {g} is not in the parent group"
                )));
            }
        }
        let group = PermGroup::with_cap(parent.degree(), generators, parent.cap())?;
        let sub = Subgroup {
            group,
            parent_degree: parent.degree(),
            parent_order: parent.order()?,
        };
        let order = sub.order()?;
        if sub.parent_order % order != 0 {
            return Err(Error::NotASubgroup(format!(
                "order {order} does not divide parent order {}",
                sub.parent_order
            )));
        }
        Ok(sub)
    }

    /// Builds a subgroup from a full member list, extracting a small
    /// generating set greedily.
    pub fn from_members(parent: &PermGroup, members: Vec<Perm>) -> Result<Self> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut closure: BTreeSet<Perm> =
            std::iter::once(Perm::identity(parent.degree())).collect();
        for m in &members {
            if closure.contains(m) {
                continue;
            }
            gens.push(m.clone());
            // refresh closure with the new generator
            let mut queue: Vec<Perm> = closure.iter().cloned().collect();
            closure.insert(m.clone());
            queue.push(m.clone());
            while let Some(x) = queue.pop() {
                for g in &gens {
                    for p in [x.compose(g), g.compose(&x)] {
                        if closure.insert(p.clone()) {
                            queue.push(p);
                        }
                    }
                }
            }
            if closure.len() == members.len() {
                break;
            }
        }
        Subgroup::new(parent, gens)
    }

    pub fn trivial(parent: &PermGroup) -> Result<Self> {
        Subgroup::new(parent, Vec::new())
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Perm] {
        self.group.generators()
    }

    pub fn order(&self) -> Result<u64> {
        self.group.order()
    }

    pub fn class_count(&self) -> Result<usize> {
        self.group.class_count()
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        self.group.contains(p)
    }

    pub fn index_in_parent(&self) -> Result<u64> {
        Ok(self.parent_order / self.order()?)
    }

    /// The member set as a sorted set of borrowed permutations.
    pub fn elements_set(&self) -> Result<BTreeSet<&Perm>> {
        Ok(self.group.elements()?.list().iter().collect())
    }

    /// Sorted member list, used for deduplication keys.
    pub fn sorted_members(&self) -> Result<Vec<Perm>> {
        let mut v: Vec<Perm> = self.group.elements()?.list().to_vec();
        v.sort();
        Ok(v)
    }

    pub(crate) fn check_parent(&self, parent: &PermGroup) -> Result<()> {
        if self.parent_degree != parent.degree() {
            return Err(Error::NotASubgroup(
                "subgroup was built over a different parent degree".into(),
            ));
        }
        Ok(())
    }

    /// The conjugate subgroup `g H g^{-1}` inside the same parent.
    pub fn conjugate(&self, parent: &PermGroup, g: &Perm) -> Result<Subgroup> {
        let gens = self
            .generators()
            .iter()
            .map(|h| h.conjugate_by(g))
            .collect();
        Subgroup::new(parent, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_foreign_generators() {
        let g = PermGroup::cyclic(3);
        let t = Perm::from_cycle(3, &[0, 1]).unwrap();
        assert!(matches!(
            Subgroup::new(&g, vec![t]),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn from_members_finds_small_generating_set() {
        let g = PermGroup::symmetric(4);
        let members: Vec<Perm> = g.elements().unwrap().list().to_vec();
        let h = Subgroup::from_members(&g, members).unwrap();
        assert_eq!(h.order().unwrap(), 24);
        assert!(h.generators().len() <= 4);
    }

    #[test]
    fn lagrange_index() {
        let g = PermGroup::symmetric(3);
        let t = Perm::from_cycle(3, &[0, 1]).unwrap();
        let h = Subgroup::new(&g, vec![t]).unwrap();
        assert_eq!(h.index_in_parent().unwrap(), 3);
    }
}
