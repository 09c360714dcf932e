//! Finite permutation groups with cached closure and conjugacy data.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::perm::Perm;
use super::subgroup::Subgroup;

/// Default cap on the size of a generated closure.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// Default cap on the group order for whole-lattice subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 384;

/// Cached element closure of a group: the BFS element list plus lookups.
#[derive(Debug, Clone)]
pub struct Elements {
    list: Vec<Perm>,
    index: BTreeMap<Perm, usize>,
    inverse: Vec<usize>,
}

impl Elements {
    pub fn list(&self) -> &[Perm] {
        &self.list
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &Perm {
        &self.list[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse[i]
    }
}

/// One conjugacy class: its minimal representative and its size.
#[derive(Debug, Clone)]
pub struct ConjClass {
    /// Index of the lexicographically minimal member in the element list.
    pub rep: usize,
    pub size: u64,
}

/// Cached conjugacy data: classes in (representative order, lex) order plus
/// the element -> class index map.
#[derive(Debug, Clone)]
pub struct Classes {
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<usize>,
}

/// A finite group given by permutation generators on `degree` points.
///
/// Elements, conjugacy classes and the subgroup lattice are computed lazily
/// and cached; all caches are safe to read from multiple threads.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    elements: OnceLock<std::result::Result<Elements, Error>>,
    classes: OnceLock<std::result::Result<Classes, Error>>,
    subgroups: OnceLock<std::result::Result<Vec<(Subgroup, u64)>, Error>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            cap: self.cap,
            elements: self.elements.clone(),
            classes: self.classes.clone(),
            subgroups: self.subgroups.clone(),
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_cap(degree, generators, DEFAULT_CLOSURE_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPerm(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            cap,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
            subgroups: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group is always valid")
    }

    /// The cyclic group Z/m in its regular representation on m points.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        if m == 1 {
            return PermGroup::trivial(1);
        }
        let rot = Perm::from_cycle(m, &(0..m).collect::<Vec<_>>()).unwrap();
        PermGroup::new(m, vec![rot]).unwrap()
    }

    /// The symmetric group on n points.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return PermGroup::trivial(1);
        }
        let t = Perm::from_cycle(n, &[0, 1]).unwrap();
        if n == 2 {
            return PermGroup::new(2, vec![t]).unwrap();
        }
        let c = Perm::from_cycle(n, &(0..n).collect::<Vec<_>>()).unwrap();
        PermGroup::new(n, vec![t, c]).unwrap()
    }

    /// The dihedral group of order 2n acting on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 2);
        let rot = Perm::from_cycle(n, &(0..n).collect::<Vec<_>>()).unwrap();
        let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        PermGroup::new(n, vec![rot, refl]).unwrap()
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Self {
        let degree = a.degree + b.degree;
        let mut gens = Vec::new();
        for g in &a.generators {
            let mut im: Vec<usize> = (0..degree).collect();
            for (x, &y) in g.images().iter().enumerate() {
                im[x] = y;
            }
            gens.push(Perm::from_images(im).unwrap());
        }
        for g in &b.generators {
            let mut im: Vec<usize> = (0..degree).collect();
            for (x, &y) in g.images().iter().enumerate() {
                im[a.degree + x] = a.degree + y;
            }
            gens.push(Perm::from_images(im).unwrap());
        }
        PermGroup::with_cap(degree, gens, a.cap.max(b.cap)).unwrap()
    }

    /// The wreath product `H wr G = (⊕_G H) ⋊ G` in its imprimitive action on
    /// `|H-degree| * |G|` points, with the base indexed by the elements of G.
    pub fn wreath(h: &PermGroup, g: &PermGroup) -> Result<Self> {
        let g_elems = g.elements()?;
        let blocks = g_elems.len();
        let bd = h.degree;
        let degree = bd * blocks;
        let mut gens = Vec::new();
        // copy of each H-generator inside block 0
        for hg in &h.generators {
            let mut im: Vec<usize> = (0..degree).collect();
            for (x, &y) in hg.images().iter().enumerate() {
                im[x] = y;
            }
            gens.push(Perm::from_images(im)?);
        }
        // G permuting the blocks by left translation on itself
        for gg in &g.generators {
            let mut im = vec![0usize; degree];
            for b in 0..blocks {
                let target = g_elems
                    .index_of(&gg.compose(g_elems.get(b)))
                    .expect("closure is closed under products");
                for x in 0..bd {
                    im[b * bd + x] = target * bd + x;
                }
            }
            gens.push(Perm::from_images(im)?);
        }
        PermGroup::with_cap(degree, gens, h.cap.max(g.cap))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The full element closure in deterministic BFS order: the identity
    /// first, then products of ever more generators, ties broken by image
    /// sequence.
    pub fn elements(&self) -> Result<&Elements> {
        self.elements
            .get_or_init(|| self.compute_elements())
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn order(&self) -> Result<u64> {
        Ok(self.elements()?.len() as u64)
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        Ok(p.degree() == self.degree && self.elements()?.index_of(p).is_some())
    }

    fn compute_elements(&self) -> std::result::Result<Elements, Error> {
        let mut index = BTreeMap::new();
        let id = Perm::identity(self.degree);
        index.insert(id.clone(), 0usize);
        let mut list = vec![id];
        let mut frontier: Vec<usize> = vec![0];
        while !frontier.is_empty() {
            let mut next: Vec<Perm> = Vec::new();
            for &fi in &frontier {
                for g in &self.generators {
                    let candidate = list[fi].compose(g);
                    if !index.contains_key(&candidate) && !next.contains(&candidate) {
                        next.push(candidate);
                    }
                }
            }
            next.sort();
            next.dedup();
            frontier = Vec::with_capacity(next.len());
            for p in next {
                if list.len() >= self.cap {
                    return Err(Error::CapExceeded {
                        what: "element closure",
                        cap: self.cap,
                    });
                }
                index.insert(p.clone(), list.len());
                frontier.push(list.len());
                list.push(p);
            }
        }
        let inverse = list
            .iter()
            .map(|p| index[&p.inverse()])
            .collect();
        Ok(Elements {
            list,
            index,
            inverse,
        })
    }

    /// Conjugacy classes ordered by (order of representative, representative
    /// image sequence); each representative is the lexicographic minimum of
    /// its class.
    pub fn conjugacy_classes(&self) -> Result<&Classes> {
        self.classes
            .get_or_init(|| self.compute_classes())
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Number of conjugacy classes.
    pub fn class_count(&self) -> Result<usize> {
        Ok(self.conjugacy_classes()?.classes.len())
    }

    fn compute_classes(&self) -> std::result::Result<Classes, Error> {
        let elems = self.elements()?;
        let n = elems.len();
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<(usize, u64)> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = raw.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut cursor = 0;
            while cursor < members.len() {
                let e = members[cursor];
                cursor += 1;
                for g in &self.generators {
                    let conj = elems.get(e).conjugate_by(g);
                    let ci = elems.index_of(&conj).expect("closed under conjugation");
                    if class_of[ci] == usize::MAX {
                        class_of[ci] = cid;
                        members.push(ci);
                    }
                }
            }
            let rep = members
                .iter()
                .copied()
                .min_by(|&a, &b| elems.get(a).cmp(elems.get(b)))
                .unwrap();
            raw.push((rep, members.len() as u64));
        }
        // sort classes by (order of representative, representative lex)
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| {
            let (ra, rb) = (raw[a].0, raw[b].0);
            elems
                .get(ra)
                .order()
                .cmp(&elems.get(rb).order())
                .then_with(|| elems.get(ra).cmp(elems.get(rb)))
        });
        let mut renumber = vec![0usize; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let classes = order
            .iter()
            .map(|&old| ConjClass {
                rep: raw[old].0,
                size: raw[old].1,
            })
            .collect();
        for c in class_of.iter_mut() {
            *c = renumber[*c];
        }
        Ok(Classes { classes, class_of })
    }

    /// The centralizer of `g` in the group.
    pub fn centralizer(&self, g: &Perm) -> Result<Subgroup> {
        let elems = self.elements()?;
        if elems.index_of(g).is_none() {
            return Err(Error::ElementNotInGroup);
        }
        let members: Vec<Perm> = elems
            .list()
            .iter()
            .filter(|c| c.compose(g) == g.compose(c))
            .cloned()
            .collect();
        Subgroup::from_members(self, members)
    }

    /// The center of the group: elements commuting with every generator.
    pub fn center(&self) -> Result<Subgroup> {
        let elems = self.elements()?;
        let members: Vec<Perm> = elems
            .list()
            .iter()
            .filter(|c| self.generators.iter().all(|g| c.compose(g) == g.compose(c)))
            .cloned()
            .collect();
        Subgroup::from_members(self, members)
    }

    /// The normalizer of `h` in the group.
    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        h.check_parent(self)?;
        let elems = self.elements()?;
        let h_set: std::collections::BTreeSet<&Perm> = h.elements_set()?;
        let members: Vec<Perm> = elems
            .list()
            .iter()
            .filter(|g| {
                h_set
                    .iter()
                    .all(|x| h_set.contains(&x.conjugate_by(g)))
            })
            .cloned()
            .collect();
        Subgroup::from_members(self, members)
    }

    /// All subgroups up to conjugacy, by cyclic extension with element-set
    /// dedup, ordered by (order, element set). Includes the trivial subgroup
    /// and the whole group. Class size accompanies each representative.
    pub fn subgroup_classes(&self) -> Result<&[(Subgroup, u64)]> {
        self.subgroups
            .get_or_init(|| self.compute_subgroup_classes())
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    fn compute_subgroup_classes(&self) -> std::result::Result<Vec<(Subgroup, u64)>, Error> {
        let elems = self.elements()?;
        let n = elems.len();
        if n > DEFAULT_SUBGROUP_CAP {
            return Err(Error::CapExceeded {
                what: "subgroup enumeration",
                cap: DEFAULT_SUBGROUP_CAP,
            });
        }
        type ElemSet = Vec<usize>; // sorted element indices
        let closure_of = |gens: &[usize]| -> ElemSet {
            let mut in_set = vec![false; n];
            in_set[0] = true;
            let mut members = vec![0usize];
            let mut cursor = 0;
            while cursor < members.len() {
                let a = members[cursor];
                cursor += 1;
                for &g in gens {
                    let prod = elems.get(a).compose(elems.get(g));
                    let pi = elems.index_of(&prod).unwrap();
                    if !in_set[pi] {
                        in_set[pi] = true;
                        members.push(pi);
                    }
                }
            }
            members.sort_unstable();
            members
        };

        // all cyclic subgroups
        let mut all: std::collections::BTreeMap<ElemSet, Vec<usize>> = BTreeMap::new();
        all.insert(vec![0], vec![]);
        for e in 1..n {
            let set = closure_of(&[e]);
            all.entry(set).or_insert_with(|| vec![e]);
        }
        // extend by single elements until stable
        let mut frontier: Vec<(ElemSet, Vec<usize>)> =
            all.iter().map(|(s, g)| (s.clone(), g.clone())).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (set, gens) in &frontier {
                if set.len() == n {
                    continue;
                }
                for e in 1..n {
                    if set.binary_search(&e).is_ok() {
                        continue;
                    }
                    let mut new_gens = gens.clone();
                    new_gens.push(e);
                    let new_set = closure_of(&new_gens);
                    if !all.contains_key(&new_set) {
                        all.insert(new_set.clone(), new_gens.clone());
                        next.push((new_set, new_gens));
                    }
                }
            }
            frontier = next;
        }

        // group into conjugacy classes of subgroups
        let mut classified: std::collections::BTreeSet<ElemSet> = Default::default();
        let mut out: Vec<(ElemSet, u64)> = Vec::new();
        for set in all.keys() {
            if classified.contains(set) {
                continue;
            }
            let mut class: std::collections::BTreeSet<ElemSet> = Default::default();
            for gi in 0..n {
                let g = elems.get(gi);
                let mut conj: ElemSet = set
                    .iter()
                    .map(|&e| elems.index_of(&elems.get(e).conjugate_by(g)).unwrap())
                    .collect();
                conj.sort_unstable();
                class.insert(conj);
            }
            let rep = class.iter().next().unwrap().clone();
            let size = class.len() as u64;
            classified.extend(class);
            out.push((rep, size));
        }
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out.into_iter()
            .map(|(set, size)| {
                let members: Vec<Perm> = set.iter().map(|&e| elems.get(e).clone()).collect();
                Ok((Subgroup::from_members(self, members)?, size))
            })
            .collect()
    }

    /// The whole group viewed as a subgroup of itself.
    pub fn as_subgroup(&self) -> Result<Subgroup> {
        Subgroup::new(self, self.generators.clone())
    }
}

/// JSON form of a group: `{"degree": m, "generators": [[images...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn to_group(&self, cap: usize) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|im| Perm::from_images(im.clone()))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::with_cap(self.degree, gens, cap)
    }

    pub fn from_group(g: &PermGroup) -> Self {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent closure oracle: keep multiplying all pairs until stable.
    fn brute_closure(degree: usize, gens: &[Perm]) -> std::collections::BTreeSet<Perm> {
        let mut set: std::collections::BTreeSet<Perm> =
            std::iter::once(Perm::identity(degree)).collect();
        set.extend(gens.iter().cloned());
        loop {
            let mut grew = false;
            let snapshot: Vec<Perm> = set.iter().cloned().collect();
            for a in &snapshot {
                for b in &snapshot {
                    if set.insert(a.compose(b)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn trivial_group_has_identity_only() {
        let g = PermGroup::trivial(1);
        let e = g.elements().unwrap();
        assert_eq!(e.len(), 1);
        assert!(e.get(0).is_identity());
    }

    #[test]
    fn z2_has_two_elements() {
        let g = PermGroup::cyclic(2);
        assert_eq!(g.order().unwrap(), 2);
    }

    #[test]
    fn s3_closure_matches_brute_force() {
        let g = PermGroup::symmetric(3);
        let elems = g.elements().unwrap();
        assert_eq!(elems.len(), 6);
        let oracle = brute_closure(3, g.generators());
        let ours: std::collections::BTreeSet<Perm> = elems.list().iter().cloned().collect();
        assert_eq!(ours, oracle);
    }

    #[test]
    fn closure_is_bfs_ordered_and_deterministic() {
        let g1 = PermGroup::symmetric(4);
        let g2 = PermGroup::symmetric(4);
        assert_eq!(g1.elements().unwrap().list(), g2.elements().unwrap().list());
        assert!(g1.elements().unwrap().get(0).is_identity());
    }

    #[test]
    fn cap_is_enforced() {
        let g = PermGroup::with_cap(5, PermGroup::symmetric(5).generators().to_vec(), 100);
        assert_eq!(
            g.unwrap().elements().unwrap_err(),
            Error::CapExceeded {
                what: "element closure",
                cap: 100
            }
        );
    }

    #[test]
    fn trivial_group_one_class() {
        let g = PermGroup::trivial(2);
        assert_eq!(g.class_count().unwrap(), 1);
    }

    #[test]
    fn s3_classes_by_brute_force_conjugation() {
        let g = PermGroup::symmetric(3);
        let cls = g.conjugacy_classes().unwrap();
        let mut sizes: Vec<u64> = cls.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes.len(), 3);
        assert_eq!(sizes.iter().sum::<u64>(), 6);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        // ordering: identity class first, then by element order (2 before 3)
        let elems = g.elements().unwrap();
        let orders: Vec<u64> = cls.classes.iter().map(|c| elems.get(c.rep).order()).collect();
        assert_eq!(orders, vec![1, 2, 3]);
    }

    #[test]
    fn d4_has_five_classes() {
        let g = PermGroup::dihedral(4);
        assert_eq!(g.order().unwrap(), 8);
        assert_eq!(g.class_count().unwrap(), 5);
    }

    #[test]
    fn wreath_z2_z2_is_d4_sized() {
        let w = PermGroup::wreath(&PermGroup::cyclic(2), &PermGroup::cyclic(2)).unwrap();
        assert_eq!(w.order().unwrap(), 8);
        assert_eq!(w.class_count().unwrap(), 5);
    }

    #[test]
    fn centralizer_of_identity_is_whole_group() {
        let g = PermGroup::symmetric(3);
        let c = g.centralizer(&Perm::identity(3)).unwrap();
        assert_eq!(c.order().unwrap(), 6);
    }

    #[test]
    fn centralizer_of_transposition_in_s3() {
        let g = PermGroup::symmetric(3);
        let t = Perm::from_cycle(3, &[0, 1]).unwrap();
        let c = g.centralizer(&t).unwrap();
        assert_eq!(c.order().unwrap(), 2);
    }

    #[test]
    fn centralizer_in_abelian_group_is_everything() {
        let g = PermGroup::cyclic(6);
        for e in g.elements().unwrap().list() {
            assert_eq!(g.centralizer(e).unwrap().order().unwrap(), 6);
        }
    }

    #[test]
    fn centralizer_rejects_outsiders() {
        let g = PermGroup::cyclic(3);
        let t = Perm::from_cycle(3, &[0, 1]).unwrap();
        assert_eq!(g.centralizer(&t).unwrap_err(), Error::ElementNotInGroup);
    }

    #[test]
    fn normalizer_cases() {
        let g = PermGroup::symmetric(3);
        let whole = g.as_subgroup().unwrap();
        assert_eq!(g.normalizer(&whole).unwrap().order().unwrap(), 6);
        let t = Perm::from_cycle(3, &[0, 1]).unwrap();
        let h = Subgroup::new(&g, vec![t]).unwrap();
        assert_eq!(g.normalizer(&h).unwrap().order().unwrap(), 2);
        let triv = Subgroup::new(&g, vec![]).unwrap();
        assert_eq!(g.normalizer(&triv).unwrap().order().unwrap(), 6);
    }

    #[test]
    fn subgroup_classes_small_groups() {
        assert_eq!(PermGroup::cyclic(2).subgroup_classes().unwrap().len(), 2);
        // S_3: trivial, 3 conjugate Z/2, Z/3, S_3 -> 4 classes (6 subgroups)
        let s3 = PermGroup::symmetric(3);
        let classes = s3.subgroup_classes().unwrap();
        assert_eq!(classes.len(), 4);
        let total: u64 = classes.iter().map(|(_, size)| size).sum();
        assert_eq!(total, 6);
        // Z/2 x Z/2: every subgroup normal, 5 classes
        let v4 = PermGroup::direct_product(&PermGroup::cyclic(2), &PermGroup::cyclic(2));
        let classes = v4.subgroup_classes().unwrap();
        assert_eq!(classes.len(), 5);
        assert!(classes.iter().all(|(_, size)| *size == 1));
    }

    #[test]
    fn center_of_d4() {
        let g = PermGroup::dihedral(4);
        assert_eq!(g.center().unwrap().order().unwrap(), 2);
    }

    #[test]
    fn class_equation_holds_on_battery() {
        for g in [
            PermGroup::cyclic(4),
            PermGroup::symmetric(4),
            PermGroup::dihedral(6),
        ] {
            let order = g.order().unwrap();
            let total: u64 = g
                .conjugacy_classes()
                .unwrap()
                .classes
                .iter()
                .map(|c| c.size)
                .sum();
            assert_eq!(total, order);
        }
    }
}
