//! Exact complex character tables of finite groups (Dixon's method) and the
//! induction/restriction matrices realizing the K-theory functor
//! `G/H ↦ K_*(C*_r(H))` on morphisms of the orbit category.
//!
//! The artifact hard-codes `K_*(C*_r(H)) = (Z^{c(H)}, 0)` for finite H; the
//! tables here provide c(H) with structure and the integer matrices induced
//! by subgroup inclusions.

mod cyclotomic;
mod dixon;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Subgroup};

pub use cyclotomic::{CycVal, Cyclotomic};

/// Cap on the group order for character-table computation.
pub const CHARTAB_CAP: u64 = 500;

/// An exact character table. Classes are ordered by (element order,
/// representative lex); irreducibles by (degree, value vector lex).
#[derive(Debug, Clone)]
pub struct CharacterTable {
    order: u64,
    class_sizes: Vec<u64>,
    class_orders: Vec<u64>,
    inverse_class: Vec<usize>,
    degrees: Vec<u64>,
    /// values[irr][class], reduced in the exponent-th cyclotomic field
    values: Vec<Vec<CycVal>>,
    field: Cyclotomic,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn field(&self) -> &Cyclotomic {
        &self.field
    }

    pub fn value(&self, irr: usize, class: usize) -> &CycVal {
        &self.values[irr][class]
    }

    /// `⟨χ_a, χ_b⟩ = |G|^{-1} Σ_i h_i χ_a(g_i) χ_b(g_i^{-1})`, exact.
    pub fn inner_product(&self, a: &[CycVal], b: &[CycVal]) -> Result<i64> {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.class_count() {
            let term = f.mul(&a[i], &b[self.inverse_class[i]]);
            acc = f.add(&acc, &f.scale(&term, self.class_sizes[i] as i64));
        }
        let n = f.as_int(&acc).ok_or_else(|| {
            Error::NotComputable("inner product is not a rational integer".into())
        })?;
        if n % self.order as i64 != 0 {
            return Err(Error::NotComputable(
                "inner product is not divisible by the group order".into(),
            ));
        }
        Ok(n / self.order as i64)
    }

    pub fn row(&self, irr: usize) -> &[CycVal] {
        &self.values[irr]
    }

    fn verify(&self) -> Result<()> {
        let r = self.class_count();
        // row orthogonality
        for s in 0..r {
            for t in 0..r {
                let ip = self.inner_product(&self.values[s], &self.values[t])?;
                let expected = i64::from(s == t);
                if ip != expected {
                    return Err(Error::NotComputable(format!(
                        "row orthogonality failed at ({s},{t}): got {ip}"
                    )));
                }
            }
        }
        // column orthogonality: Σ_t χ_t(i) χ_t(j^{-1}) = δ_ij |G| / h_i
        let f = &self.field;
        for i in 0..r {
            for j in 0..r {
                let mut acc = f.zero();
                for t in 0..r {
                    let term = f.mul(&self.values[t][i], &self.values[t][self.inverse_class[j]]);
                    acc = f.add(&acc, &term);
                }
                let expected = if i == j {
                    (self.order / self.class_sizes[i]) as i64
                } else {
                    0
                };
                if f.as_int(&acc) != Some(expected) {
                    return Err(Error::NotComputable(format!(
                        "column orthogonality failed at ({i},{j})"
                    )));
                }
            }
        }
        let sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sq != self.order {
            return Err(Error::NotComputable(format!(
                "degree squares sum to {sq}, group order is {}",
                self.order
            )));
        }
        if self.degrees.iter().any(|&d| self.order % d != 0) {
            return Err(Error::NotComputable(
                "some degree does not divide the group order".into(),
            ));
        }
        Ok(())
    }

    /// JSON export with values rendered exactly as strings.
    pub fn to_json(&self) -> CharacterTableJson {
        CharacterTableJson {
            order: self.order,
            exponent: self.field.m(),
            class_sizes: self.class_sizes.clone(),
            class_orders: self.class_orders.clone(),
            degrees: self.degrees.clone(),
            table: self
                .values
                .iter()
                .map(|row| row.iter().map(|v| self.field.render(v)).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterTableJson {
    pub order: u64,
    pub exponent: u64,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub degrees: Vec<u64>,
    pub table: Vec<Vec<String>>,
}

/// Computes the exact character table of a finite permutation group.
pub fn character_table(group: &PermGroup) -> Result<CharacterTable> {
    if group.order()? > CHARTAB_CAP {
        return Err(Error::CapExceeded {
            what: "character table",
            cap: CHARTAB_CAP as usize,
        });
    }
    let data = dixon::dixon(group)?;
    let field = Cyclotomic::new(data.exponent);
    let r = data.class_sizes.len();
    let mut rows: Vec<(u64, Vec<CycVal>)> = Vec::with_capacity(r);
    for irr in 0..r {
        let values: Vec<CycVal> = (0..r)
            .map(|class| dixon::lift_value(&data, &field, irr, class))
            .collect::<Result<_>>()?;
        // the lifted value at the identity class must equal the degree
        if field.as_int(&values[0]) != Some(data.degrees[irr] as i64) {
            return Err(Error::NotComputable(
                "lifted character does not match its degree".into(),
            ));
        }
        rows.push((data.degrees[irr], values));
    }
    // degree ascending, then value vectors in descending lex order so the
    // trivial character leads its degree block
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    let table = CharacterTable {
        order: data.order,
        class_sizes: data.class_sizes,
        class_orders: data.class_orders,
        inverse_class: data.inverse_class,
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        values: rows.into_iter().map(|(_, v)| v).collect(),
        field,
    };
    table.verify()?;
    Ok(table)
}

/// Integer matrix of induced-representation multiplicities: rows indexed by
/// the irreducibles of the parent, columns by those of the subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionMatrix {
    pub matrix: Vec<Vec<i64>>,
}

impl InductionMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn to_int_matrix(&self) -> crate::abgrp::IntMatrix {
        crate::abgrp::IntMatrix::from_rows(
            self.matrix
                .iter()
                .map(|r| r.iter().map(|&x| x as i128).collect())
                .collect(),
        )
        .expect("rectangular by construction")
    }
}

/// The restriction of each parent character to the subgroup, as value
/// vectors over the subgroup's classes (embedded into the parent's field).
fn restricted_values(
    parent: &PermGroup,
    parent_table: &CharacterTable,
    sub: &Subgroup,
) -> Result<Vec<Vec<CycVal>>> {
    let parent_classes = parent.conjugacy_classes()?;
    let parent_elems = parent.elements()?;
    let sub_classes = sub.group().conjugacy_classes()?;
    let sub_elems = sub.group().elements()?;
    let mut out = Vec::new();
    for irr in 0..parent_table.class_count() {
        let row: Vec<CycVal> = sub_classes
            .classes
            .iter()
            .map(|c| {
                let rep = sub_elems.get(c.rep);
                let pc = parent_classes.class_of[parent_elems
                    .index_of(rep)
                    .ok_or(Error::ElementNotInGroup)?];
                Ok(parent_table.value(irr, pc).clone())
            })
            .collect::<Result<_>>()?;
        out.push(row);
    }
    Ok(out)
}

/// Induction multiplicities computed by Frobenius reciprocity from the
/// restricted characters: `m_ij = ⟨Res χ_i, χ_j⟩_{H0}`.
pub fn induction_matrix(h1: &PermGroup, h0: &Subgroup) -> Result<InductionMatrix> {
    let t1 = character_table(h1)?;
    let t0 = character_table(h0.group())?;
    induction_matrix_with(h1, &t1, h0, &t0)
}

pub fn induction_matrix_with(
    h1: &PermGroup,
    t1: &CharacterTable,
    h0: &Subgroup,
    t0: &CharacterTable,
) -> Result<InductionMatrix> {
    let restricted = restricted_values(h1, t1, h0)?;
    // move the subgroup's own characters into the parent's field
    let embedded: Vec<Vec<CycVal>> = (0..t0.class_count())
        .map(|j| {
            (0..t0.class_count())
                .map(|c| t1.field().embed_from(t0.field(), t0.value(j, c)))
                .collect()
        })
        .collect();
    let sub_inner = |a: &[CycVal], b: &[CycVal]| -> Result<i64> {
        let f = t1.field();
        let mut acc = f.zero();
        for i in 0..t0.class_count() {
            let term = f.mul(&a[i], &f.conj(&b[i]));
            acc = f.add(&acc, &f.scale(&term, t0.class_sizes()[i] as i64));
        }
        let n = f
            .as_int(&acc)
            .ok_or_else(|| Error::NotComputable("inner product not integral".into()))?;
        if n % t0.order() as i64 != 0 {
            return Err(Error::NotComputable(
                "inner product not divisible by the subgroup order".into(),
            ));
        }
        Ok(n / t0.order() as i64)
    };
    let mut matrix = Vec::with_capacity(t1.class_count());
    for i in 0..t1.class_count() {
        let mut row = Vec::with_capacity(t0.class_count());
        for j in 0..t0.class_count() {
            let m = sub_inner(&restricted[i], &embedded[j])?;
            if m < 0 {
                return Err(Error::NotComputable(
                    "negative induction multiplicity".into(),
                ));
            }
            row.push(m);
        }
        matrix.push(row);
    }
    let out = InductionMatrix { matrix };
    // column dimension identity: Σ_i m_ij deg_i = [H1:H0] deg_j
    let index = (t1.order() / t0.order()) as i64;
    for j in 0..t0.class_count() {
        let total: i64 = (0..t1.class_count())
            .map(|i| out.matrix[i][j] * t1.degrees()[i] as i64)
            .sum();
        if total != index * t0.degrees()[j] as i64 {
            return Err(Error::NotComputable(
                "column dimension identity failed".into(),
            ));
        }
    }
    Ok(out)
}

/// Explicit induced-character route, the independent side of the
/// reciprocity check: `(Ind χ)(g) = |H0|^{-1} Σ_{x ∈ H1} χ°(x^{-1} g x)`,
/// decomposed over the parent's classes.
pub fn induction_matrix_via_induced(h1: &PermGroup, h0: &Subgroup) -> Result<InductionMatrix> {
    let t1 = character_table(h1)?;
    let t0 = character_table(h0.group())?;
    let elems = h1.elements()?;
    let classes = h1.conjugacy_classes()?;
    let sub_elems = h0.group().elements()?;
    let sub_classes = h0.group().conjugacy_classes()?;
    let f = t1.field();
    let mut matrix = vec![vec![0i64; t0.class_count()]; t1.class_count()];
    for j in 0..t0.class_count() {
        // induced character values on each parent class
        let ind: Vec<CycVal> = classes
            .classes
            .iter()
            .map(|c| {
                let g = elems.get(c.rep);
                let mut acc = f.zero();
                for xi in 0..elems.len() {
                    let x = elems.get(xi);
                    let conj = x.inverse().compose(g).compose(x);
                    if let Some(si) = sub_elems.index_of(&conj) {
                        let sc = sub_classes.class_of[si];
                        let v = f.embed_from(t0.field(), t0.value(j, sc));
                        acc = f.add(&acc, &v);
                    }
                }
                // divide by |H0| exactly
                let h0_order = sub_elems.len() as i64;
                let divided: Vec<i64> = acc
                    .iter()
                    .map(|&c| {
                        assert!(c % h0_order == 0, "induced character not integral");
                        c / h0_order
                    })
                    .collect();
                divided
            })
            .collect();
        for (i, row) in matrix.iter_mut().enumerate() {
            row[j] = t1.inner_product(&ind, t1.row(i))?;
        }
    }
    Ok(InductionMatrix { matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn trivial_group_table() {
        let t = character_table(&PermGroup::trivial(1)).unwrap();
        assert_eq!(t.class_count(), 1);
        assert_eq!(t.degrees(), &[1]);
        assert_eq!(t.field().as_int(t.value(0, 0)), Some(1));
    }

    #[test]
    fn z2_table() {
        let t = character_table(&PermGroup::cyclic(2)).unwrap();
        assert_eq!(t.degrees(), &[1, 1]);
        let vals: Vec<Vec<i64>> = (0..2)
            .map(|i| {
                (0..2)
                    .map(|c| t.field().as_int(t.value(i, c)).unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(vals, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn s3_table_degrees_and_orthogonality() {
        let t = character_table(&PermGroup::symmetric(3)).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        // verify() already ran inside character_table
        let sq: u64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sq, 6);
    }

    #[test]
    fn tables_for_battery_pass_verification() {
        for g in [
            PermGroup::cyclic(5),
            PermGroup::cyclic(6),
            PermGroup::dihedral(4),
            PermGroup::dihedral(5),
            PermGroup::symmetric(4),
            PermGroup::direct_product(&PermGroup::cyclic(2), &PermGroup::cyclic(4)),
        ] {
            let t = character_table(&g).unwrap();
            assert_eq!(t.class_count(), g.class_count().unwrap());
        }
    }

    #[test]
    fn quaternion_like_wreath_table() {
        // the wreath Z/2 wr Z/2 has the D4 table shape: degrees 1,1,1,1,2
        let w = PermGroup::wreath(&PermGroup::cyclic(2), &PermGroup::cyclic(2)).unwrap();
        let t = character_table(&w).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
    }

    #[test]
    fn induction_from_trivial_subgroup_is_regular() {
        let g = PermGroup::cyclic(2);
        let triv = Subgroup::trivial(&g).unwrap();
        let m = induction_matrix(&g, &triv).unwrap();
        assert_eq!(m.matrix, vec![vec![1], vec![1]]);
    }

    #[test]
    fn induction_identity_when_equal() {
        let g = PermGroup::symmetric(3);
        let whole = g.as_subgroup().unwrap();
        let m = induction_matrix(&g, &whole).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.matrix[i][j], i64::from(i == j));
            }
        }
    }

    #[test]
    fn induction_z2_to_s3() {
        // inducing the trivial character of <(0 1)> gives trivial + 2-dim,
        // column (1, 0, 1) in the degree order (1, 1, 2)
        let g = PermGroup::symmetric(3);
        let h = Subgroup::new(&g, vec![Perm::from_cycle(3, &[0, 1]).unwrap()]).unwrap();
        let m = induction_matrix(&g, &h).unwrap();
        // find the column of the trivial character of H: it is the one whose
        // restriction pairs to (1,0,1); the H table has degrees (1,1) with
        // the trivial character first by value-lex order
        let col0: Vec<i64> = (0..3).map(|i| m.matrix[i][0]).collect();
        assert_eq!(col0, vec![1, 0, 1]);
    }

    #[test]
    fn reciprocity_against_explicit_induced_characters() {
        let g = PermGroup::dihedral(4);
        for (sub_gens, _) in [
            (vec![Perm::from_cycle(4, &[0, 1, 2, 3]).unwrap()], "rot"),
            (vec![Perm::from_images(vec![0, 3, 2, 1]).unwrap()], "refl"),
        ] {
            let h = Subgroup::new(&g, sub_gens).unwrap();
            let a = induction_matrix(&g, &h).unwrap();
            let b = induction_matrix_via_induced(&g, &h).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn induction_is_transitive() {
        // 1 <= <r^2> <= <r> <= D4: step products equal the long jump
        let g = PermGroup::dihedral(4);
        let r = Perm::from_cycle(4, &[0, 1, 2, 3]).unwrap();
        let r2 = r.compose(&r);
        let h_mid = Subgroup::new(&g, vec![r.clone()]).unwrap(); // Z/4
        let mid_group = h_mid.group().clone();
        let h_low_in_mid = Subgroup::new(&mid_group, vec![r2.clone()]).unwrap(); // Z/2 inside Z/4
        let h_low_in_g = Subgroup::new(&g, vec![r2]).unwrap();

        let up = induction_matrix(&g, &h_mid).unwrap(); // Z/4 -> D4
        let low = induction_matrix(&mid_group, &h_low_in_mid).unwrap(); // Z/2 -> Z/4
        let long = induction_matrix(&g, &h_low_in_g).unwrap(); // Z/2 -> D4

        let rows = up.rows();
        let mid = up.cols();
        let cols = low.cols();
        for i in 0..rows {
            for j in 0..cols {
                let composed: i64 = (0..mid).map(|k| up.matrix[i][k] * low.matrix[k][j]).sum();
                assert_eq!(composed, long.matrix[i][j], "at ({i},{j})");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = PermGroup::symmetric(7); // order 5040 > 500
        assert!(matches!(
            character_table(&g),
            Err(Error::CapExceeded { .. })
        ));
    }
}
