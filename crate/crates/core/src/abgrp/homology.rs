//! Colimits, coinvariants and pushouts of presented modules, all reduced to
//! cokernels of integer relation matrices via Smith normal form.
//!
//! Presentations list the free generators of a value first, then one
//! generator per torsion summand, both in canonical order. Arrow matrices
//! are written against these generator lists (rows = target, cols = source).

use super::ab::{Ab, GradedAb, PrimeSet};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A finite diagram of graded modules with one integer matrix per degree on
/// each arrow.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub objects: Vec<GradedAb>,
    pub arrows: Vec<Arrow>,
}

#[derive(Debug, Clone)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub map0: IntMatrix,
    pub map1: IntMatrix,
}

/// Common scalar ring of a family of values: all free summands must carry
/// one inversion set (torsion primes inside it are legal; localization will
/// delete them again).
fn common_inversion_set<'a>(values: impl IntoIterator<Item = &'a Ab>) -> Result<PrimeSet> {
    let mut agreed: Option<PrimeSet> = None;
    for v in values {
        let s = v.uniform_inversion_set()?;
        if v.rank() == 0 {
            continue;
        }
        match &agreed {
            None => agreed = Some(s),
            Some(t) if *t == s => {}
            Some(_) => {
                return Err(Error::ShapeMismatch(
                    "free summands carry different inversion sets".into(),
                ))
            }
        }
    }
    Ok(agreed.unwrap_or_default())
}

/// Torsion relation columns of one value, embedded at `offset` in a total
/// generator list of length `total`.
fn torsion_columns(value: &Ab, offset: usize, total: usize) -> Vec<Vec<i128>> {
    let free = value.rank();
    value
        .torsion_summands()
        .iter()
        .enumerate()
        .map(|(t, &(p, k))| {
            let mut col = vec![0i128; total];
            col[offset + free + t] = (p as i128).pow(k);
            col
        })
        .collect()
}

fn degree_maps(arrow: &Arrow, deg: usize) -> &IntMatrix {
    if deg == 0 {
        &arrow.map0
    } else {
        &arrow.map1
    }
}

/// Colimit of a finite diagram: per degree, the cokernel of
/// `⊕_{a: x→y} V_x → ⊕_obj V_obj`, `v ↦ a(v) − v`, over the presentations.
pub fn colimit(diagram: &Diagram) -> Result<GradedAb> {
    let mut out = [Ab::zero(), Ab::zero()];
    for deg in 0..2 {
        let values: Vec<&Ab> = diagram.objects.iter().map(|o| o.by_degree(deg)).collect();
        let set = common_inversion_set(values.iter().copied())?;
        let mut offsets = Vec::with_capacity(values.len());
        let mut total = 0usize;
        for v in &values {
            offsets.push(total);
            total += v.generator_count();
        }
        let mut columns: Vec<Vec<i128>> = Vec::new();
        for (i, v) in values.iter().enumerate() {
            columns.extend(torsion_columns(v, offsets[i], total));
        }
        for arrow in &diagram.arrows {
            let m = degree_maps(arrow, deg);
            let src = values
                .get(arrow.src)
                .ok_or_else(|| Error::ShapeMismatch("arrow source out of range".into()))?;
            let dst = values
                .get(arrow.dst)
                .ok_or_else(|| Error::ShapeMismatch("arrow target out of range".into()))?;
            if m.cols() != src.generator_count() || m.rows() != dst.generator_count() {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {}→{} degree {deg} matrix is {}x{}, expected {}x{}",
                    arrow.src,
                    arrow.dst,
                    m.rows(),
                    m.cols(),
                    dst.generator_count(),
                    src.generator_count()
                )));
            }
            for s in 0..m.cols() {
                let mut col = vec![0i128; total];
                for r in 0..m.rows() {
                    col[offsets[arrow.dst] + r] += m[(r, s)];
                }
                col[offsets[arrow.src] + s] -= 1;
                columns.push(col);
            }
        }
        let relations = columns_matrix(total, columns);
        out[deg] = Ab::cokernel(&relations, &set);
    }
    let [deg0, deg1] = out;
    Ok(GradedAb { deg0, deg1 })
}

fn columns_matrix(rows: usize, columns: Vec<Vec<i128>>) -> IntMatrix {
    let mut m = IntMatrix::zero(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

/// Coinvariants `L_G = L / ⟨x − g·x⟩` of a module under a group action given
/// by one matrix per group generator (square, sized by the generator count
/// of the presentation).
pub fn coinvariants(value: &Ab, action: &[IntMatrix]) -> Result<Ab> {
    let set = value.uniform_inversion_set()?;
    let n = value.generator_count();
    let mut columns: Vec<Vec<i128>> = torsion_columns(value, 0, n);
    for m in action {
        if m.rows() != n || m.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "action matrix is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        for s in 0..n {
            let mut col = vec![0i128; n];
            for r in 0..n {
                col[r] += m[(r, s)];
            }
            col[s] -= 1;
            columns.push(col);
        }
    }
    Ok(Ab::cokernel(&columns_matrix(n, columns), &set))
}

/// Graded coinvariants: the action matrices apply degreewise.
pub fn coinvariants_graded(value: &GradedAb, action0: &[IntMatrix], action1: &[IntMatrix]) -> Result<GradedAb> {
    Ok(GradedAb {
        deg0: coinvariants(&value.deg0, action0)?,
        deg1: coinvariants(&value.deg1, action1)?,
    })
}

/// A pushout square `B ← A → C` with per-degree matrices for f: A→B and
/// g: A→C.
#[derive(Debug, Clone)]
pub struct PushoutSquare {
    pub a: GradedAb,
    pub b: GradedAb,
    pub c: GradedAb,
    pub f0: IntMatrix,
    pub f1: IntMatrix,
    pub g0: IntMatrix,
    pub g1: IntMatrix,
}

/// Pushout of `B ← A → C`: per degree the cokernel of
/// `(f, −g): A → B ⊕ C` presented over the targets.
pub fn pushout(square: &PushoutSquare) -> Result<GradedAb> {
    let mut out = [Ab::zero(), Ab::zero()];
    for deg in 0..2 {
        let (a, b, c) = (
            square.a.by_degree(deg),
            square.b.by_degree(deg),
            square.c.by_degree(deg),
        );
        let (f, g) = if deg == 0 {
            (&square.f0, &square.g0)
        } else {
            (&square.f1, &square.g1)
        };
        if f.cols() != a.generator_count()
            || g.cols() != a.generator_count()
            || f.rows() != b.generator_count()
            || g.rows() != c.generator_count()
        {
            return Err(Error::ShapeMismatch(
                "pushout maps do not match the corner presentations".into(),
            ));
        }
        let set = common_inversion_set([b, c])?;
        // A's ring must map into the common target ring
        let a_set = a.uniform_inversion_set()?;
        if a.rank() > 0 && !a_set.is_subset(&set) {
            return Err(Error::ShapeMismatch(
                "source ring does not map into the target ring".into(),
            ));
        }
        let nb = b.generator_count();
        let nc = c.generator_count();
        let total = nb + nc;
        let mut columns: Vec<Vec<i128>> = torsion_columns(b, 0, total);
        columns.extend(torsion_columns(c, nb, total));
        for s in 0..a.generator_count() {
            let mut col = vec![0i128; total];
            for r in 0..nb {
                col[r] += f[(r, s)];
            }
            for r in 0..nc {
                col[nb + r] -= g[(r, s)];
            }
            columns.push(col);
        }
        out[deg] = Ab::cokernel(&columns_matrix(total, columns), &set);
    }
    let [deg0, deg1] = out;
    Ok(GradedAb { deg0, deg1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id_matrix(n: usize) -> IntMatrix {
        IntMatrix::identity(n)
    }

    #[test]
    fn single_object_no_arrows() {
        let v = GradedAb::new(Ab::free(2).direct_sum(&Ab::cyclic(4)), Ab::cyclic(3));
        let d = Diagram {
            objects: vec![v.clone()],
            arrows: vec![],
        };
        assert_eq!(colimit(&d).unwrap(), v);
    }

    #[test]
    fn terminal_object_absorbs() {
        // two objects, one arrow x -> t with an isomorphism:
        // colimit = value at t
        let x = GradedAb::new(Ab::free(1), Ab::zero());
        let t = GradedAb::new(Ab::free(1), Ab::zero());
        let d = Diagram {
            objects: vec![x, t.clone()],
            arrows: vec![Arrow {
                src: 0,
                dst: 1,
                map0: id_matrix(1),
                map1: IntMatrix::zero(0, 0),
            }],
        };
        assert_eq!(colimit(&d).unwrap(), t);
    }

    #[test]
    fn parallel_arrows_coequalize() {
        // Z ⇉ Z with ×2 and identity: relation 2x = x, so everything dies
        let z = GradedAb::new(Ab::free(1), Ab::zero());
        let two = IntMatrix::from_rows(vec![vec![2]]).unwrap();
        let d = Diagram {
            objects: vec![z.clone(), z],
            arrows: vec![
                Arrow {
                    src: 0,
                    dst: 1,
                    map0: two,
                    map1: IntMatrix::zero(0, 0),
                },
                Arrow {
                    src: 0,
                    dst: 1,
                    map0: id_matrix(1),
                    map1: IntMatrix::zero(0, 0),
                },
            ],
        };
        assert!(colimit(&d).unwrap().is_zero());
    }

    #[test]
    fn coinvariants_trivial_action() {
        let v = Ab::free(2).direct_sum(&Ab::cyclic(8));
        let id = id_matrix(3);
        assert_eq!(coinvariants(&v, &[id]).unwrap(), v);
    }

    #[test]
    fn coinvariants_swap_on_z2() {
        let v = Ab::free(2);
        let swap = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(coinvariants(&v, &[swap]).unwrap(), Ab::free(1));
    }

    #[test]
    fn coinvariants_negation_on_z() {
        let v = Ab::free(1);
        let neg = IntMatrix::from_rows(vec![vec![-1]]).unwrap();
        assert_eq!(coinvariants(&v, &[neg]).unwrap(), Ab::cyclic(2));
    }

    #[test]
    fn pushout_from_zero_source() {
        let b = GradedAb::new(Ab::free(1), Ab::cyclic(2));
        let c = GradedAb::new(Ab::cyclic(3), Ab::free(2));
        let sq = PushoutSquare {
            a: GradedAb::zero(),
            b: b.clone(),
            c: c.clone(),
            f0: IntMatrix::zero(1, 0),
            f1: IntMatrix::zero(1, 0),
            g0: IntMatrix::zero(1, 0),
            g1: IntMatrix::zero(2, 0),
        };
        assert_eq!(pushout(&sq).unwrap(), b.direct_sum(&c));
    }

    #[test]
    fn pushout_of_identities_returns_the_object() {
        let a = GradedAb::new(Ab::free(2), Ab::cyclic(4));
        let sq = PushoutSquare {
            a: a.clone(),
            b: a.clone(),
            c: a.clone(),
            f0: id_matrix(2),
            f1: id_matrix(1),
            g0: id_matrix(2),
            g1: id_matrix(1),
        };
        assert_eq!(pushout(&sq).unwrap(), a);
    }

    #[test]
    fn pushout_of_one_and_two() {
        // Z ←(×1)− Z −(×2)→ Z has pushout Z (Smith of [1, −2])
        let z = GradedAb::new(Ab::free(1), Ab::zero());
        let sq = PushoutSquare {
            a: z.clone(),
            b: z.clone(),
            c: z.clone(),
            f0: id_matrix(1),
            f1: IntMatrix::zero(0, 0),
            g0: IntMatrix::from_rows(vec![vec![2]]).unwrap(),
            g1: IntMatrix::zero(0, 0),
        };
        assert_eq!(pushout(&sq).unwrap(), z);
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let plain = GradedAb::new(Ab::free(1), Ab::zero());
        let local = GradedAb::new(
            Ab::free_localized(1, &[2u64].into_iter().collect()),
            Ab::zero(),
        );
        let sq = PushoutSquare {
            a: plain.clone(),
            b: local,
            c: plain.clone(),
            f0: id_matrix(1),
            f1: IntMatrix::zero(0, 0),
            g0: id_matrix(1),
            g1: IntMatrix::zero(0, 0),
        };
        assert!(matches!(pushout(&sq), Err(Error::ShapeMismatch(_))));
    }
}
