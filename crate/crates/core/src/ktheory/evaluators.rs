//! The orbit-sum evaluators: every closed formula is a direct sum over
//! G-orbits of finite subsets F of Z, with inner sums over labelling
//! functions on F. A label is either "point type" (contributing through the
//! class count of the stabilizer) or "line type" (contributing through the
//! rank of equivariant Euclidean K-theory).

use std::collections::BTreeMap;

use serde_json::json;

use crate::abgrp::{kunneth, kunneth_power, Ab, GradedAb, Supernatural};
use crate::error::{Error, Result};
use crate::karoubi;
use crate::perm::orbits::{self, OrbitEntry, SubsetOrbits};
use crate::perm::{realize, GSetSpec, PermGroup, PointLabel, RealizedGSet, SetAction, Subgroup};

use super::report::{KReport, Term, Truncation};

/// Window type: finite multiplicities for the omega pieces, by piece index.
pub type Window = BTreeMap<usize, u64>;

/// Shared scan state: the realized window and its subset orbits.
pub struct OrbitScan {
    pub z: RealizedGSet,
    pub subsets: SubsetOrbits,
}

pub fn scan_subsets(
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    max_size: usize,
) -> Result<OrbitScan> {
    let z = realize(group, gset, window)?;
    let subsets = orbits::subset_orbits(group, &z, max_size)?;
    Ok(OrbitScan { z, subsets })
}

fn label_list(z: &RealizedGSet, points: &[usize]) -> String {
    let labels: Vec<String> = points.iter().map(|&p| z.label(p).to_string()).collect();
    format!("[{}]", labels.join(","))
}

fn letters_list(letters: &[u8]) -> String {
    let parts: Vec<String> = letters.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn truncation(scan: &OrbitScan, max_size: usize, window: Option<&Window>) -> Truncation {
    Truncation {
        complete: scan.subsets.complete,
        max_subset_size: Some(max_size),
        window: window.cloned(),
    }
}

/// The class-count convention `K_*(C*_r(H)) = (Z^{c(H)}, 0)` for finite H.
fn group_ktheory(h: &Subgroup) -> Result<GradedAb> {
    Ok(GradedAb::free_even(h.class_count()?))
}

/// One term of the label-sum: the K-theory of
/// `(C^{b0} ⊕ C_0(R)^{b1})^{⊗F} ⋊ G_S`-type summands. `line_points` is the
/// subset of F carrying line labels; empty means a plain group-algebra term.
fn label_term(
    group: &PermGroup,
    z: &RealizedGSet,
    stab: &Subgroup,
    line_points: &[usize],
) -> Result<GradedAb> {
    if line_points.is_empty() {
        group_ktheory(stab)
    } else {
        let act = SetAction::restricted(group, stab, z, line_points)?;
        Ok(karoubi::euclidean_rank(stab.group(), &act)?.graded())
    }
}

/// The common evaluator behind the Cantor, Fibonacci, circle, rotation (via
/// pairs), finite-dimensional and free-wreath formulas:
///
/// `⊕_{[F] ∈ G\FIN(Z)} ⊕_{[S] ∈ G_F\{1..b0+b1}^F}  K(term(S))`,
///
/// where letters `1..=b0` are point type and `b0+1..=b0+b1` are line type.
#[allow(clippy::too_many_arguments)]
pub fn jb_orbit_sum(
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    max_size: usize,
    b0: u64,
    b1: u64,
    loc: Option<&Supernatural>,
    formula: &str,
    params: serde_json::Value,
) -> Result<KReport> {
    let scan = scan_subsets(group, gset, window, max_size)?;
    let alphabet = b0 + b1;
    let mut terms = Vec::new();
    for entry in &scan.subsets.entries {
        let f = &entry.rep;
        if f.is_empty() {
            let mut value = group_ktheory(&entry.stabilizer)?;
            if let Some(n) = loc {
                value = value.localize(n);
            }
            terms.push(Term {
                key: "F=[];S=[]".to_string(),
                value,
            });
            continue;
        }
        if alphabet == 0 {
            // no labels: nonempty subsets contribute nothing
            continue;
        }
        let act = SetAction::restricted(group, &entry.stabilizer, &scan.z, f)?;
        let funcs = orbits::function_orbits(&entry.stabilizer, &act, alphabet)?;
        let computed: Vec<Result<(String, GradedAb)>> =
            crate::exec::map_slice(&funcs, |fo: &OrbitEntry<Vec<u8>>| {
                let line_points: Vec<usize> = fo
                    .rep
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| u64::from(v) > b0)
                    .map(|(i, _)| f[i])
                    .collect();
                let mut value = label_term(group, &scan.z, &fo.stabilizer, &line_points)?;
                if let Some(n) = loc {
                    value = value.localize(n);
                }
                let key = format!(
                    "F={};S={}",
                    label_list(&scan.z, f),
                    letters_list(&fo.rep)
                );
                Ok((key, value))
            });
        for item in computed {
            let (key, value) = item?;
            terms.push(Term { key, value });
        }
    }
    Ok(KReport::new(
        formula,
        params,
        truncation(&scan, max_size, window),
        terms,
    ))
}

/// First Cantor formula: `K(C({0..N}^Z) ⋊ G)` as an orbit sum of group
/// algebra terms over labelling functions.
pub fn cantor_orbit_form(
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    n_labels: u64,
    max_size: usize,
) -> Result<KReport> {
    if n_labels < 1 {
        return Err(Error::InvalidInput("cantor requires N >= 1".into()));
    }
    jb_orbit_sum(
        group,
        gset,
        window,
        max_size,
        n_labels,
        0,
        None,
        "cantor_orbit",
        json!({ "n": n_labels }),
    )
}

/// Compact-type Bernoulli shifts (Fibonacci algebra, unitized compacts):
/// `K(C*_r(G)) ⊕ ⊕_{[F] nonempty} K(C*_r(G_F))`. Coincides with the Cantor
/// formula at N = 1.
pub fn fibonacci_like(
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    max_size: usize,
) -> Result<KReport> {
    jb_orbit_sum(
        group,
        gset,
        window,
        max_size,
        1,
        0,
        None,
        "fibonacci",
        json!({}),
    )
}

/// Circle-algebra shifts: every nonempty orbit contributes the equivariant
/// Euclidean K-theory of the stabilizer acting on F.
pub fn circle(
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    max_size: usize,
) -> Result<KReport> {
    jb_orbit_sum(group, gset, window, max_size, 0, 1, None, "circle", json!({}))
}

/// Finite-dimensional coefficients `⊕_j M_{k_j}` with `gcd = n`: the Cantor
/// sum localized at n. Requires an infinite G-set; the single-block case
/// `N = 0` is exact with no truncation.
pub fn finite_dim(
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    blocks: &[u64],
    max_size: usize,
) -> Result<KReport> {
    if blocks.is_empty() || blocks.iter().any(|&k| k == 0) {
        return Err(Error::InvalidInput(
            "block sizes must be positive integers".into(),
        ));
    }
    if !gset.is_infinite() {
        return Err(Error::ZNotInfinite);
    }
    let n = blocks.iter().copied().fold(0u64, num_integer::gcd);
    let loc = Supernatural::from_natural(n)?;
    let n_labels = blocks.len() as u64 - 1;
    if n_labels == 0 {
        let whole = group.as_subgroup()?;
        let value = group_ktheory(&whole)?.localize(&loc);
        return Ok(KReport::new(
            "finite_dim",
            json!({ "k": blocks, "n": n }),
            Truncation::exact(),
            vec![Term {
                key: "total".to_string(),
                value,
            }],
        ));
    }
    jb_orbit_sum(
        group,
        gset,
        window,
        max_size,
        n_labels,
        0,
        Some(&loc),
        "finite_dim",
        json!({ "k": blocks, "n": n }),
    )
}

/// Rotation-algebra shifts: nonempty orbits expand over disjoint ordered
/// pairs `(X1, X2) ⊆ F`; the empty pair contributes the group algebra of
/// G_F, other pairs the Euclidean term on `X1 ⊔ X2`.
pub fn rotation(
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    max_size: usize,
) -> Result<KReport> {
    let scan = scan_subsets(group, gset, window, max_size)?;
    let mut terms = Vec::new();
    for entry in &scan.subsets.entries {
        let f = &entry.rep;
        if f.is_empty() {
            terms.push(Term {
                key: "F=[];X1=[];X2=[]".to_string(),
                value: group_ktheory(&entry.stabilizer)?,
            });
            continue;
        }
        let act = SetAction::restricted(group, &entry.stabilizer, &scan.z, f)?;
        let pairs = orbits::disjoint_pair_orbits(&entry.stabilizer, &act)?;
        let computed: Vec<Result<(String, GradedAb)>> =
            crate::exec::map_slice(&pairs, |po| {
                let x1: Vec<usize> = po.rep.x1.iter().map(|&i| f[i]).collect();
                let x2: Vec<usize> = po.rep.x2.iter().map(|&i| f[i]).collect();
                let mut x12 = x1.clone();
                x12.extend(&x2);
                x12.sort_unstable();
                let value = label_term(group, &scan.z, &po.stabilizer, &x12)?;
                let key = format!(
                    "F={};X1={};X2={}",
                    label_list(&scan.z, f),
                    label_list(&scan.z, &x1),
                    label_list(&scan.z, &x2)
                );
                Ok((key, value))
            });
        for item in computed {
            let (key, value) = item?;
            terms.push(Term { key, value });
        }
    }
    Ok(KReport::new(
        "rotation",
        json!({}),
        truncation(&scan, max_size, window),
        terms,
    ))
}

/// Wreath product with finite base group H: the Cantor sum with
/// `N = c(H) - 1` labels over the regular G-set.
pub fn wreath_finite(h: &PermGroup, group: &PermGroup, max_size: usize) -> Result<KReport> {
    let n_labels = h.class_count()? as u64 - 1;
    let gset = GSetSpec::regular(group)?;
    jb_orbit_sum(
        group,
        &gset,
        None,
        max_size,
        n_labels,
        0,
        None,
        "wreath_finite",
        json!({ "base_classes": n_labels + 1 }),
    )
}

/// Wreath product with free base `F_n`: labels are all line type, so each
/// function orbit contributes the Euclidean term of its stabilizer on F.
pub fn wreath_free(
    rank: u64,
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    max_size: usize,
) -> Result<KReport> {
    if rank < 1 {
        return Err(Error::InvalidInput("free rank must be >= 1".into()));
    }
    jb_orbit_sum(
        group,
        gset,
        window,
        max_size,
        0,
        rank,
        None,
        "wreath_free",
        json!({ "rank": rank }),
    )
}

/// Symbolic orbit data for torsion-free G: the caller supplies
/// `K(C*_r(G))` and the count of orbits of each subset size.
#[derive(Debug, Clone)]
pub struct SymbolicOrbits {
    pub group_k: GradedAb,
    /// (subset size, number of orbits of that size)
    pub orbit_counts: Vec<(u32, u64)>,
}

/// Free-base wreath over symbolic torsion-free data: each orbit of size f
/// contributes `n^f` copies of Z in degree `f mod 2`.
pub fn wreath_free_symbolic(rank: u64, data: &SymbolicOrbits) -> Result<KReport> {
    let mut terms = vec![Term {
        key: "C*r(G)".to_string(),
        value: data.group_k.clone(),
    }];
    for &(size, count) in &data.orbit_counts {
        if size == 0 || count == 0 {
            continue;
        }
        let copies = rank
            .checked_pow(size)
            .and_then(|c| c.checked_mul(count))
            .ok_or_else(|| Error::InvalidInput("orbit contribution overflows".into()))?;
        let value = if size % 2 == 0 {
            GradedAb::new(Ab::free(copies as usize), Ab::zero())
        } else {
            GradedAb::new(Ab::zero(), Ab::free(copies as usize))
        };
        terms.push(Term {
            key: format!("|F|={size} x{count}"),
            value,
        });
    }
    Ok(KReport::new(
        "wreath_free_symbolic",
        json!({ "rank": rank }),
        Truncation {
            complete: false,
            max_subset_size: None,
            window: None,
        },
        terms,
    ))
}

/// Coefficient algebra for the localized evaluator.
#[derive(Debug, Clone)]
pub enum CoefficientAlgebra {
    /// `K(B) = (Z^{b0}, Z^{b1})`
    FreeB { b0: u64, b1: u64 },
    /// arbitrary finitely generated `K(B)`
    CustomB { k: GradedAb },
}

/// Localized orbit sum `⊕_{[F]} K(B^{⊗F} ⋊ G_F)[1/n]`. Free coefficients go
/// through the Euclidean-term engine; custom coefficients with torsion are
/// evaluated by iterated Künneth and require trivial stabilizers on every
/// enumerated nonempty orbit.
pub fn localized_uct(
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    max_size: usize,
    b: &CoefficientAlgebra,
    n: &Supernatural,
) -> Result<KReport> {
    match b {
        CoefficientAlgebra::FreeB { b0, b1 } => jb_orbit_sum(
            group,
            gset,
            window,
            max_size,
            *b0,
            *b1,
            Some(n),
            "localized_uct",
            json!({ "b": { "free": [b0, b1] }, "localize": n.to_string() }),
        ),
        CoefficientAlgebra::CustomB { k } => {
            let plain_free = k.deg0.torsion_summands().is_empty()
                && k.deg1.torsion_summands().is_empty()
                && k.deg0.free_summands().iter().all(|s| s.is_empty())
                && k.deg1.free_summands().iter().all(|s| s.is_empty());
            if plain_free {
                return localized_uct(
                    group,
                    gset,
                    window,
                    max_size,
                    &CoefficientAlgebra::FreeB {
                        b0: k.deg0.rank() as u64,
                        b1: k.deg1.rank() as u64,
                    },
                    n,
                );
            }
            let scan = scan_subsets(group, gset, window, max_size)?;
            let mut terms = Vec::new();
            for entry in &scan.subsets.entries {
                let f = &entry.rep;
                let value = if f.is_empty() {
                    group_ktheory(&entry.stabilizer)?
                } else if entry.stabilizer.order()? == 1 {
                    kunneth_power(k, f.len())
                } else {
                    return Err(Error::NotComputable(format!(
                        "orbit F={} has nontrivial stabilizer; crossed products \
                         of torsion coefficients by finite groups have no closed form",
                        label_list(&scan.z, f)
                    )));
                };
                terms.push(Term {
                    key: format!("F={}", label_list(&scan.z, f)),
                    value: value.localize(n),
                });
            }
            Ok(KReport::new(
                "localized_uct",
                json!({ "b": "custom", "localize": n.to_string() }),
                truncation(&scan, max_size, window),
                terms,
            ))
        }
    }
}

/// Second Cantor formula, over the regular G-set only: indexed by conjugacy
/// classes of subgroups C, with X running over N_C-orbits of finite coset
/// sets whose realized union has setwise stabilizer exactly C, and inner
/// labelling functions modulo C.
pub fn cantor_conjugacy_form(group: &PermGroup, n_labels: u64) -> Result<KReport> {
    if n_labels < 1 {
        return Err(Error::InvalidInput("cantor requires N >= 1".into()));
    }
    let elems = group.elements()?;
    let order = elems.len();
    let whole = group.as_subgroup()?;
    let mut terms = vec![Term {
        key: "C*r(G)".to_string(),
        value: group_ktheory(&whole)?,
    }];

    let classes = group.subgroup_classes()?;
    for (ci, (c_sub, _size)) in classes.iter().enumerate() {
        let c_members: Vec<usize> = crate::perm::subgroup_element_ids(group, c_sub)?;
        let index = order / c_members.len();
        if index as u32 >= 28 {
            return Err(Error::CapExceeded {
                what: "conjugacy-form coset subsets",
                cap: 1 << 28,
            });
        }
        // right cosets Cg in BFS order from the identity coset
        let mut coset_of = vec![usize::MAX; order];
        let mut coset_members: Vec<Vec<usize>> = Vec::new();
        for &m in &c_members {
            coset_of[m] = 0;
        }
        coset_members.push(c_members.clone());
        let mut reps = vec![0usize];
        let mut cursor = 0;
        while cursor < reps.len() {
            let r = reps[cursor];
            cursor += 1;
            for g in group.generators() {
                let moved = elems.index_of(&elems.get(r).compose(g)).unwrap();
                if coset_of[moved] == usize::MAX {
                    let id = coset_members.len();
                    let members: Vec<usize> = c_members
                        .iter()
                        .map(|&cm| elems.index_of(&elems.get(cm).compose(elems.get(moved))).unwrap())
                        .collect();
                    for &m in &members {
                        coset_of[m] = id;
                    }
                    coset_members.push(members);
                    reps.push(moved);
                }
            }
        }
        let n_cosets = coset_members.len();

        // normalizer of C acting on the cosets by left multiplication
        let normalizer = group.normalizer(c_sub)?;
        let norm_ids = crate::perm::subgroup_element_ids(group, &normalizer)?;
        let coset_action: Vec<Vec<usize>> = norm_ids
            .iter()
            .map(|&ni| {
                (0..n_cosets)
                    .map(|c| {
                        let moved = elems
                            .index_of(&elems.get(ni).compose(elems.get(reps[c])))
                            .unwrap();
                        coset_of[moved]
                    })
                    .collect()
            })
            .collect();

        // left-translation stabilizer of a set of group elements
        let stab_of_point_set = |points: &[usize]| -> Vec<usize> {
            let sorted: Vec<usize> = {
                let mut v = points.to_vec();
                v.sort_unstable();
                v
            };
            (0..order)
                .filter(|&gi| {
                    let mut moved: Vec<usize> = points
                        .iter()
                        .map(|&x| elems.index_of(&elems.get(gi).compose(elems.get(x))).unwrap())
                        .collect();
                    moved.sort_unstable();
                    moved == sorted
                })
                .collect()
        };

        // nonempty subsets X of the coset space with stab(C·X) exactly C,
        // up to the normalizer action
        let c_sorted: Vec<usize> = {
            let mut v = c_members.clone();
            v.sort_unstable();
            v
        };
        let mut seen = std::collections::BTreeSet::new();
        for mask in 1u64..(1u64 << n_cosets) {
            let x: Vec<usize> = (0..n_cosets).filter(|&c| mask >> c & 1 == 1).collect();
            let canon: Vec<usize> = (0..norm_ids.len())
                .map(|ni| {
                    let mut moved: Vec<usize> =
                        x.iter().map(|&c| coset_action[ni][c]).collect();
                    moved.sort_unstable();
                    moved
                })
                .min()
                .unwrap();
            if canon != x || !seen.insert(canon) {
                continue;
            }
            let union: Vec<usize> = x
                .iter()
                .flat_map(|&c| coset_members[c].iter().copied())
                .collect();
            let stab = stab_of_point_set(&union);
            if stab != c_sorted {
                continue;
            }
            // labelling functions on the realized union modulo C
            let sorted_union: Vec<usize> = {
                let mut v = union.clone();
                v.sort_unstable();
                v
            };
            let maps: Vec<Vec<usize>> = c_members
                .iter()
                .map(|&cm| {
                    sorted_union
                        .iter()
                        .map(|&x0| {
                            let moved = elems
                                .index_of(&elems.get(cm).compose(elems.get(x0)))
                                .unwrap();
                            sorted_union.binary_search(&moved).unwrap()
                        })
                        .collect()
                })
                .collect();
            let act = SetAction::from_parts(sorted_union.len(), maps);
            let funcs = orbits::function_orbits(c_sub, &act, n_labels)?;
            for fo in funcs {
                let key = format!(
                    "C#{ci};X=[{}];S={}",
                    x.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    letters_list(&fo.rep)
                );
                terms.push(Term {
                    key,
                    value: group_ktheory(&fo.stabilizer)?,
                });
            }
        }
    }
    Ok(KReport::new(
        "cantor_conjugacy",
        json!({ "n": n_labels }),
        Truncation::exact(),
        terms,
    ))
}

/// Self-check helper: the Cantor orbit form over the full regular window.
pub fn cantor_full_regular(group: &PermGroup, n_labels: u64) -> Result<KReport> {
    let gset = GSetSpec::regular(group)?;
    let size = group.order()? as usize;
    cantor_orbit_form(group, &gset, None, n_labels, size)
}

/// Independent oracle for the regular Cantor value: enumerate the points of
/// `{0..N}^G` directly as labelling functions on the whole of G, sum class
/// counts of their stabilizers. Exercised by tests and the self-test
/// battery; does not touch the subset-orbit path.
pub fn cantor_point_oracle(group: &PermGroup, n_labels: u64) -> Result<usize> {
    let elems = group.elements()?;
    let order = elems.len();
    let whole = group.as_subgroup()?;
    // left translation on the element list
    let maps: Vec<Vec<usize>> = (0..order)
        .map(|gi| {
            (0..order)
                .map(|x| {
                    elems
                        .index_of(&elems.get(gi).compose(elems.get(x)))
                        .unwrap()
                })
                .collect()
        })
        .collect();
    let act = SetAction::from_parts(order, maps);
    let funcs = orbits::function_orbits(&whole, &act, n_labels + 1)?;
    let mut rank = 0usize;
    for fo in &funcs {
        rank += fo.stabilizer.class_count()?;
    }
    Ok(rank)
}

/// Evaluated `K(O_n)` for the `C ⊕ O_n` coefficient algebra.
pub fn cuntz_k(n: u64) -> GradedAb {
    GradedAb::new(Ab::cyclic(n - 1), Ab::zero())
}

/// The `C ⊕ O_n` evaluator: nonempty orbits with trivial stabilizer expand
/// by Künneth into `K(O_n) ⊗ (Z,Z)^{⊗(|F|-1)}`; nontrivial stabilizers have
/// no closed form and raise `NotComputable`.
pub fn one_plus_on(
    n: u64,
    group: &PermGroup,
    gset: &GSetSpec,
    window: Option<&Window>,
    max_size: usize,
) -> Result<KReport> {
    if n < 2 {
        return Err(Error::InvalidInput("Cuntz index must be >= 2".into()));
    }
    let scan = scan_subsets(group, gset, window, max_size)?;
    let zz = GradedAb::new(Ab::free(1), Ab::free(1));
    let mut terms = Vec::new();
    for entry in &scan.subsets.entries {
        let f = &entry.rep;
        let value = if f.is_empty() {
            group_ktheory(&entry.stabilizer)?
        } else if entry.stabilizer.order()? == 1 {
            kunneth(&cuntz_k(n), &kunneth_power(&zz, f.len() - 1))
        } else {
            return Err(Error::NotComputable(format!(
                "orbit F={} has nontrivial stabilizer; K(O_{n}^{{⊗F}} ⋊ H) \
                 for nontrivial finite H is not covered by a closed formula",
                label_list(&scan.z, f)
            )));
        };
        terms.push(Term {
            key: format!("F={}", label_list(&scan.z, f)),
            value,
        });
    }
    Ok(KReport::new(
        "cuntz_one_plus_on",
        json!({ "n": n }),
        truncation(&scan, max_size, window),
        terms,
    ))
}
