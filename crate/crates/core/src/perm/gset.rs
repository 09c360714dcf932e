//! Countable G-sets presented as finite lists of transitive pieces and their
//! finite realizations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::group::PermGroup;
use super::perm::Perm;
use super::subgroup::Subgroup;

/// Multiplicity of a transitive piece: a finite count or countably many.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Omega,
}

/// One transitive piece `G/H` with a multiplicity.
#[derive(Debug, Clone)]
pub struct GSetPiece {
    pub stabilizer: Subgroup,
    pub multiplicity: Multiplicity,
}

/// A countable G-set as a finite list of transitive pieces.
///
/// `Z = G` with left translation is the spec with one piece (trivial
/// stabilizer, multiplicity 1).
#[derive(Debug, Clone)]
pub struct GSetSpec {
    pub pieces: Vec<GSetPiece>,
}

impl GSetSpec {
    /// The regular G-set: one copy of G acting on itself by left translation.
    pub fn regular(group: &PermGroup) -> Result<Self> {
        Ok(GSetSpec {
            pieces: vec![GSetPiece {
                stabilizer: Subgroup::trivial(group)?,
                multiplicity: Multiplicity::Finite(1),
            }],
        })
    }

    pub fn is_infinite(&self) -> bool {
        self.pieces
            .iter()
            .any(|p| p.multiplicity == Multiplicity::Omega)
    }

    /// Total number of realized points under the given window.
    pub fn realized_size(&self, window: Option<&BTreeMap<usize, u64>>) -> Result<u64> {
        let mut total = 0u64;
        for (i, piece) in self.pieces.iter().enumerate() {
            let copies = match piece.multiplicity {
                Multiplicity::Finite(m) => m,
                Multiplicity::Omega => *window
                    .and_then(|w| w.get(&i))
                    .ok_or(Error::WindowRequired)?,
            };
            total += copies * piece.stabilizer.index_in_parent()?;
        }
        Ok(total)
    }
}

/// Stable label of a realized point: piece index, copy index, coset index
/// (cosets in BFS order from the identity coset).
///
/// Labels never renumber when a window is enlarged, which keeps orbit keys
/// stable across truncations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointLabel {
    pub piece: usize,
    pub copy: u64,
    pub coset: usize,
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.piece, self.copy, self.coset)
    }
}

/// A finite realization of a [`GSetSpec`]: labelled points plus the action
/// of every group element.
#[derive(Debug, Clone)]
pub struct RealizedGSet {
    labels: Vec<PointLabel>,
    /// `action[element_index][point] -> point`
    action: Vec<Vec<usize>>,
    /// true when the spec had no omega piece (so the realization is all of Z)
    spec_finite: bool,
}

impl RealizedGSet {
    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[PointLabel] {
        &self.labels
    }

    pub fn label(&self, point: usize) -> PointLabel {
        self.labels[point]
    }

    /// Whether the realization covers the whole G-set.
    pub fn covers_spec(&self) -> bool {
        self.spec_finite
    }

    #[inline]
    pub fn apply(&self, element_index: usize, point: usize) -> usize {
        self.action[element_index][point]
    }

    /// The permutation of realized points induced by the group element with
    /// the given index.
    pub fn element_images(&self, element_index: usize) -> &[usize] {
        &self.action[element_index]
    }
}

/// Realizes the windowed G-set: every omega multiplicity must have a window
/// entry; finite multiplicities are realized in full.
pub fn realize(
    group: &PermGroup,
    spec: &GSetSpec,
    window: Option<&BTreeMap<usize, u64>>,
) -> Result<RealizedGSet> {
    let elems = group.elements()?;
    let mut labels: Vec<PointLabel> = Vec::new();
    // per point: index of the coset-representative element
    let mut point_rep: Vec<usize> = Vec::new();
    // per piece: map element index -> coset index
    let mut piece_coset_of: Vec<Vec<usize>> = Vec::new();
    let mut piece_offsets: Vec<Vec<usize>> = Vec::new(); // [piece][copy] -> first point

    for (pi, piece) in spec.pieces.iter().enumerate() {
        if let Some(w) = window {
            if w.contains_key(&pi) && piece.multiplicity != Multiplicity::Omega {
                return Err(Error::InvalidInput(format!(
                    "window entry for piece {pi} which has finite multiplicity"
                )));
            }
        }
        let copies = match piece.multiplicity {
            Multiplicity::Finite(m) => m,
            Multiplicity::Omega => *window
                .and_then(|w| w.get(&pi))
                .ok_or(Error::WindowRequired)?,
        };
        piece.stabilizer.check_parent(group)?;
        let h_elems = piece.stabilizer.group().elements()?;
        // BFS coset enumeration: reps of left cosets gH
        let mut coset_of = vec![usize::MAX; elems.len()];
        let mut reps: Vec<usize> = Vec::new();
        for h in h_elems.list() {
            coset_of[elems.index_of(h).expect("subgroup members lie in parent")] = 0;
        }
        reps.push(0); // identity represents the coset H
        let mut cursor = 0;
        while cursor < reps.len() {
            let r = reps[cursor];
            cursor += 1;
            for g in group.generators() {
                let moved = g.compose(elems.get(r));
                let mi = elems.index_of(&moved).unwrap();
                if coset_of[mi] == usize::MAX {
                    let c = reps.len();
                    for h in h_elems.list() {
                        let member = moved.compose(h);
                        coset_of[elems.index_of(&member).unwrap()] = c;
                    }
                    reps.push(mi);
                }
            }
        }
        let mut offsets = Vec::new();
        for copy in 0..copies {
            offsets.push(labels.len());
            for (c, &r) in reps.iter().enumerate() {
                labels.push(PointLabel {
                    piece: pi,
                    copy,
                    coset: c,
                });
                point_rep.push(r);
            }
        }
        piece_coset_of.push(coset_of);
        piece_offsets.push(offsets);
    }

    let n_points = labels.len();
    let action = crate::exec::map_range(elems.len(), |gi| {
        let g = elems.get(gi);
        let mut row = vec![0usize; n_points];
        for (pt, lab) in labels.iter().enumerate() {
            let moved = g.compose(elems.get(point_rep[pt]));
            let coset = piece_coset_of[lab.piece][elems.index_of(&moved).unwrap()];
            row[pt] = piece_offsets[lab.piece][lab.copy as usize] + coset;
        }
        row
    });

    Ok(RealizedGSet {
        labels,
        action,
        spec_finite: !spec.is_infinite(),
    })
}

/// JSON form of a G-set spec. `"regular"` is shorthand for one
/// trivial-stabilizer piece of multiplicity 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GSetJson {
    Shorthand(String),
    Pieces { pieces: Vec<GSetPieceJson> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GSetPieceJson {
    pub stabilizer: Vec<Vec<usize>>,
    pub multiplicity: MultiplicityJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultiplicityJson {
    Finite(u64),
    Omega(String),
}

impl GSetJson {
    pub fn to_spec(&self, group: &PermGroup) -> Result<GSetSpec> {
        match self {
            GSetJson::Shorthand(s) if s == "regular" => GSetSpec::regular(group),
            GSetJson::Shorthand(s) => Err(Error::InvalidInput(format!(
                "unknown G-set shorthand {s:?}, expected \"regular\""
            ))),
            GSetJson::Pieces { pieces } => {
                let mut out = Vec::new();
                for p in pieces {
                    let gens = p
                        .stabilizer
                        .iter()
                        .map(|im| Perm::from_images(im.clone()))
                        .collect::<Result<Vec<_>>>()?;
                    let multiplicity = match &p.multiplicity {
                        MultiplicityJson::Finite(m) if *m >= 1 => Multiplicity::Finite(*m),
                        MultiplicityJson::Finite(_) => {
                            return Err(Error::InvalidInput(
                                "piece multiplicity must be positive".into(),
                            ))
                        }
                        MultiplicityJson::Omega(s) if s == "omega" => Multiplicity::Omega,
                        MultiplicityJson::Omega(s) => {
                            return Err(Error::InvalidInput(format!(
                                "unknown multiplicity {s:?}, expected a number or \"omega\""
                            )))
                        }
                    };
                    out.push(GSetPiece {
                        stabilizer: Subgroup::new(group, gens)?,
                        multiplicity,
                    });
                }
                Ok(GSetSpec { pieces: out })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_set_of_z3() {
        let g = PermGroup::cyclic(3);
        let spec = GSetSpec::regular(&g).unwrap();
        assert!(!spec.is_infinite());
        let z = realize(&g, &spec, None).unwrap();
        assert_eq!(z.point_count(), 3);
        assert!(z.covers_spec());
        // the action of the rotation generator cycles the cosets
        let elems = g.elements().unwrap();
        let rot = elems
            .index_of(&Perm::from_cycle(3, &[0, 1, 2]).unwrap())
            .unwrap();
        let images = z.element_images(rot);
        let mut seen: Vec<usize> = images.to_vec();
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2]);
        assert_ne!(images, &[0, 1, 2]);
    }

    #[test]
    fn omega_requires_window() {
        let g = PermGroup::cyclic(2);
        let spec = GSetSpec {
            pieces: vec![GSetPiece {
                stabilizer: Subgroup::trivial(&g).unwrap(),
                multiplicity: Multiplicity::Omega,
            }],
        };
        assert!(spec.is_infinite());
        assert_eq!(realize(&g, &spec, None).unwrap_err(), Error::WindowRequired);
        let window: BTreeMap<usize, u64> = [(0usize, 2u64)].into_iter().collect();
        let z = realize(&g, &spec, Some(&window)).unwrap();
        assert_eq!(z.point_count(), 4);
        assert!(!z.covers_spec());
    }

    #[test]
    fn coset_piece_realization() {
        // S_3 acting on cosets of <(0 1)>: 3 points
        let g = PermGroup::symmetric(3);
        let h = Subgroup::new(&g, vec![Perm::from_cycle(3, &[0, 1]).unwrap()]).unwrap();
        let spec = GSetSpec {
            pieces: vec![GSetPiece {
                stabilizer: h,
                multiplicity: Multiplicity::Finite(1),
            }],
        };
        let z = realize(&g, &spec, None).unwrap();
        assert_eq!(z.point_count(), 3);
        // every element acts by permuting the 3 cosets
        let elems = g.elements().unwrap();
        for gi in 0..elems.len() {
            let mut im: Vec<usize> = z.element_images(gi).to_vec();
            im.sort();
            assert_eq!(im, vec![0, 1, 2]);
        }
    }

    #[test]
    fn labels_stable_under_window_growth() {
        let g = PermGroup::cyclic(2);
        let spec = GSetSpec {
            pieces: vec![GSetPiece {
                stabilizer: Subgroup::trivial(&g).unwrap(),
                multiplicity: Multiplicity::Omega,
            }],
        };
        let w1: BTreeMap<usize, u64> = [(0usize, 1u64)].into_iter().collect();
        let w2: BTreeMap<usize, u64> = [(0usize, 3u64)].into_iter().collect();
        let z1 = realize(&g, &spec, Some(&w1)).unwrap();
        let z2 = realize(&g, &spec, Some(&w2)).unwrap();
        assert_eq!(z1.labels(), &z2.labels()[..z1.point_count()]);
    }
}
