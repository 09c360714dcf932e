//! Finite permutation-group engine: element closure, conjugacy structure,
//! subgroup machinery, and orbit/stabilizer enumeration over points, subsets
//! and labelling functions.

mod action;
mod group;
mod gset;
#[allow(clippy::module_inception)]
mod perm;
mod subgroup;

pub mod orbits;

pub use action::{subgroup_element_ids, SetAction};
pub use group::{
    Classes, ConjClass, Elements, GroupJson, PermGroup, DEFAULT_CLOSURE_CAP, DEFAULT_SUBGROUP_CAP,
};
pub use gset::{
    realize, GSetJson, GSetPiece, GSetPieceJson, GSetSpec, Multiplicity, MultiplicityJson,
    PointLabel, RealizedGSet,
};
pub use perm::Perm;
pub use subgroup::Subgroup;
