//! Z/2-graded finitely generated modules over localizations of Z, in
//! canonical form.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{smith_normal_form, IntMatrix};
use super::supernatural::Supernatural;
use crate::error::{Error, Result};

/// A set of inverted primes; the empty set is the ring Z itself.
pub type PrimeSet = BTreeSet<u64>;

/// A finitely generated module over (localizations of) Z in canonical form:
/// a multiset of free summands `Z[1/S]` plus a primary torsion decomposition.
///
/// Summands carry their own inversion sets, so `Z ⊕ Z[1/2]` coexists in one
/// value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ab {
    /// Inversion sets of the free summands, sorted.
    free: Vec<PrimeSet>,
    /// Prime-power torsion summands (p, k) meaning Z/p^k, sorted by (p, k).
    torsion: Vec<(u64, u32)>,
}

impl Ab {
    pub fn zero() -> Self {
        Ab {
            free: Vec::new(),
            torsion: Vec::new(),
        }
    }

    /// Free of the given rank over Z.
    pub fn free(rank: usize) -> Self {
        Ab {
            free: vec![PrimeSet::new(); rank],
            torsion: Vec::new(),
        }
    }

    /// Free of the given rank over `Z[1/S]`.
    pub fn free_localized(rank: usize, set: &PrimeSet) -> Self {
        Ab {
            free: vec![set.clone(); rank],
            torsion: Vec::new(),
        }
    }

    /// A single cyclic summand Z/n, decomposed into prime powers. `n = 0`
    /// yields Z; `n = 1` yields the zero group.
    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            return Ab::free(1);
        }
        let mut torsion = Vec::new();
        let mut m = n;
        let mut p = 2u64;
        while p * p <= m {
            let mut k = 0u32;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            if k > 0 {
                torsion.push((p, k));
            }
            p += 1;
        }
        if m > 1 {
            torsion.push((m, 1));
        }
        Ab {
            free: Vec::new(),
            torsion,
        }
        .canonicalized()
    }

    pub fn from_parts(free: Vec<PrimeSet>, torsion: Vec<(u64, u32)>) -> Result<Self> {
        for &(p, k) in &torsion {
            if k == 0 {
                return Err(Error::InvalidInput("torsion exponent 0".into()));
            }
            if !crate::abgrp::is_prime(p) {
                return Err(Error::InvalidInput(format!(
                    "torsion base {p} is not prime"
                )));
            }
        }
        Ok(Ab { free, torsion }.canonicalized())
    }

    fn canonicalized(mut self) -> Self {
        self.free.sort();
        self.torsion.sort_unstable();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.free.len()
    }

    pub fn free_summands(&self) -> &[PrimeSet] {
        &self.free
    }

    pub fn torsion_summands(&self) -> &[(u64, u32)] {
        &self.torsion
    }

    /// Number of generators in the standard presentation (free then torsion).
    pub fn generator_count(&self) -> usize {
        self.free.len() + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &Ab) -> Ab {
        let mut free = self.free.clone();
        free.extend(other.free.iter().cloned());
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().copied());
        Ab { free, torsion }.canonicalized()
    }

    pub fn direct_sum_all<'a>(items: impl IntoIterator<Item = &'a Ab>) -> Ab {
        items
            .into_iter()
            .fold(Ab::zero(), |acc, x| acc.direct_sum(x))
    }

    /// Localization at a supernatural number: each free `Z[1/S]` becomes
    /// `Z[1/(S ∪ supp n)]`, torsion at supported primes is deleted.
    pub fn localize(&self, n: &Supernatural) -> Ab {
        let supp = n.support();
        self.localize_at_set(&supp)
    }

    pub fn localize_at_set(&self, supp: &PrimeSet) -> Ab {
        let free = self
            .free
            .iter()
            .map(|s| s.union(supp).copied().collect())
            .collect();
        let torsion = self
            .torsion
            .iter()
            .filter(|(p, _)| !supp.contains(p))
            .copied()
            .collect();
        Ab { free, torsion }.canonicalized()
    }

    /// The cokernel of an integer relation matrix over Z (rows = generators,
    /// columns = relations), then localized at `set`.
    pub fn cokernel(relations: &IntMatrix, set: &PrimeSet) -> Ab {
        let s = smith_normal_form(relations);
        let mut torsion: Vec<(u64, u32)> = Vec::new();
        let mut rank = relations.rows();
        for &d in &s.diag {
            match d {
                0 => {}
                _ => {
                    rank -= 1;
                    let mut m = d.unsigned_abs();
                    let mut p = 2u128;
                    while p * p <= m {
                        let mut k = 0u32;
                        while m % p == 0 {
                            m /= p;
                            k += 1;
                        }
                        if k > 0 {
                            torsion.push((p as u64, k));
                        }
                        p += 1;
                    }
                    if m > 1 {
                        torsion.push((m as u64, 1));
                    }
                }
            }
        }
        Ab {
            free: vec![PrimeSet::new(); rank],
            torsion,
        }
        .canonicalized()
        .localize_at_set(set)
    }

    /// The common inversion set of all free summands, or an error if the
    /// summands disagree (exact presentations need one scalar ring).
    pub fn uniform_inversion_set(&self) -> Result<PrimeSet> {
        let mut sets: Vec<&PrimeSet> = self.free.iter().collect();
        sets.dedup();
        match sets.len() {
            0 => Ok(PrimeSet::new()),
            1 => Ok(sets[0].clone()),
            _ => Err(Error::ShapeMismatch(
                "mixed inversion sets in one presentation".into(),
            )),
        }
    }
}

impl fmt::Display for Ab {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.free.len() {
            let set = &self.free[i];
            let mut count = 1;
            while i + count < self.free.len() && self.free[i + count] == *set {
                count += 1;
            }
            let base = if set.is_empty() {
                "Z".to_string()
            } else {
                let prod: u64 = set.iter().product();
                format!("Z[1/{prod}]")
            };
            parts.push(if count == 1 {
                base
            } else {
                format!("{base}^{count}")
            });
            i += count;
        }
        for &(p, k) in &self.torsion {
            parts.push(format!("Z/{}", (p as u128).pow(k)));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// A Z/2-graded module: K_0 in degree 0, K_1 in degree 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedAb {
    pub deg0: Ab,
    pub deg1: Ab,
}

impl GradedAb {
    pub fn zero() -> Self {
        GradedAb {
            deg0: Ab::zero(),
            deg1: Ab::zero(),
        }
    }

    pub fn new(deg0: Ab, deg1: Ab) -> Self {
        GradedAb { deg0, deg1 }
    }

    /// `(Z^r, 0)`, the K-theory of the group algebra of a finite group with
    /// r conjugacy classes.
    pub fn free_even(rank: usize) -> Self {
        GradedAb {
            deg0: Ab::free(rank),
            deg1: Ab::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.deg0.is_zero() && self.deg1.is_zero()
    }

    pub fn direct_sum(&self, other: &GradedAb) -> GradedAb {
        GradedAb {
            deg0: self.deg0.direct_sum(&other.deg0),
            deg1: self.deg1.direct_sum(&other.deg1),
        }
    }

    /// Degree shift (suspension): swaps the two components.
    pub fn shifted(&self) -> GradedAb {
        GradedAb {
            deg0: self.deg1.clone(),
            deg1: self.deg0.clone(),
        }
    }

    pub fn localize(&self, n: &Supernatural) -> GradedAb {
        GradedAb {
            deg0: self.deg0.localize(n),
            deg1: self.deg1.localize(n),
        }
    }

    pub fn by_degree(&self, deg: usize) -> &Ab {
        if deg % 2 == 0 {
            &self.deg0
        } else {
            &self.deg1
        }
    }
}

impl fmt::Display for GradedAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_0 = {}; K_1 = {}", self.deg0, self.deg1)
    }
}
