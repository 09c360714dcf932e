//! Permutations of `{0, ..., degree-1}` stored as image tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of the points `0..degree`, stored by its image sequence.
///
/// `images[x]` is the image of the point `x`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n {
                return Err(Error::InvalidPerm(format!(
                    "image {y} out of range for degree {n}"
                )));
            }
            if seen[y] {
                return Err(Error::InvalidPerm(format!("image {y} repeated")));
            }
            seen[y] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds the cycle `(points[0] points[1] ...)` on `degree` points.
    pub fn from_cycle(degree: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for w in points.windows(2) {
            if w[0] >= degree || w[1] >= degree {
                return Err(Error::InvalidPerm("cycle point out of range".into()));
            }
            images[w[0]] = w[1];
        }
        if points.len() > 1 {
            images[points[points.len() - 1]] = points[0];
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Function composition: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Perm { images }
    }

    /// Conjugate `g^h = h g h^{-1}`.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        h.compose(self).compose(&h.inverse())
    }

    /// Multiplicative order of the permutation.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut ord = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Sign of the permutation: `+1` for even, `-1` for odd.
    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0usize;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
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
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation, fixed points omitted
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.images[x];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![2, 0]).is_err());
        assert!(Perm::from_images(vec![0, 1, 2]).is_ok());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::from_cycle(3, &[0, 1]).unwrap();
        let b = Perm::from_cycle(3, &[0, 1, 2]).unwrap();
        let ab = a.compose(&b);
        // b sends 0 -> 1, then a sends 1 -> 0
        assert_eq!(ab.apply(0), 0);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.apply(2), 1);
    }

    #[test]
    fn inverse_and_order() {
        let c = Perm::from_cycle(5, &[0, 1, 2, 3, 4]).unwrap();
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(c.order(), 5);
        let t = Perm::from_cycle(5, &[0, 1]).unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(t.sign(), -1);
        assert_eq!(c.sign(), 1);
    }

    #[test]
    fn cycle_display() {
        let c = Perm::from_cycle(4, &[0, 2, 1]).unwrap();
        assert_eq!(format!("{c}"), "(0 2 1)");
        assert_eq!(format!("{}", Perm::identity(3)), "()");
    }
}
