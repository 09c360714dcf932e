//! Non-negative unimodular matrices from the subtractive Euclidean
//! algorithm, and the classification of unital embedding multiplicities
//! `C^{N+1} -> ⊕ M_{k_j}` that induce K-theory isomorphisms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The two elementary letters: `A = [[1,1],[0,1]]`, `B = [[1,0],[1,1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

/// A word over {A, B}, run-length encoded.
///
/// Words of up to ~10^6 letters arise for inputs near 10^6, so runs are the
/// unit of storage; the expanded letter sequence is the exact subtractive
/// Euclid trace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ABWord {
    runs: Vec<(Letter, u64)>,
}

impl ABWord {
    pub fn runs(&self) -> &[(Letter, u64)] {
        &self.runs
    }

    pub fn len(&self) -> u64 {
        self.runs.iter().map(|&(_, n)| n).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Evaluates the word to its 2x2 matrix.
    pub fn matrix(&self) -> NonnegUnimodular {
        // A^a = [[1,a],[0,1]], B^b = [[1,0],[b,1]]
        let mut m = [
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ];
        for &(letter, count) in &self.runs {
            let c = BigInt::from(count);
            match letter {
                Letter::A => {
                    // right-multiply by A^a: col1 += a * col0
                    let r0 = &m[0][1] + &m[0][0] * &c;
                    let r1 = &m[1][1] + &m[1][0] * &c;
                    m[0][1] = r0;
                    m[1][1] = r1;
                }
                Letter::B => {
                    // right-multiply by B^b: col0 += b * col1
                    let r0 = &m[0][0] + &m[0][1] * &c;
                    let r1 = &m[1][0] + &m[1][1] * &c;
                    m[0][0] = r0;
                    m[1][0] = r1;
                }
            }
        }
        NonnegUnimodular::from_entries(2, vec![m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone()])
    }
}

impl fmt::Display for ABWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "(empty)");
        }
        for &(letter, count) in &self.runs {
            let c = match letter {
                Letter::A => 'A',
                Letter::B => 'B',
            };
            if count == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{count}")?;
            }
        }
        Ok(())
    }
}

/// A square integer matrix with non-negative entries and determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegUnimodular {
    n: usize,
    entries: Vec<BigInt>,
    det: i8,
}

impl NonnegUnimodular {
    fn from_entries(n: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), n * n);
        assert!(
            entries.iter().all(|e| !e.is_negative()),
            "entries must be non-negative"
        );
        let det = bareiss_det(n, &entries);
        let det = if det == BigInt::one() {
            1i8
        } else if det == -BigInt::one() {
            -1i8
        } else {
            panic!("determinant {det} is not ±1");
        };
        NonnegUnimodular { n, entries, det }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        NonnegUnimodular::from_entries(n, entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn det(&self) -> i8 {
        self.det
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn mul(&self, other: &NonnegUnimodular) -> NonnegUnimodular {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                if self.entry(i, k).is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += self.entry(i, k) * other.entry(k, j);
                }
            }
        }
        NonnegUnimodular::from_entries(n, entries)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j) * &v[j]).sum())
            .collect()
    }

    /// Right-multiplication by the swap matrix `[[0,1],[1,0]]`.
    fn swap_columns(&self) -> NonnegUnimodular {
        assert_eq!(self.n, 2);
        NonnegUnimodular::from_entries(
            2,
            vec![
                self.entry(0, 1).clone(),
                self.entry(0, 0).clone(),
                self.entry(1, 1).clone(),
                self.entry(1, 0).clone(),
            ],
        )
    }

    /// Embeds the 2x2 matrix as a diagonal block at rows/cols (i, i+1) of an
    /// identity of size n.
    fn embed_block(&self, n: usize, i: usize) -> NonnegUnimodular {
        assert_eq!(self.n, 2);
        let mut entries = vec![BigInt::zero(); n * n];
        for d in 0..n {
            entries[d * n + d] = BigInt::one();
        }
        for (r, c, v) in [
            (i, i, self.entry(0, 0)),
            (i, i + 1, self.entry(0, 1)),
            (i + 1, i, self.entry(1, 0)),
            (i + 1, i + 1, self.entry(1, 1)),
        ] {
            entries[r * n + c] = v.clone();
        }
        NonnegUnimodular::from_entries(n, entries)
    }
}

impl fmt::Display for NonnegUnimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Fraction-free determinant (Bareiss).
fn bareiss_det(n: usize, entries: &[BigInt]) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| entries[i * n..(i + 1) * n].to_vec())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// The exact subtractive-Euclid trace from `(k1, k2)` down to `(n, n)`,
/// with run lengths computed in bulk by division.
fn euclid_word_runs(k1: u64, k2: u64) -> Vec<(Letter, u64)> {
    assert!(k1 >= 1 && k2 >= 1);
    let mut runs = Vec::new();
    let (mut a, mut b) = (k1, k2);
    while a != b {
        if a > b {
            // subtract b from a until a <= b, never crossing below b
            let q = if a % b == 0 { a / b - 1 } else { a / b };
            runs.push((Letter::A, q));
            a -= q * b;
        } else {
            let q = if b % a == 0 { b / a - 1 } else { b / a };
            runs.push((Letter::B, q));
            b -= q * a;
        }
    }
    runs
}

/// The unique non-negative `X ∈ SL(2,Z)` with `X (n,n)^T = (k1,k2)^T`,
/// `n = gcd(k1,k2)`, together with its A/B factorization word.
pub fn euclid_matrix(k1: u64, k2: u64) -> (NonnegUnimodular, ABWord) {
    let word = ABWord {
        runs: euclid_word_runs(k1, k2),
    };
    let x = word.matrix();
    let n = BigInt::from(num_integer::gcd(k1, k2));
    debug_assert_eq!(
        x.apply(&[n.clone(), n]),
        vec![BigInt::from(k1), BigInt::from(k2)]
    );
    debug_assert_eq!(x.det(), 1);
    (x, word)
}

/// Both non-negative `GL(2,Z)` solutions: the SL one and its column swap.
pub fn gl2_solutions(k1: u64, k2: u64) -> (NonnegUnimodular, NonnegUnimodular) {
    let (x0, _) = euclid_matrix(k1, k2);
    let x1 = x0.swap_columns();
    (x0, x1)
}

/// A non-negative `X ∈ SL(N+1,Z)` with `X (n,...,n)^T = (k_0,...,k_N)^T`,
/// built by the prefix-gcd induction: 2x2 blocks from [`euclid_matrix`]
/// placed at consecutive positions, then the recursive solution for the
/// first N entries on top.
pub fn slnz_matrix(k: &[u64]) -> NonnegUnimodular {
    assert!(!k.is_empty() && k.iter().all(|&v| v >= 1));
    let dim = k.len();
    if dim == 1 {
        return NonnegUnimodular::identity(1);
    }
    let head = &k[..dim - 1];
    let l = head.iter().copied().fold(0u64, num_integer::gcd);
    let n = num_integer::gcd(l, k[dim - 1]);
    // X_0 (n,n)^T = (l,n)^T placed at positions 1..N-1; X_N (n,n)^T = (l,k_N)^T
    let (x0, _) = euclid_matrix(l, n);
    let (xn, _) = euclid_matrix(l, k[dim - 1]);
    // product Y_N * ... * Y_1 (Y_1 applied first), Y_i with its block at
    // 0-based rows (i-1, i)
    let mut prod = NonnegUnimodular::identity(dim);
    for i in 0..dim - 2 {
        prod = x0.embed_block(dim, i).mul(&prod);
    }
    prod = xn.embed_block(dim, dim - 2).mul(&prod);
    let tilde = slnz_matrix(head);
    let mut top = vec![BigInt::zero(); dim * dim];
    for i in 0..dim - 1 {
        for j in 0..dim - 1 {
            top[i * dim + j] = tilde.entry(i, j).clone();
        }
    }
    top[(dim - 1) * dim + (dim - 1)] = BigInt::one();
    let y = NonnegUnimodular::from_entries(dim, top);
    let result = y.mul(&prod);
    let nv: Vec<BigInt> = vec![BigInt::from(n); dim];
    let kv: Vec<BigInt> = k.iter().map(|&v| BigInt::from(v)).collect();
    assert_eq!(result.apply(&nv), kv, "construction must map (n,..,n) to k");
    assert_eq!(result.det(), 1);
    result
}

/// Classification of the unital embedding multiplicities for coprime block
/// sizes: the SL matrix always, plus both GL matrices in the 2x2 case where
/// there are exactly two up to unitary equivalence.
#[derive(Debug, Clone)]
pub struct EmbeddingClassification {
    pub sl: NonnegUnimodular,
    /// Present exactly when `k` has two entries.
    pub gl_pair: Option<(NonnegUnimodular, NonnegUnimodular)>,
}

/// The multiplicity matrix of a unital embedding `C^{N+1} -> ⊕_j M_{k_j}`
/// inducing a K-theory isomorphism. Requires `gcd(k) = 1`.
pub fn embedding_multiplicities(k: &[u64]) -> Result<EmbeddingClassification> {
    let g = k.iter().copied().fold(0u64, num_integer::gcd);
    if g != 1 {
        return Err(Error::GcdNotOne(g));
    }
    let sl = slnz_matrix(k);
    let gl_pair = if k.len() == 2 {
        Some(gl2_solutions(k[0], k[1]))
    } else {
        None
    };
    Ok(EmbeddingClassification { sl, gl_pair })
}

/// Brute-force search for non-negative integer matrices with `|det| = 1`
/// mapping `(n,n)` to `(k1,k2)`, rows constrained by the row-sum identity.
/// Test oracle for the uniqueness assertions; only sensible for small k.
pub fn gl2_brute_force(k1: u64, k2: u64) -> Vec<(NonnegUnimodular, i8)> {
    let n = num_integer::gcd(k1, k2);
    let (r1, r2) = (k1 / n, k2 / n);
    let mut found = Vec::new();
    for a in 0..=r1 {
        let b = r1 - a;
        for c in 0..=r2 {
            let d = r2 - c;
            let det = a as i128 * d as i128 - b as i128 * c as i128;
            if det == 1 || det == -1 {
                let m = NonnegUnimodular::from_entries(
                    2,
                    vec![a, b, c, d].into_iter().map(BigInt::from).collect(),
                );
                found.push((m, det as i8));
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nn(n: u64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn equal_inputs_give_identity_and_empty_word() {
        for k in [1, 2, 7] {
            let (x, w) = euclid_matrix(k, k);
            assert!(w.is_empty());
            assert_eq!(x, NonnegUnimodular::identity(2));
        }
    }

    #[test]
    fn three_two_is_ab() {
        let (x, w) = euclid_matrix(3, 2);
        assert_eq!(format!("{w}"), "AB");
        assert_eq!(
            x.entries(),
            &[nn(2), nn(1), nn(1), nn(1)]
        );
        assert_eq!(x.apply(&[nn(1), nn(1)]), vec![nn(3), nn(2)]);
        assert_eq!(x.det(), 1);
    }

    #[test]
    fn five_three_is_aba() {
        let (x, w) = euclid_matrix(5, 3);
        assert_eq!(format!("{w}"), "ABA");
        assert_eq!(x.entries(), &[nn(2), nn(3), nn(1), nn(2)]);
    }

    #[test]
    fn word_evaluation_reproduces_matrix() {
        for (k1, k2) in [(3u64, 2u64), (5, 3), (12, 8), (1, 9), (1000003, 999983)] {
            let (x, w) = euclid_matrix(k1, k2);
            assert_eq!(w.matrix(), x);
        }
    }

    #[test]
    fn gl2_pair_examples() {
        let (x0, x1) = gl2_solutions(1, 1);
        assert_eq!(x0, NonnegUnimodular::identity(2));
        assert_eq!(x1.entries(), &[nn(0), nn(1), nn(1), nn(0)]);
        let (x0, x1) = gl2_solutions(3, 2);
        assert_eq!(x0.entries(), &[nn(2), nn(1), nn(1), nn(1)]);
        assert_eq!(x1.entries(), &[nn(1), nn(2), nn(1), nn(1)]);
        assert_eq!(x0.det(), 1);
        assert_eq!(x1.det(), -1);
    }

    #[test]
    fn brute_force_confirms_exactly_two_small() {
        for k1 in 1..=12u64 {
            for k2 in 1..=12u64 {
                let found = gl2_brute_force(k1, k2);
                assert_eq!(found.len(), 2, "({k1},{k2})");
                let (x0, x1) = gl2_solutions(k1, k2);
                let sl = found.iter().find(|(_, d)| *d == 1).unwrap();
                let gl = found.iter().find(|(_, d)| *d == -1).unwrap();
                assert_eq!(sl.0, x0);
                assert_eq!(gl.0, x1);
            }
        }
    }

    #[test]
    fn slnz_base_cases() {
        assert_eq!(slnz_matrix(&[5]), NonnegUnimodular::identity(1));
        let (x, _) = euclid_matrix(3, 2);
        assert_eq!(slnz_matrix(&[3, 2]), x);
    }

    #[test]
    fn slnz_2_3_4() {
        let x = slnz_matrix(&[2, 3, 4]);
        assert_eq!(x.dim(), 3);
        assert_eq!(x.det(), 1);
        assert_eq!(
            x.apply(&[nn(1), nn(1), nn(1)]),
            vec![nn(2), nn(3), nn(4)]
        );
    }

    #[test]
    fn slnz_random_tuples_verify() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let len = rng.gen_range(1..=5usize);
            let k: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=500u64)).collect();
            let n = k.iter().copied().fold(0, num_integer::gcd);
            let x = slnz_matrix(&k);
            let nv: Vec<BigInt> = vec![nn(n); len];
            let kv: Vec<BigInt> = k.iter().map(|&v| nn(v)).collect();
            assert_eq!(x.apply(&nv), kv);
        }
    }

    #[test]
    fn embedding_requires_coprime() {
        assert_eq!(
            embedding_multiplicities(&[2, 4]).unwrap_err(),
            Error::GcdNotOne(2)
        );
        let c = embedding_multiplicities(&[1, 1, 1]).unwrap();
        assert_eq!(c.sl, NonnegUnimodular::identity(3));
        assert!(c.gl_pair.is_none());
        let c = embedding_multiplicities(&[3, 2]).unwrap();
        assert!(c.gl_pair.is_some());
    }

    #[test]
    fn unique_sl_solution_for_1_5() {
        let found = gl2_brute_force(1, 5);
        let sls: Vec<_> = found.iter().filter(|(_, d)| *d == 1).collect();
        assert_eq!(sls.len(), 1);
        assert_eq!(sls[0].0, embedding_multiplicities(&[1, 5]).unwrap().sl);
    }

    #[test]
    fn word_trace_is_injective_on_coprime_pairs() {
        let mut words = std::collections::BTreeSet::new();
        let mut count = 0usize;
        for k1 in 1..=30u64 {
            for k2 in 1..=30u64 {
                if num_integer::gcd(k1, k2) == 1 {
                    words.insert(euclid_matrix(k1, k2).1);
                    count += 1;
                }
            }
        }
        assert_eq!(words.len(), count);
    }

    #[test]
    fn big_inputs_stay_exact() {
        let (x, w) = euclid_matrix(1_000_000, 999_999);
        assert_eq!(x.apply(&[nn(1), nn(1)]), vec![nn(1_000_000), nn(999_999)]);
        assert!(w.len() >= 2);
    }
}
