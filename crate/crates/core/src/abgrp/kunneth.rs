//! Künneth tensor/Tor calculus on graded modules, in the split form.

use super::ab::{Ab, GradedAb, PrimeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Summand {
    Free(PrimeSet),
    Torsion(u64, u32),
}

fn summands(a: &Ab) -> Vec<Summand> {
    a.free_summands()
        .iter()
        .cloned()
        .map(Summand::Free)
        .chain(
            a.torsion_summands()
                .iter()
                .map(|&(p, k)| Summand::Torsion(p, k)),
        )
        .collect()
}

/// `x ⊗ y` of two cyclic-ish summands: Z[1/S]⊗Z[1/T] = Z[1/S∪T],
/// Z[1/S]⊗Z/p^k vanishes iff p ∈ S, cross-prime products vanish.
fn tensor(x: &Summand, y: &Summand) -> Option<Summand> {
    match (x, y) {
        (Summand::Free(s), Summand::Free(t)) => {
            Some(Summand::Free(s.union(t).copied().collect()))
        }
        (Summand::Free(s), Summand::Torsion(p, k))
        | (Summand::Torsion(p, k), Summand::Free(s)) => {
            if s.contains(p) {
                None
            } else {
                Some(Summand::Torsion(*p, *k))
            }
        }
        (Summand::Torsion(p, a), Summand::Torsion(q, b)) => {
            if p == q {
                Some(Summand::Torsion(*p, (*a).min(*b)))
            } else {
                None
            }
        }
    }
}

/// `Tor(x, y)`: zero against any free summand, Z/p^min on matching primes.
fn tor(x: &Summand, y: &Summand) -> Option<Summand> {
    match (x, y) {
        (Summand::Torsion(p, a), Summand::Torsion(q, b)) if p == q => {
            Some(Summand::Torsion(*p, (*a).min(*b)))
        }
        _ => None,
    }
}

fn collect(parts: Vec<Summand>) -> Ab {
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for s in parts {
        match s {
            Summand::Free(set) => free.push(set),
            Summand::Torsion(p, k) => torsion.push((p, k)),
        }
    }
    Ab::from_parts(free, torsion).expect("summands are already canonical-ready")
}

fn tensor_ab(a: &Ab, b: &Ab) -> Ab {
    let mut parts = Vec::new();
    for x in summands(a) {
        for y in summands(b) {
            if let Some(s) = tensor(&x, &y) {
                parts.push(s);
            }
        }
    }
    collect(parts)
}

fn tor_ab(a: &Ab, b: &Ab) -> Ab {
    let mut parts = Vec::new();
    for x in summands(a) {
        for y in summands(b) {
            if let Some(s) = tor(&x, &y) {
                parts.push(s);
            }
        }
    }
    collect(parts)
}

/// Graded Künneth in the split form: degree n of the result is
/// `⊕_{i+j≡n} A_i ⊗ B_j  ⊕  ⊕_{i+j≡n+1} Tor(A_i, B_j)`.
///
/// The extension problem is resolved by always returning the split form;
/// results are only meaningful up to isomorphism.
pub fn kunneth(a: &GradedAb, b: &GradedAb) -> GradedAb {
    let mut deg = [Ab::zero(), Ab::zero()];
    for i in 0..2 {
        for j in 0..2 {
            let t = tensor_ab(a.by_degree(i), b.by_degree(j));
            deg[(i + j) % 2] = deg[(i + j) % 2].direct_sum(&t);
            let tr = tor_ab(a.by_degree(i), b.by_degree(j));
            deg[(i + j + 1) % 2] = deg[(i + j + 1) % 2].direct_sum(&tr);
        }
    }
    let [deg0, deg1] = deg;
    GradedAb { deg0, deg1 }
}

/// Iterated Künneth power `a^{⊗n}`; `n = 0` gives (Z, 0).
pub fn kunneth_power(a: &GradedAb, n: usize) -> GradedAb {
    let mut acc = GradedAb::new(Ab::free(1), Ab::zero());
    for _ in 0..n {
        acc = kunneth(&acc, a);
    }
    acc
}
