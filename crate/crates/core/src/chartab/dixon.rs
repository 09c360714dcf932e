//! Dixon's character-table algorithm: class-sum matrices diagonalized over a
//! prime field F_p with p ≡ 1 (mod exp(G)) and p > 2√|G|, lifted to exact
//! cyclotomic values via root-of-unity multiplicities.

use crate::error::{Error, Result};
use crate::perm::PermGroup;

use super::cyclotomic::{CycVal, Cyclotomic};

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Smallest prime p = r*m + 1 with p > 2√|G|.
fn find_field_prime(m: u64, order: u64) -> u64 {
    let bound = 2.0 * (order as f64).sqrt();
    let mut p = m + 1;
    loop {
        if (p as f64) > bound && crate::abgrp::is_prime(p) {
            return p;
        }
        p += m;
    }
}

/// An element of multiplicative order exactly m in F_p (exists since
/// m | p-1): z = g^{(p-1)/m} for a primitive root g.
fn find_order_m_element(m: u64, p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            factors.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    let g = (2..p)
        .find(|&c| factors.iter().all(|&q| mod_pow(c, (p - 1) / q, p) != 1))
        .expect("F_p has a primitive root");
    mod_pow(g, (p - 1) / m, p)
}

/// Raw Dixon output: everything needed to assemble exact character values.
pub(super) struct DixonData {
    pub order: u64,
    pub exponent: u64,
    pub prime: u64,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub inverse_class: Vec<usize>,
    /// character values mod p, rows = irreducibles (unsorted), cols = classes
    pub char_mod_p: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
    /// class of rep_i^j for 0 <= j < order(rep_i)
    pub power_class: Vec<Vec<usize>>,
    /// the chosen element of order `exponent` in F_p
    pub root: u64,
}

pub(super) fn dixon(group: &PermGroup) -> Result<DixonData> {
    let elems = group.elements()?;
    let classes = group.conjugacy_classes()?;
    let r = classes.classes.len();
    let order = elems.len() as u64;

    let class_sizes: Vec<u64> = classes.classes.iter().map(|c| c.size).collect();
    let class_orders: Vec<u64> = classes
        .classes
        .iter()
        .map(|c| elems.get(c.rep).order())
        .collect();
    let exponent = class_orders.iter().copied().fold(1, num_integer::lcm);
    let inverse_class: Vec<usize> = classes
        .classes
        .iter()
        .map(|c| classes.class_of[elems.inverse_of(c.rep)])
        .collect();
    let power_class: Vec<Vec<usize>> = classes
        .classes
        .iter()
        .map(|c| {
            let rep = elems.get(c.rep);
            let e = rep.order();
            let mut acc = crate::perm::Perm::identity(group.degree());
            let mut row = Vec::with_capacity(e as usize);
            for _ in 0..e {
                row.push(classes.class_of[elems.index_of(&acc).unwrap()]);
                acc = rep.compose(&acc);
            }
            row
        })
        .collect();

    let p = find_field_prime(exponent, order);
    let z = find_order_m_element(exponent, p);

    // class algebra constants: a[i][j][k] = #{(x,y) in C_i x C_j : xy = z_k}
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, cls) in classes.classes.iter().enumerate() {
        let zk = elems.get(cls.rep);
        for xi in 0..elems.len() {
            let i = classes.class_of[xi];
            let y = elems.get(elems.inverse_of(xi)).compose(zk);
            let j = classes.class_of[elems.index_of(&y).unwrap()];
            a[i][j][k] += 1;
        }
    }

    // split F_p^r into common eigenspaces of the class matrices
    // M_i[j][k] = a[i][j][k]
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(r)];
    for i in 1..r {
        let matrix: Vec<Vec<u64>> = (0..r)
            .map(|j| (0..r).map(|k| a[i][j][k] % p).collect())
            .collect();
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            next.extend(split_eigenspaces(&basis, &matrix, p));
        }
        spaces = next;
        if spaces.iter().all(|b| b.len() == 1) {
            break;
        }
    }
    if spaces.len() != r {
        return Err(Error::NotComputable(
            "class matrices failed to split into one-dimensional eigenspaces".into(),
        ));
    }

    // normalize each eigenvector to the central character and recover the
    // degree and the character values mod p
    let mut char_mod_p = Vec::with_capacity(r);
    let mut degrees = Vec::with_capacity(r);
    for basis in &spaces {
        let w = &basis[0];
        let w0 = w[0] % p;
        if w0 == 0 {
            return Err(Error::NotComputable(
                "eigenvector vanishes at the identity class".into(),
            ));
        }
        let scale = mod_inv(w0, p);
        let w: Vec<u64> = w.iter().map(|&x| x * scale % p).collect();
        // 1/d^2 = (sum_i w_i w_{i'} / h_i) / |G|
        let mut s = 0u64;
        for i in 0..r {
            let hi_inv = mod_inv(class_sizes[i] % p, p);
            s = (s + w[i] * w[inverse_class[i]] % p * hi_inv) % p;
        }
        let d2 = order % p * mod_inv(s, p) % p;
        // the true degree is < p/2, so exactly one square root qualifies
        let d = (1..p)
            .find(|&d| d * d % p == d2 && 2 * d < p)
            .ok_or_else(|| {
                Error::NotComputable("no degree square root below p/2".into())
            })?;
        let values: Vec<u64> = (0..r)
            .map(|i| d * w[i] % p * mod_inv(class_sizes[i] % p, p) % p)
            .collect();
        degrees.push(d);
        char_mod_p.push(values);
    }

    Ok(DixonData {
        order,
        exponent,
        prime: p,
        class_sizes,
        class_orders,
        inverse_class,
        char_mod_p,
        degrees,
        power_class,
        root: z,
    })
}

fn identity_basis(r: usize) -> Vec<Vec<u64>> {
    (0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()
}

/// Restriction of `matrix` to the span of `basis`, then a full eigenspace
/// split over F_p by scanning all eigenvalues.
fn split_eigenspaces(basis: &[Vec<u64>], matrix: &[Vec<u64>], p: u64) -> Vec<Vec<Vec<u64>>> {
    let s = basis.len();
    let r = basis[0].len();
    // images of the basis vectors
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|j| {
                    (0..r).fold(0u64, |acc, k| (acc + matrix[j][k] * b[k]) % p)
                })
                .collect()
        })
        .collect();
    // solve images[t] = sum_j c[j][t] basis[j] for the restricted matrix C
    let c = solve_in_basis(basis, &images, p);
    let mut out = Vec::new();
    for lambda in 0..p {
        // kernel of (C - lambda I) over F_p
        let mut m: Vec<Vec<u64>> = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| {
                        let v = c[i][j];
                        if i == j {
                            (v + p - lambda % p) % p
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let kernel = kernel_basis(&mut m, p);
        if kernel.is_empty() {
            continue;
        }
        let vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|coeffs| {
                (0..r)
                    .map(|j| {
                        (0..s).fold(0u64, |acc, t| (acc + coeffs[t] * basis[t][j]) % p)
                    })
                    .collect()
            })
            .collect();
        out.push(vectors);
    }
    out
}

/// Coefficients expressing each image in the given (independent) basis.
fn solve_in_basis(basis: &[Vec<u64>], images: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let s = basis.len();
    let r = basis[0].len();
    // build [basis^T | images^T] and eliminate
    let mut aug: Vec<Vec<u64>> = (0..r)
        .map(|j| {
            (0..s)
                .map(|t| basis[t][j])
                .chain((0..s).map(|t| images[t][j]))
                .collect()
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut row = 0;
    for col in 0..s {
        let Some(pr) = (row..r).find(|&i| aug[i][col] != 0) else {
            panic!("basis vectors are dependent");
        };
        aug.swap(row, pr);
        let inv = mod_inv(aug[row][col], p);
        for x in aug[row].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..r {
            if i != row && aug[i][col] != 0 {
                let f = aug[i][col];
                for j in 0..2 * s {
                    let sub = f * aug[row][j] % p;
                    aug[i][j] = (aug[i][j] + p - sub) % p;
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // after elimination, row t of the left block is e_t, so the right block
    // rows give the coefficients: images[t] = sum_j coeff[j][t] basis[j]
    (0..s)
        .map(|j| (0..s).map(|t| aug[pivot_rows[j]][s + t]).collect())
        .collect()
}

/// Basis of the kernel of a square matrix over F_p (destroys the input).
fn kernel_basis(m: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut pivot_row_of_col = vec![usize::MAX; n];
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = mod_inv(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..n {
                    let sub = f * m[row][j] % p;
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row[row] = col;
        pivot_row_of_col[col] = row;
        row += 1;
    }
    let mut kernel = Vec::new();
    for free_col in 0..n {
        if pivot_row_of_col[free_col] != usize::MAX {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free_col] = 1;
        for r0 in 0..row {
            let pc = pivot_col_of_row[r0];
            if m[r0][free_col] != 0 {
                v[pc] = (p - m[r0][free_col]) % p;
            }
        }
        kernel.push(v);
    }
    kernel
}

/// Lifts one character value at one class to its exact cyclotomic form via
/// the multiplicities of the eigenvalues ζ_e^l.
pub(super) fn lift_value(
    data: &DixonData,
    field: &Cyclotomic,
    irr: usize,
    class: usize,
) -> Result<CycVal> {
    let p = data.prime;
    let e = data.class_orders[class];
    let z_e = mod_pow(data.root, data.exponent / e, p);
    let e_inv = mod_inv(e % p, p);
    let mut value = field.zero();
    for l in 0..e {
        // mu_l = (1/e) sum_j chi(g^j) z_e^{-jl}
        let mut mu = 0u64;
        for j in 0..e {
            let cls = data.power_class[class][j as usize];
            let w = mod_pow(mod_inv(z_e, p), j * l % data.exponent, p);
            mu = (mu + data.char_mod_p[irr][cls] * w) % p;
        }
        mu = mu * e_inv % p;
        // mu is a genuine multiplicity < p, so the lift is exact
        if mu != 0 {
            let mono = field.root_power(l * (data.exponent / e));
            value = field.add(&value, &field.scale(&mono, mu as i64));
        }
    }
    Ok(value)
}
