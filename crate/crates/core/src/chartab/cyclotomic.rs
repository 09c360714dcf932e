//! Exact arithmetic in the m-th cyclotomic field, with values stored as
//! integer coefficient vectors reduced modulo the m-th cyclotomic polynomial.

/// The m-th cyclotomic field context: the reduction polynomial Φ_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    m: u64,
    /// Φ_m, monic, coefficient of x^i at index i.
    phi: Vec<i64>,
}

/// A field element: coefficients of 1, ζ, ..., ζ^{φ(m)-1}.
pub type CycVal = Vec<i64>;

/// `(x^n - 1)` as a coefficient vector.
fn x_pow_minus_one(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    p
}

/// Exact division of integer polynomials (panics if not divisible; used only
/// on cyclotomic factors where divisibility is guaranteed).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd] == 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for j in 0..=dd {
                rem[i + j] -= c * den[j];
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

fn cyclotomic_poly(m: u64) -> Vec<i64> {
    // Φ_m = (x^m - 1) / Π_{d | m, d < m} Φ_d
    let mut phi = x_pow_minus_one(m as usize);
    for d in 1..m {
        if m % d == 0 {
            phi = poly_div_exact(&phi, &cyclotomic_poly(d));
        }
    }
    phi
}

impl Cyclotomic {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1);
        Cyclotomic {
            m,
            phi: cyclotomic_poly(m),
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// φ(m), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> CycVal {
        vec![0; self.degree()]
    }

    pub fn int(&self, n: i64) -> CycVal {
        let mut v = self.zero();
        v[0] = n;
        v
    }

    /// Reduces an arbitrary-degree coefficient vector modulo Φ_m.
    fn reduce(&self, mut poly: Vec<i64>) -> CycVal {
        let deg = self.degree();
        while poly.len() > deg {
            let top = poly.len() - 1;
            let c = poly[top];
            if c != 0 {
                let shift = top - deg;
                for j in 0..=deg {
                    poly[shift + j] -= c * self.phi[j];
                }
            }
            poly.pop();
        }
        poly.resize(deg, 0);
        poly
    }

    /// ζ_m^k as a field element.
    pub fn root_power(&self, k: u64) -> CycVal {
        let k = (k % self.m) as usize;
        let mut poly = vec![0i64; k + 1];
        poly[k] = 1;
        self.reduce(poly)
    }

    pub fn add(&self, a: &CycVal, b: &CycVal) -> CycVal {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &CycVal, b: &CycVal) -> CycVal {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &CycVal, c: i64) -> CycVal {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &CycVal, b: &CycVal) -> CycVal {
        let mut conv = vec![0i64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                conv[i + j] += x * y;
            }
        }
        self.reduce(conv)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self, a: &CycVal) -> CycVal {
        let mut poly = vec![0i64; self.m as usize];
        for (k, &c) in a.iter().enumerate() {
            if c != 0 {
                let e = ((self.m as usize) - k) % self.m as usize;
                poly[e] += c;
            }
        }
        self.reduce(poly)
    }

    pub fn is_zero(&self, a: &CycVal) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// The rational integer the value equals, if it is one.
    pub fn as_int(&self, a: &CycVal) -> Option<i64> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    /// Embeds a value from the d-th cyclotomic field (d | m) into this one.
    pub fn embed_from(&self, sub: &Cyclotomic, a: &CycVal) -> CycVal {
        assert_eq!(self.m % sub.m, 0);
        let stretch = self.m / sub.m;
        let mut poly = vec![0i64; self.m as usize];
        for (k, &c) in a.iter().enumerate() {
            if c != 0 {
                poly[(k as u64 * stretch % self.m) as usize] += c;
            }
        }
        self.reduce(poly)
    }

    /// Deterministic display: integer when integral, otherwise a polynomial
    /// in `z` = ζ_m.
    pub fn render(&self, a: &CycVal) -> String {
        if let Some(n) = self.as_int(a) {
            return n.to_string();
        }
        let mut parts = Vec::new();
        for (k, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".into(),
                (1, -1) => "-z".into(),
                (1, c) => format!("{c}z"),
                (k, 1) => format!("z^{k}"),
                (k, -1) => format!("-z^{k}"),
                (k, c) => format!("{c}z^{k}"),
            };
            parts.push(term);
        }
        parts.join("+").replace("+-", "-")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_relations() {
        let f = Cyclotomic::new(3);
        let z = f.root_power(1);
        let z2 = f.root_power(2);
        // 1 + z + z^2 = 0
        let sum = f.add(&f.add(&f.int(1), &z), &z2);
        assert!(f.is_zero(&sum));
        // z * z^2 = 1
        assert_eq!(f.mul(&z, &z2), f.int(1));
    }

    #[test]
    fn conjugation() {
        let f = Cyclotomic::new(5);
        let z = f.root_power(1);
        assert_eq!(f.conj(&z), f.root_power(4));
        // z * conj(z) = 1
        assert_eq!(f.mul(&z, &f.conj(&z)), f.int(1));
    }

    #[test]
    fn embedding() {
        let big = Cyclotomic::new(12);
        let small = Cyclotomic::new(4);
        let i_small = small.root_power(1);
        let embedded = big.embed_from(&small, &i_small);
        assert_eq!(embedded, big.root_power(3));
    }

    #[test]
    fn m_equals_one() {
        let f = Cyclotomic::new(1);
        assert_eq!(f.as_int(&f.int(7)), Some(7));
        assert_eq!(f.mul(&f.int(3), &f.int(4)), f.int(12));
    }

    #[test]
    fn render_values() {
        let f = Cyclotomic::new(4);
        assert_eq!(f.render(&f.int(-3)), "-3");
        assert_eq!(f.render(&f.root_power(1)), "z");
        let v = f.add(&f.int(1), &f.scale(&f.root_power(1), -2));
        assert_eq!(f.render(&v), "1-2z");
    }
}
