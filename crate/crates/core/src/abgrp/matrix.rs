//! Integer matrices and Smith normal form with transformation matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense integer matrix. Entries are i128 so that intermediate Smith
/// reduction stays exact at desk scale without big-integer overhead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[i128]) -> Result<Vec<i128>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("row counts differ in hconcat".into()));
        }
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vconcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("col counts differ in vconcat".into()));
        }
        let mut out = IntMatrix::zero(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out[(self.rows + i, j)] = other[(i, j)];
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_i -= q * row_t`
    fn row_sub(&mut self, i: usize, t: usize, q: i128) {
        for j in 0..self.cols {
            let v = self[(t, j)];
            self[(i, j)] -= q * v;
        }
    }

    /// `col_j -= q * col_t`
    fn col_sub(&mut self, j: usize, t: usize, q: i128) {
        for i in 0..self.rows {
            let v = self[(i, t)];
            self[(i, j)] -= q * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// JSON form of an integer matrix with explicit shape (so empty matrices
/// keep their dimensions).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<i64>>,
}

impl IntMatrixJson {
    pub fn to_matrix(&self) -> Result<IntMatrix> {
        if self.data.len() != self.rows
            || self.data.iter().any(|row| row.len() != self.cols)
        {
            return Err(Error::ShapeMismatch(
                "matrix data does not match declared shape".into(),
            ));
        }
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v as i128;
            }
        }
        Ok(m)
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        let mut data = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let mut row = Vec::with_capacity(m.cols());
            for j in 0..m.cols() {
                let v = i64::try_from(m[(i, j)]).map_err(|_| {
                    Error::ShapeMismatch("matrix entry exceeds i64 in JSON export".into())
                })?;
                row.push(v);
            }
            data.push(row);
        }
        Ok(IntMatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }
}

/// Smith normal form `U * M * V = diag(d)` with unimodular U and V and
/// `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let rank_bound = r.min(c);

    for t in 0..rank_bound {
        // pick the entry of minimal nonzero absolute value as pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if a[(i, j)] != 0
                    && pivot.map_or(true, |(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'reduce: loop {
            for i in t + 1..r {
                if a[(i, t)] == 0 {
                    continue;
                }
                let q = a[(i, t)] / a[(t, t)];
                if q != 0 {
                    a.row_sub(i, t, q);
                    u.row_sub(i, t, q);
                }
                if a[(i, t)] != 0 {
                    // remainder is strictly smaller: make it the pivot
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue 'reduce;
                }
            }
            for j in t + 1..c {
                if a[(t, j)] == 0 {
                    continue;
                }
                let q = a[(t, j)] / a[(t, t)];
                if q != 0 {
                    a.col_sub(j, t, q);
                    v.col_sub(j, t, q);
                }
                if a[(t, j)] != 0 {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    continue 'reduce;
                }
            }
            // pivot must divide the remaining submatrix
            for i in t + 1..r {
                for j in t + 1..c {
                    if a[(i, j)] % a[(t, t)] != 0 {
                        // fold row i into row t and restart the reduction
                        a.row_sub(t, i, -1);
                        u.row_sub(t, i, -1);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if a[(t, t)] < 0 {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let diag = (0..rank_bound).map(|t| a[(t, t)]).collect();
    Smith { diag, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_umv(m: &IntMatrix) {
        let s = smith_normal_form(m);
        let umv = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expected = if i == j && i < s.diag.len() {
                    s.diag[i]
                } else {
                    0
                };
                assert_eq!(umv[(i, j)], expected, "at ({i},{j})");
            }
        }
        for w in s.diag.windows(2) {
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0, "divisibility chain broken");
            } else {
                assert_eq!(w[1], 0);
            }
        }
        assert!(s.diag.iter().all(|&d| d >= 0));
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![1, 6]);
        check_umv(&m);
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zero(3, 2);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![0, 0]);
        check_umv(&m);
    }

    #[test]
    fn swap_difference_matrix() {
        let m = IntMatrix::from_rows(vec![vec![1, -1], vec![-1, 1]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![1, 0]);
        check_umv(&m);
    }

    #[test]
    fn known_4x4() {
        let m = IntMatrix::from_rows(vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ])
        .unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![1, 3, 21, 0]);
        check_umv(&m);
    }

    #[test]
    fn rectangular_shapes() {
        let m = IntMatrix::from_rows(vec![vec![2, 4, 4]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![2]);
        check_umv(&m);
        let m = IntMatrix::from_rows(vec![vec![1, -2]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![1]);
        check_umv(&m);
    }

    #[test]
    fn empty_matrix_edge_cases() {
        check_umv(&IntMatrix::zero(0, 3));
        check_umv(&IntMatrix::zero(3, 0));
        check_umv(&IntMatrix::zero(0, 0));
    }
}
