use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{BigRat, ExactError};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Shape("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { rows: r, cols: c, entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&v).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Entrywise reduction into `[0, modulus)`.
    pub fn reduce_mod(&self, modulus: u64) -> IntMatrix {
        let m = BigInt::from(modulus);
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mod_floor(&m)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| BigRat::from_integer(e.clone())).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[r * self.cols + j];
            *e = -std::mem::take(e);
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j] * q;
            self.entries[target * self.cols + j] -= s;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(|e| e.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

/// Row-style Hermite normal form `H = U * M`.
#[derive(Debug, Clone)]
pub struct Hnf {
    /// Upper echelon form with positive pivots; entries above each pivot
    /// reduced into `[0, pivot)`. Zero rows are kept at the bottom.
    pub h: IntMatrix,
    /// Unimodular transform with `u * m == h`.
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
    /// Determinant of `u`, always `1` or `-1`.
    pub det_u: i8,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Hermite normal form of an arbitrary integer matrix by Euclidean row
/// reduction, tracking the unimodular transform explicitly.
pub fn hnf_with_transform(m: &IntMatrix) -> Hnf {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut det_u: i8 = 1;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below `row` goes to the pivot slot
            let best = (row..rows)
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            if best != row {
                h.swap_rows(best, row);
                u.swap_rows(best, row);
                det_u = -det_u;
            }
            let mut done = true;
            for r in row + 1..rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(row, col)]);
                h.sub_row_multiple(r, row, &q);
                u.sub_row_multiple(r, row, &q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
            det_u = -det_u;
        }
        for r in 0..row {
            let q = h[(r, col)].div_floor(&h[(row, col)]);
            h.sub_row_multiple(r, row, &q);
            u.sub_row_multiple(r, row, &q);
        }
        pivots.push(col);
        row += 1;
    }
    Hnf { h, u, pivots, det_u }
}

/// HNF of a square nonsingular matrix together with its determinant.
pub fn hnf_and_det(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix, BigInt), ExactError> {
    if !m.is_square() {
        return Err(ExactError::Shape("hnf_and_det needs a square matrix".into()));
    }
    let hnf = hnf_with_transform(m);
    if hnf.rank() < m.rows() {
        return Err(ExactError::SingularMatrix);
    }
    let mut det: BigInt = (0..m.rows()).map(|i| hnf.h[(i, i)].clone()).product();
    // det(H) = det(U) det(M) and det(U) = +-1
    if hnf.det_u < 0 {
        det = -det;
    }
    Ok((hnf.h, hnf.u, det))
}

/// Basis (as rows) of the lattice `{ c in Z^rows : c * m = 0 }`.
pub fn integer_left_kernel(m: &IntMatrix) -> IntMatrix {
    let hnf = hnf_with_transform(m);
    let r = hnf.rank();
    let kernel_rows: Vec<Vec<BigInt>> = (r..m.rows()).map(|i| hnf.u.row(i).to_vec()).collect();
    if kernel_rows.is_empty() {
        return IntMatrix::zeros(0, m.rows());
    }
    IntMatrix::from_rows(&kernel_rows).expect("kernel rows rectangular")
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![BigRat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRat::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigRat>]) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Shape("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, entries: rows.iter().flatten().cloned().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigRat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigRat] {
        &self.entries
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape("rational product shape".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<RatMatrix, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(ExactError::SingularMatrix)?;
            for j in 0..n {
                a.entries.swap(piv * n + j, col * n + j);
                inv.entries.swap(piv * n + j, col * n + j);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let s = &f * &a[(col, j)];
                    a[(r, j)] -= s;
                    let t = &f * &inv[(col, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<BigRat, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRat::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(BigRat::zero());
            };
            if piv != col {
                for j in 0..n {
                    a.entries.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for j in col..n {
                    let s = &f * &a[(col, j)];
                    a[(r, j)] -= s;
                }
            }
        }
        Ok(det)
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// The integer matrix `scale * self`; `scale` must clear all denominators.
    pub fn scaled_to_int(&self, scale: &BigInt) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| {
                        let v = e * BigRat::from_integer(scale.clone());
                        assert!(v.is_integer(), "scale does not clear denominators");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&rows).expect("rectangular")
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.to_integer()).collect(),
        })
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRat;
    fn index(&self, (r, c): (usize, usize)) -> &BigRat {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigRat {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(|e| e.to_string()).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}
