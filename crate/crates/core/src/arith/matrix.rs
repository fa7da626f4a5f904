//! Dense matrices over exact rationals.
//!
//! Matrices act on column vectors from the left, so a composite g∘f of maps
//! is the product `g * f`. Rank, inverse and solve run Gauss-Jordan over the
//! rationals; there is no floating point anywhere and no tolerance parameter.
//! JSON encoding is an array of row arrays.

use std::fmt;

use num::bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::rational::Rat;
use crate::error::ArithError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>, // row-major, rows*cols entries
}

/// Result of `rank_inverse_solve`. `inverse` is present only for square
/// full-rank input; `solution` only when a right hand side was supplied and
/// the system is consistent (free variables set to zero).
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub rank: usize,
    pub inverse: Option<Matrix>,
    pub solution: Option<Matrix>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ArithError::DimensionMismatch(
                "ragged rows in matrix literal".into(),
            ));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer literal helper, used heavily in tests and builders.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Rat::from_int(n)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Column vector from a slice.
    pub fn column(entries: &[Rat]) -> Self {
        Matrix {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
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

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Rat::is_integer)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, ArithError> {
        self.same_shape(rhs, "add")?;
        Ok(self.zip(rhs, |a, b| a + b))
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, ArithError> {
        self.same_shape(rhs, "sub")?;
        Ok(self.zip(rhs, |a, b| a - b))
    }

    pub fn neg(&self) -> Matrix {
        self.map(|a| -a)
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        self.map(|a| a * c)
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, ArithError> {
        if self.cols != rhs.rows {
            return Err(ArithError::DimensionMismatch(format!(
                "mul: {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.at(k, j);
                    let cur = out.at(i, j) + &add;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// `[self | rhs]` side by side.
    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix, ArithError> {
        if self.rows != rhs.rows {
            return Err(ArithError::DimensionMismatch(format!(
                "hstack: {} rows vs {} rows",
                self.rows, rhs.rows
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                rhs.at(i, j - self.cols).clone()
            }
        }))
    }

    /// Columns `lo..hi` as a new matrix.
    pub fn col_slice(&self, lo: usize, hi: usize) -> Matrix {
        debug_assert!(lo <= hi && hi <= self.cols);
        Matrix::from_fn(self.rows, hi - lo, |i, j| self.at(i, lo + j).clone())
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> Matrix {
        debug_assert!(lo <= hi && hi <= self.rows);
        Matrix::from_fn(hi - lo, self.cols, |i, j| self.at(lo + i, j).clone())
    }

    fn same_shape(&self, rhs: &Matrix, what: &str) -> Result<(), ArithError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(ArithError::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    fn zip(&self, rhs: &Matrix, f: impl Fn(&Rat, &Rat) -> Rat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.at(r, c).recip().expect("pivot nonzero");
            for j in c..self.cols {
                let v = self.at(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let factor = self.at(i, c).clone();
                for j in c..self.cols {
                    let v = self.at(i, j) - &(&factor * self.at(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Exact determinant by fraction-free-ish elimination on a copy.
    pub fn det(&self) -> Result<Rat, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch(format!(
                "det of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            det *= m.at(c, c);
            let inv = m.at(c, c).recip().expect("pivot nonzero");
            for i in c + 1..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c) * &inv;
                for j in c..n {
                    let v = m.at(i, j) - &(&factor * m.at(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Square, integral, determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.is_square()
            && self.is_integral()
            && self
                .det()
                .map(|d| d.abs() == Rat::one())
                .unwrap_or(false)
    }

    pub fn inverse(&self) -> Result<Matrix, ArithError> {
        let report = rank_inverse_solve(self, None)?;
        report.inverse.ok_or_else(|| {
            ArithError::Singular(format!(
                "{}x{} matrix of rank {}",
                self.rows, self.cols, report.rank
            ))
        })
    }

    /// Integer matrix power; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Matrix, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch(format!(
                "pow of {}x{}",
                self.rows, self.cols
            )));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    /// True when the columns of `a` and `b` span the same subspace.
    pub fn same_column_span(a: &Matrix, b: &Matrix) -> Result<bool, ArithError> {
        if a.rows != b.rows {
            return Err(ArithError::DimensionMismatch(format!(
                "span comparison: {} rows vs {} rows",
                a.rows, b.rows
            )));
        }
        let joint = a.hstack(b)?;
        let r = joint.rank();
        Ok(r == a.rank() && r == b.rank())
    }
}

/// Rank of `m`; inverse when square and nonsingular; a particular solution of
/// `m x = rhs` when `rhs` is given and the system is consistent. Singularity
/// and inconsistency are reported through the absent fields, never papered
/// over.
pub fn rank_inverse_solve(m: &Matrix, rhs: Option<&Matrix>) -> Result<SolveReport, ArithError> {
    if let Some(b) = rhs {
        if b.rows() != m.rows() {
            return Err(ArithError::DimensionMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                m.rows(),
                b.rows()
            )));
        }
    }
    // One augmented elimination serves rank, inverse and solution.
    let n = m.rows();
    let id = Matrix::identity(n);
    let mut aug = m.hstack(&id)?;
    if let Some(b) = rhs {
        aug = aug.hstack(b)?;
    }
    let pivots = aug.rref_in_place();
    let rank = pivots.iter().filter(|&&c| c < m.cols()).count();

    let inverse = if m.is_square() && rank == n {
        Some(aug.col_slice(m.cols(), m.cols() + n))
    } else {
        None
    };

    // A row with zero m-part witnesses a left-kernel vector; the system is
    // consistent iff every such row also has zero rhs-part. Rows whose pivot
    // sits in an m-column carry the particular solution (free variables 0).
    let solution = rhs.and_then(|b| {
        let b_lo = m.cols() + n;
        let consistent = (0..n).all(|r| {
            (0..m.cols()).any(|j| !aug.at(r, j).is_zero())
                || (0..b.cols()).all(|j| aug.at(r, b_lo + j).is_zero())
        });
        if !consistent {
            return None;
        }
        let mut sol = Matrix::zeros(m.cols(), b.cols());
        for (r, &c) in pivots.iter().enumerate() {
            if c < m.cols() {
                for j in 0..b.cols() {
                    sol.set(c, j, aug.at(r, b_lo + j).clone());
                }
            }
        }
        Some(sol)
    });

    Ok(SolveReport {
        rank,
        inverse,
        solution,
    })
}

/// Entries as big integers; `NotIntegral` when any denominator exceeds 1.
pub fn integer_entries(m: &Matrix) -> Result<Vec<Vec<BigInt>>, ArithError> {
    let mut out = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            row.push(
                m.at(i, j)
                    .to_bigint()
                    .ok_or_else(|| ArithError::NotIntegral(m.at(i, j).to_string()))?,
            );
        }
        out.push(row);
    }
    Ok(out)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<&Rat>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j)).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rat>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_inverse() {
        let m = Matrix::from_int_rows(&[&[1, 0], &[-1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Matrix::from_int_rows(&[&[1, 0], &[1, 1]]));
        assert!(m.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn frozen_inverse_example() {
        // Inverse checked against the defining identity, not just the value.
        let m = Matrix::from_int_rows(&[&[0, -1], &[1, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Matrix::from_int_rows(&[&[2, 1], &[-1, 0]]));
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_is_reported() {
        let m = Matrix::from_int_rows(&[&[0, 0], &[0, 1]]);
        let report = rank_inverse_solve(&m, None).unwrap();
        assert_eq!(report.rank, 1);
        assert!(report.inverse.is_none());
        assert!(m.inverse().is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let b_ok = Matrix::from_int_rows(&[&[3], &[6]]);
        let report = rank_inverse_solve(&m, Some(&b_ok)).unwrap();
        let x = report.solution.expect("consistent");
        assert_eq!(m.mul(&x).unwrap(), b_ok);

        let b_bad = Matrix::from_int_rows(&[&[3], &[7]]);
        let report = rank_inverse_solve(&m, Some(&b_bad)).unwrap();
        assert!(report.solution.is_none());
        assert_eq!(report.rank, 1);
    }

    #[test]
    fn solve_shape_mismatch() {
        let m = Matrix::identity(2);
        let b = Matrix::from_int_rows(&[&[1], &[2], &[3]]);
        assert!(matches!(
            rank_inverse_solve(&m, Some(&b)),
            Err(ArithError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn det_and_unimodularity() {
        let m = Matrix::from_int_rows(&[&[0, -1], &[1, 2]]);
        assert_eq!(m.det().unwrap(), Rat::from_int(1));
        assert!(m.is_unimodular());
        let half = Matrix::from_rows(vec![vec![Rat::new(1, 2)]]).unwrap();
        assert!(!half.is_unimodular());
    }

    #[test]
    fn span_comparison() {
        let a = Matrix::from_int_rows(&[&[1], &[-2], &[1]]);
        let b = Matrix::from_int_rows(&[&[-2], &[4], &[-2]]);
        assert!(Matrix::same_column_span(&a, &b).unwrap());
        let c = Matrix::from_int_rows(&[&[1], &[0], &[0]]);
        assert!(!Matrix::same_column_span(&a, &c).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![Rat::new(1, 2), Rat::from_int(0)],
            vec![Rat::from_int(-3), Rat::new(7, 5)],
        ])
        .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","0"],["-3","7/5"]]"#);
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
