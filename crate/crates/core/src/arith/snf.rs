//! Smith normal form over the integers with unimodular witnesses.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{Signed, Zero};
use serde::Serialize;

use crate::arith::matrix::{integer_entries, Matrix};
use crate::arith::rational::Rat;
use crate::error::ArithError;

/// `left * m * right = diag` with `left`, `right` unimodular and the diagonal
/// nonnegative with each entry dividing the next.
#[derive(Debug, Clone, Serialize)]
pub struct Snf {
    pub diag: Matrix,
    pub left: Matrix,
    pub right: Matrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.diag.rows().min(self.diag.cols());
        (0..n)
            .map(|i| self.diag.at(i, i).to_bigint().expect("integral diagonal"))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Quotient with remainder of minimal absolute value.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        // Step q one unit so the remainder flips to the short side.
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,  // rows x rows
    right: Vec<Vec<BigInt>>, // cols x cols
}

impl Work {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.right {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols() {
            let v = &self.a[j][c] * q;
            self.a[i][c] -= v;
        }
        for c in 0..self.rows() {
            let v = &self.left[j][c] * q;
            self.left[i][c] -= v;
        }
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.a {
            let v = &row[j] * q;
            row[i] -= v;
        }
        for row in &mut self.right {
            let v = &row[j] * q;
            row[i] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols() {
            self.a[i][c] = -&self.a[i][c];
        }
        for c in 0..self.rows() {
            self.left[i][c] = -&self.left[i][c];
        }
    }

    /// Smallest nonzero entry (by absolute value) of the trailing submatrix.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                if self.a[i][j].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if self.a[i][j].abs() < self.a[bi][bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }
}

/// Smith normal form of an integer matrix. Entries must be integral
/// rationals; `NotIntegral` otherwise.
pub fn smith_normal_form(m: &Matrix) -> Result<Snf, ArithError> {
    let entries = integer_entries(m)?;
    let (rows, cols) = (m.rows(), m.cols());
    let ident = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    };
    let mut w = Work {
        a: entries,
        left: ident(rows),
        right: ident(cols),
    };

    let steps = rows.min(cols);
    for t in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = w.min_entry(t) else {
                break 'pivot; // trailing submatrix is zero
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            // Euclidean passes down the column and across the row. Any
            // nonzero remainder becomes a strictly smaller candidate pivot,
            // so the loop terminates.
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = rounded_div(&w.a[i][t], &w.a[t][t]);
                w.row_sub(i, t, &q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = rounded_div(&w.a[t][j], &w.a[t][t]);
                w.col_sub(j, t, &q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }

            // Pivot must divide everything that remains, so later diagonal
            // entries come out as multiples.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&w.a[i][j] % &w.a[t][t]).is_zero() {
                        let one = BigInt::from(-1);
                        w.row_sub(t, i, &one); // row_t += row_i
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }

    let to_matrix = |rows: &Vec<Vec<BigInt>>| -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| Rat::from_bigint(c.clone())).collect())
                .collect(),
        )
        .expect("rectangular")
    };
    Ok(Snf {
        diag: to_matrix(&w.a),
        left: to_matrix(&w.left),
        right: to_matrix(&w.right),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(snf: &Snf, m: &Matrix) {
        // Recomposition and unimodularity are the independent certificate.
        let lmr = snf.left.mul(m).unwrap().mul(&snf.right).unwrap();
        assert_eq!(lmr, snf.diag);
        assert!(snf.left.is_unimodular());
        assert!(snf.right.is_unimodular());
        let d = snf.diagonal();
        for pair in d.windows(2) {
            if !pair[0].is_zero() {
                assert!((&pair[1] % &pair[0]).is_zero(), "divisibility {pair:?}");
            } else {
                assert!(pair[1].is_zero());
            }
        }
        for v in &d {
            assert!(!v.is_negative());
        }
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let m = Matrix::from_int_rows(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(
            snf.diagonal(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        check(&snf, &m);
    }

    #[test]
    fn identity_is_fixed() {
        let m = Matrix::identity(3);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.diag, m);
        check(&snf, &m);
    }

    #[test]
    fn zero_matrix() {
        let m = Matrix::zeros(2, 3);
        let snf = smith_normal_form(&m).unwrap();
        assert!(snf.diag.is_zero());
        check(&snf, &m);
    }

    #[test]
    fn rectangular_with_torsion() {
        let m = Matrix::from_int_rows(&[&[4, 6, 0], &[0, 10, 2]]);
        let snf = smith_normal_form(&m).unwrap();
        check(&snf, &m);
        assert_eq!(snf.rank(), 2);
    }

    #[test]
    fn rejects_non_integral() {
        let m = Matrix::from_rows(vec![vec![Rat::new(1, 2)]]).unwrap();
        assert!(matches!(
            smith_normal_form(&m),
            Err(ArithError::NotIntegral(_))
        ));
    }
}
