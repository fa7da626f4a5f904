//! Monodromy presentation of a schober on a disk with marked points.
//!
//! The data is a vector space D together with, for each marked point, a
//! local space D_i and a pair of maps u_i: D -> D_i, v_i: D_i -> D. The
//! monodromy of the i-th point is m_i = 1 - v_i u_i and the braid group of
//! the disk acts by the Hurwitz rule.

use serde::{Deserialize, Serialize};

use crate::arith::Matrix;
use crate::braid::BraidWord;
use crate::error::{ArithError, PervError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmvPoint {
    /// Dimension of the local space D_i.
    pub dim: usize,
    /// D -> D_i, a `dim x ambient_dim` matrix.
    pub u: Matrix,
    /// D_i -> D, an `ambient_dim x dim` matrix.
    pub v: Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmvData {
    pub ambient_dim: usize,
    pub points: Vec<GmvPoint>,
}

/// Outcome of `validate`. Monodromies are reported even when singular;
/// `valid` requires every one of them invertible.
#[derive(Debug, Clone, Serialize)]
pub struct GmvReport {
    pub valid: bool,
    pub per_monodromy: Vec<Matrix>,
    pub total_monodromy: Matrix,
    /// Indices (0-based) of points whose monodromy is singular.
    pub singular_points: Vec<usize>,
}

/// `1 - v u` on the ambient space.
pub fn monodromy_of(u: &Matrix, v: &Matrix, ambient: usize) -> Result<Matrix, PervError> {
    if u.cols() != ambient || v.rows() != ambient || u.rows() != v.cols() {
        return Err(PervError::ShapeMismatch(format!(
            "monodromy: u is {}x{}, v is {}x{}, ambient {}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols(),
            ambient
        )));
    }
    let vu = v.mul(u)?;
    Ok(Matrix::identity(ambient).sub(&vu)?)
}

/// `1 - u v` on the source of v. Intertwines with the twist through u and v:
/// u (1 - v u) = (1 - u v) u and (1 - v u) v = v (1 - u v).
pub fn cotwist(u: &Matrix, v: &Matrix) -> Result<Matrix, PervError> {
    if u.cols() != v.rows() || v.cols() != u.rows() {
        return Err(PervError::ShapeMismatch(format!(
            "cotwist: u is {}x{}, v is {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    let uv = u.mul(v)?;
    Ok(Matrix::identity(u.rows()).sub(&uv)?)
}

impl GmvData {
    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn monodromy(&self, i: usize) -> Result<Matrix, PervError> {
        let p = &self.points[i];
        if p.u.rows() != p.dim || p.v.cols() != p.dim {
            return Err(PervError::ShapeMismatch(format!(
                "point {i}: declared dim {} vs u {}x{}, v {}x{}",
                p.dim,
                p.u.rows(),
                p.u.cols(),
                p.v.rows(),
                p.v.cols()
            )));
        }
        monodromy_of(&p.u, &p.v, self.ambient_dim)
    }

    /// Ordered product m_1 m_2 ... m_n, the first point outermost on the left.
    pub fn total_monodromy(&self) -> Result<Matrix, PervError> {
        let mut total = Matrix::identity(self.ambient_dim);
        for i in 0..self.points.len() {
            total = total.mul(&self.monodromy(i)?)?;
        }
        Ok(total)
    }

    pub fn validate(&self) -> Result<GmvReport, PervError> {
        let mut per = Vec::with_capacity(self.points.len());
        let mut singular = Vec::new();
        for i in 0..self.points.len() {
            let m = self.monodromy(i)?;
            if !m.is_invertible() {
                singular.push(i);
            }
            per.push(m);
        }
        let mut total = Matrix::identity(self.ambient_dim);
        for m in &per {
            total = total.mul(m)?;
        }
        Ok(GmvReport {
            valid: singular.is_empty(),
            per_monodromy: per,
            total_monodromy: total,
            singular_points: singular,
        })
    }

    pub fn require_valid(&self) -> Result<(), PervError> {
        let report = self.validate()?;
        if let Some(&i) = report.singular_points.first() {
            return Err(PervError::Arith(ArithError::Singular(format!(
                "monodromy of point {i}"
            ))));
        }
        Ok(())
    }

    /// Hurwitz action of one Artin generator. Positive sign: points i, i+1
    /// (1-based i) become (point_{i+1}, conjugated point_i); the ordered
    /// product of monodromies is unchanged.
    fn act_letter(&mut self, index: i64, sign: i8) -> Result<(), PervError> {
        let n = self.points.len() as i64;
        if index < 1 || index > n - 1 {
            return Err(PervError::IndexOutOfRange {
                index,
                max: n - 1,
            });
        }
        let i = (index - 1) as usize;
        if sign > 0 {
            let m_next = self.monodromy(i + 1)?;
            let m_next_inv = m_next
                .inverse()
                .map_err(|_| ArithError::Singular(format!("monodromy of point {}", i + 1)))?;
            let old_i = self.points[i].clone();
            let moved = GmvPoint {
                dim: old_i.dim,
                u: old_i.u.mul(&m_next)?,
                v: m_next_inv.mul(&old_i.v)?,
            };
            self.points[i] = self.points[i + 1].clone();
            self.points[i + 1] = moved;
        } else {
            let m_prev = self.monodromy(i)?;
            let m_prev_inv = m_prev
                .inverse()
                .map_err(|_| ArithError::Singular(format!("monodromy of point {i}")))?;
            let old_next = self.points[i + 1].clone();
            let moved = GmvPoint {
                dim: old_next.dim,
                u: old_next.u.mul(&m_prev_inv)?,
                v: m_prev.mul(&old_next.v)?,
            };
            self.points[i + 1] = self.points[i].clone();
            self.points[i] = moved;
        }
        Ok(())
    }

    /// Apply a braid word, letters left to right.
    pub fn braid_act(&self, w: &BraidWord) -> Result<GmvData, PervError> {
        self.require_valid()?;
        let mut out = self.clone();
        for l in &w.0 {
            out.act_letter(l.i, l.s)?;
        }
        Ok(out)
    }
}
