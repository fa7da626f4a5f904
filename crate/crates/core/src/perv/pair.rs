//! Spherical pairs at the lattice level: one space with two direct-sum
//! decompositions (Q_-, P_-) and (Q_+, P_+), all four cross projections
//! invertible. The half monodromies between the Q sides compose to the
//! twist, and the pair collapses to a one-point disk presentation.

use serde::{Deserialize, Serialize};

use crate::arith::Matrix;
use crate::error::PervError;
use crate::perv::gmv::{GmvData, GmvPoint};

/// Subspaces are given by basis columns inside the total space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSphericalPair {
    pub total_dim: usize,
    pub q_minus: Matrix,
    pub p_minus: Matrix,
    pub q_plus: Matrix,
    pub p_plus: Matrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub valid: bool,
    pub direct_sum_minus: bool,
    pub direct_sum_plus: bool,
    /// Names of cross compositions that fail to be invertible.
    pub singular_cross_maps: Vec<String>,
}

/// Projections attached to one decomposition E = A ⊕ B: rows of the inverse
/// of [A | B], split into the A block and the B block.
struct Decomposition {
    proj_a: Matrix,
    proj_b: Matrix,
}

fn decompose(total: usize, a: &Matrix, b: &Matrix, side: &str) -> Result<Decomposition, PervError> {
    if a.rows() != total || b.rows() != total {
        return Err(PervError::ShapeMismatch(format!(
            "{side}: basis matrices have {} and {} rows, total dimension {total}",
            a.rows(),
            b.rows()
        )));
    }
    if a.cols() + b.cols() != total {
        return Err(PervError::NotDirectSum(format!(
            "{side}: {} + {} columns differ from total dimension {total}",
            a.cols(),
            b.cols()
        )));
    }
    let joint = a.hstack(b)?;
    let inv = joint
        .inverse()
        .map_err(|_| PervError::NotDirectSum(format!("{side}: joint basis matrix is singular")))?;
    Ok(Decomposition {
        proj_a: inv.row_slice(0, a.cols()),
        proj_b: inv.row_slice(a.cols(), total),
    })
}

impl LinearSphericalPair {
    fn decompositions(&self) -> Result<(Decomposition, Decomposition), PervError> {
        let minus = decompose(self.total_dim, &self.q_minus, &self.p_minus, "minus side")?;
        let plus = decompose(self.total_dim, &self.q_plus, &self.p_plus, "plus side")?;
        Ok((minus, plus))
    }

    /// The four cross compositions with their names, in a fixed order.
    fn cross_maps(&self) -> Result<Vec<(String, Matrix)>, PervError> {
        let (minus, plus) = self.decompositions()?;
        Ok(vec![
            ("pi_Qplus . incl_Qminus".into(), plus.proj_a.mul(&self.q_minus)?),
            ("pi_Qminus . incl_Qplus".into(), minus.proj_a.mul(&self.q_plus)?),
            ("pi_Pplus . incl_Pminus".into(), plus.proj_b.mul(&self.p_minus)?),
            ("pi_Pminus . incl_Pplus".into(), minus.proj_b.mul(&self.p_plus)?),
        ])
    }

    pub fn validate(&self) -> Result<PairReport, PervError> {
        let direct_minus = decompose(self.total_dim, &self.q_minus, &self.p_minus, "minus side");
        let direct_plus = decompose(self.total_dim, &self.q_plus, &self.p_plus, "plus side");
        match (&direct_minus, &direct_plus) {
            (Err(PervError::ShapeMismatch(s)), _) | (_, Err(PervError::ShapeMismatch(s))) => {
                return Err(PervError::ShapeMismatch(s.clone()));
            }
            _ => {}
        }
        let direct_sum_minus = direct_minus.is_ok();
        let direct_sum_plus = direct_plus.is_ok();
        let mut singular = Vec::new();
        if direct_sum_minus && direct_sum_plus {
            for (name, m) in self.cross_maps()? {
                if !m.is_invertible() {
                    singular.push(name);
                }
            }
        }
        Ok(PairReport {
            valid: direct_sum_minus && direct_sum_plus && singular.is_empty(),
            direct_sum_minus,
            direct_sum_plus,
            singular_cross_maps: singular,
        })
    }

    /// Validation as an error: the first failing condition, by name.
    pub fn require_valid(&self) -> Result<(), PervError> {
        let report = self.validate()?;
        if !report.direct_sum_minus {
            return Err(PervError::NotDirectSum("minus side".into()));
        }
        if !report.direct_sum_plus {
            return Err(PervError::NotDirectSum("plus side".into()));
        }
        if let Some(name) = report.singular_cross_maps.first() {
            return Err(PervError::CrossMapSingular(name.clone()));
        }
        Ok(())
    }

    /// (h_{-+}: Q_- -> Q_+, h_{+-}: Q_+ -> Q_-), in the basis columns of the
    /// respective Q matrices.
    pub fn half_monodromies(&self) -> Result<(Matrix, Matrix), PervError> {
        self.require_valid()?;
        let (minus, plus) = self.decompositions()?;
        let h_mp = plus.proj_a.mul(&self.q_minus)?;
        let h_pm = minus.proj_a.mul(&self.q_plus)?;
        Ok((h_mp, h_pm))
    }

    /// The composite Q_+ -> Q_- -> Q_+, i.e. h_{-+} h_{+-}.
    pub fn twist(&self) -> Result<Matrix, PervError> {
        let (h_mp, h_pm) = self.half_monodromies()?;
        Ok(h_mp.mul(&h_pm)?)
    }

    /// One-point disk presentation on D = Q_+ with D_1 = P_-:
    /// u_1 = pi_{P_-} incl_{Q_+} and v_1 = pi_{Q_+} incl_{P_-}. Resolving the
    /// identity of the total space along the minus decomposition gives
    /// twist = 1 - v_1 u_1 exactly.
    pub fn to_gmv(&self) -> Result<GmvData, PervError> {
        self.require_valid()?;
        let (minus, plus) = self.decompositions()?;
        let u1 = minus.proj_b.mul(&self.q_plus)?;
        let v1 = plus.proj_a.mul(&self.p_minus)?;
        Ok(GmvData {
            ambient_dim: self.q_plus.cols(),
            points: vec![GmvPoint {
                dim: self.p_minus.cols(),
                u: u1,
                v: v1,
            }],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    /// Q_- = e1, P_- = e2, Q_+ = e1+e2, P_+ = e1-e2.
    fn skew_line_pair() -> LinearSphericalPair {
        LinearSphericalPair {
            total_dim: 2,
            q_minus: Matrix::from_int_rows(&[&[1], &[0]]),
            p_minus: Matrix::from_int_rows(&[&[0], &[1]]),
            q_plus: Matrix::from_int_rows(&[&[1], &[1]]),
            p_plus: Matrix::from_int_rows(&[&[1], &[-1]]),
        }
    }

    #[test]
    fn skew_line_half_monodromies() {
        let p = skew_line_pair();
        assert!(p.validate().unwrap().valid);
        let (h_mp, h_pm) = p.half_monodromies().unwrap();
        // e1 = 1/2 (e1+e2) + 1/2 (e1-e2).
        assert_eq!(h_mp, Matrix::from_rows(vec![vec![Rat::new(1, 2)]]).unwrap());
        assert_eq!(h_pm, Matrix::from_int_rows(&[&[1]]));
        assert_eq!(
            p.twist().unwrap(),
            Matrix::from_rows(vec![vec![Rat::new(1, 2)]]).unwrap()
        );
    }

    #[test]
    fn coincident_decompositions_give_identity_twist() {
        let p = LinearSphericalPair {
            total_dim: 2,
            q_minus: Matrix::from_int_rows(&[&[1], &[0]]),
            p_minus: Matrix::from_int_rows(&[&[0], &[1]]),
            q_plus: Matrix::from_int_rows(&[&[1], &[0]]),
            p_plus: Matrix::from_int_rows(&[&[0], &[1]]),
        };
        assert!(p.validate().unwrap().valid);
        assert!(p.twist().unwrap().is_identity());
        // The induced disk point has v u = 0, so its monodromy is 1.
        let d = p.to_gmv().unwrap();
        let report = d.validate().unwrap();
        assert!(report.valid);
        assert!(report.total_monodromy.is_identity());
    }

    #[test]
    fn twist_equals_one_minus_vu() {
        let p = skew_line_pair();
        let d = p.to_gmv().unwrap();
        let report = d.validate().unwrap();
        assert_eq!(report.total_monodromy, p.twist().unwrap());
    }

    #[test]
    fn degenerate_pair_rejected() {
        // P_+ equal to Q_+ is not a complement.
        let mut p = skew_line_pair();
        p.p_plus = p.q_plus.clone();
        let report = p.validate().unwrap();
        assert!(!report.valid);
        assert!(!report.direct_sum_plus);
        assert!(matches!(
            p.require_valid(),
            Err(PervError::NotDirectSum(_))
        ));
    }

    #[test]
    fn orthogonal_cross_map_rejected() {
        // Q_+ = P_-, so the projection of Q_+ to Q_- along P_- vanishes.
        let p = LinearSphericalPair {
            total_dim: 2,
            q_minus: Matrix::from_int_rows(&[&[1], &[0]]),
            p_minus: Matrix::from_int_rows(&[&[0], &[1]]),
            q_plus: Matrix::from_int_rows(&[&[0], &[1]]),
            p_plus: Matrix::from_int_rows(&[&[1], &[0]]),
        };
        let report = p.validate().unwrap();
        assert!(!report.valid);
        assert!(!report.singular_cross_maps.is_empty());
        assert!(matches!(
            p.require_valid(),
            Err(PervError::CrossMapSingular(_))
        ));
    }
}
