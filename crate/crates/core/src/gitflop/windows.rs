//! Window combinatorics for a one-parameter wall crossing with weights
//! (a_1..a_p | b_1..b_q). The two sides are modeled on length-eta exponent
//! windows in Laurent polynomials, eta = sum of the weights on either side,
//! and crossing the wall is reduction modulo one of two distinguished
//! polynomials.

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{laurent_reduce, LaurentPoly, Matrix, Rat};
use crate::error::GitFlopError;
use crate::perv::LinearSphericalPair;

/// Weights of a wall crossing, plus the window level w.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCrossing {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub w: i64,
}

impl WallCrossing {
    pub fn validate(&self) -> Result<(), GitFlopError> {
        if self.a.is_empty() || self.b.is_empty() {
            return Err(GitFlopError::BadWeights(0));
        }
        if let Some(&x) = self.a.iter().chain(self.b.iter()).find(|&&x| x <= 0) {
            return Err(GitFlopError::BadWeights(x));
        }
        let (sum_a, sum_b) = (self.a.iter().sum(), self.b.iter().sum());
        if sum_a != sum_b {
            return Err(GitFlopError::NotCalabiYau { sum_a, sum_b });
        }
        Ok(())
    }

    pub fn eta(&self) -> i64 {
        self.a.iter().sum()
    }
}

/// Exponent-window model of the two sides. The plus side at level k has the
/// monomial basis [k, k+eta-1], the minus side [k+1, k+eta].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTheoryWindows {
    a: Vec<i64>,
    b: Vec<i64>,
    eta: i64,
}

fn product_of(factors: impl IntoIterator<Item = LaurentPoly>) -> Result<LaurentPoly, GitFlopError> {
    let mut out = LaurentPoly::one();
    for f in factors {
        out = out.mul(&f).map_err(GitFlopError::Arith)?;
    }
    Ok(out)
}

impl KTheoryWindows {
    pub fn new(wc: &WallCrossing) -> Result<Self, GitFlopError> {
        wc.validate()?;
        Ok(KTheoryWindows {
            a: wc.a.clone(),
            b: wc.b.clone(),
            eta: wc.eta(),
        })
    }

    pub fn eta(&self) -> i64 {
        self.eta
    }

    /// t^level prod_i (1 - t^{a_i}); support [level, level+eta], the two end
    /// coefficients are units.
    pub fn kappa_minus(&self, level: i64) -> Result<LaurentPoly, GitFlopError> {
        let prod = product_of(
            self.a
                .iter()
                .map(|&ai| LaurentPoly::one().sub(&LaurentPoly::monomial(ai, 1))),
        )?;
        Ok(prod.shift(level).map_err(GitFlopError::Arith)?)
    }

    /// t^{level+eta} prod_j (1 - t^{-b_j}); same support [level, level+eta].
    pub fn kappa_plus(&self, level: i64) -> Result<LaurentPoly, GitFlopError> {
        let prod = product_of(
            self.b
                .iter()
                .map(|&bj| LaurentPoly::one().sub(&LaurentPoly::monomial(-bj, 1))),
        )?;
        Ok(prod.shift(level + self.eta).map_err(GitFlopError::Arith)?)
    }

    /// Monomial exponents of the plus-side window at a level.
    pub fn exponents_plus(&self, level: i64) -> Vec<i64> {
        (level..level + self.eta).collect()
    }

    /// Monomial exponents of the minus-side window at a level.
    pub fn exponents_minus(&self, level: i64) -> Vec<i64> {
        (level + 1..=level + self.eta).collect()
    }

    /// Matrix whose column for source exponent e is the reduction of t^e
    /// modulo `modulus` into the target window, in target monomial
    /// coordinates.
    fn reduction_matrix(
        &self,
        modulus: &LaurentPoly,
        source: &[i64],
        window: (i64, i64),
    ) -> Result<Matrix, GitFlopError> {
        let rows = (window.1 - window.0 + 1) as usize;
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(source.len());
        for &e in source {
            let reduced = laurent_reduce(&LaurentPoly::monomial(e, 1), modulus, window)
                .map_err(GitFlopError::Arith)?;
            cols.push(reduced.coeff_vec(window.0, window.1));
        }
        Ok(Matrix::from_fn(rows, source.len(), |i, j| {
            Rat::from_bigint(cols[j][i].clone())
        }))
    }

    /// Minus-to-plus transfer at a level: minus window [level+1, level+eta]
    /// into plus window [level, level+eta-1], reducing modulo kappa_plus,
    /// the relation that cuts out the plus side.
    pub fn phi_minus_to_plus(&self, level: i64) -> Result<Matrix, GitFlopError> {
        let modulus = self.kappa_plus(level)?;
        let source = self.exponents_minus(level);
        self.reduction_matrix(&modulus, &source, (level, level + self.eta - 1))
    }

    /// Plus-to-minus transfer at a level: plus window [level, level+eta-1]
    /// into minus window [level+1, level+eta], reducing modulo kappa_minus.
    pub fn phi_plus_to_minus(&self, level: i64) -> Result<Matrix, GitFlopError> {
        let modulus = self.kappa_minus(level)?;
        let source = self.exponents_plus(level);
        self.reduction_matrix(&modulus, &source, (level + 1, level + self.eta))
    }

    /// Multiplication by t on the plus window at a level. Entry-wise this
    /// equals `phi_minus_to_plus` there: shifting the plus basis up by one
    /// lands exactly on the minus basis monomials, and the modulus is the
    /// same.
    pub fn shift_plus(&self, level: i64) -> Result<Matrix, GitFlopError> {
        let modulus = self.kappa_plus(level)?;
        let source: Vec<i64> = (level + 1..=level + self.eta).collect();
        self.reduction_matrix(&modulus, &source, (level, level + self.eta - 1))
    }

    /// Multiplication by t^{-1} on the minus window at a level; entry-wise
    /// equal to `phi_plus_to_minus` there.
    pub fn shift_minus(&self, level: i64) -> Result<Matrix, GitFlopError> {
        let modulus = self.kappa_minus(level)?;
        let source: Vec<i64> = (level..level + self.eta).collect();
        self.reduction_matrix(&modulus, &source, (level + 1, level + self.eta))
    }

    /// Wall-crossing twist on the plus window at a level: across the wall
    /// and back through the same ambient slice.
    pub fn twist(&self, level: i64) -> Result<Matrix, GitFlopError> {
        let out = self.phi_plus_to_minus(level)?;
        let back = self.phi_minus_to_plus(level)?;
        Ok(back.mul(&out).map_err(GitFlopError::Arith)?)
    }
}

/// Everything about the windows at one level, ready for serialization.
#[derive(Debug, Clone, Serialize)]
pub struct WindowReport {
    pub eta: i64,
    pub level: i64,
    pub kappa_minus: LaurentPoly,
    pub kappa_plus: LaurentPoly,
    pub exponents_plus: Vec<i64>,
    pub exponents_minus: Vec<i64>,
    pub phi_minus_to_plus: Matrix,
    pub phi_plus_to_minus: Matrix,
    pub twist: Matrix,
    pub phis_unimodular: bool,
}

pub fn build_windows(wc: &WallCrossing) -> Result<WindowReport, GitFlopError> {
    let kt = KTheoryWindows::new(wc)?;
    let level = wc.w;
    let phi_mp = kt.phi_minus_to_plus(level)?;
    let phi_pm = kt.phi_plus_to_minus(level)?;
    let twist = phi_mp.mul(&phi_pm).map_err(GitFlopError::Arith)?;
    let phis_unimodular = phi_mp.is_unimodular() && phi_pm.is_unimodular();
    Ok(WindowReport {
        eta: kt.eta(),
        level,
        kappa_minus: kt.kappa_minus(level)?,
        kappa_plus: kt.kappa_plus(level)?,
        exponents_plus: kt.exponents_plus(level),
        exponents_minus: kt.exponents_minus(level),
        phi_minus_to_plus: phi_mp,
        phi_plus_to_minus: phi_pm,
        twist,
        phis_unimodular,
    })
}

/// Spherical pair on the level-w ambient space: monomials [w, w+eta], the Q
/// sides spanned by the window monomials, the P sides by the two kappa
/// vectors.
pub fn build_git_pair(wc: &WallCrossing) -> Result<LinearSphericalPair, GitFlopError> {
    let kt = KTheoryWindows::new(wc)?;
    let eta = kt.eta() as usize;
    let (lo, hi) = (wc.w, wc.w + kt.eta());
    let id = Matrix::identity(eta + 1);
    let q_minus = id.col_slice(1, eta + 1);
    let q_plus = id.col_slice(0, eta);
    let kappa_col = |kappa: &LaurentPoly| {
        let entries: Vec<Rat> = kappa
            .coeff_vec(lo, hi)
            .into_iter()
            .map(Rat::from_bigint)
            .collect();
        Matrix::column(&entries)
    };
    let p_minus = kappa_col(&kt.kappa_minus(wc.w)?);
    let p_plus = kappa_col(&kt.kappa_plus(wc.w)?);
    let pair = LinearSphericalPair {
        total_dim: eta + 1,
        q_minus,
        p_minus,
        q_plus,
        p_plus,
    };
    pair.require_valid().map_err(GitFlopError::Pair)?;
    Ok(pair)
}

/// Two computations of the same twist: through the spherical pair
/// projections, and through polynomial reduction between windows.
#[derive(Debug, Clone, Serialize)]
pub struct TwistComparison {
    pub twist_pair: Matrix,
    pub twist_reduction: Matrix,
    pub equal: bool,
    pub phis_unimodular: bool,
}

pub fn twist_vs_phi(wc: &WallCrossing) -> Result<TwistComparison, GitFlopError> {
    let pair = build_git_pair(wc)?;
    let twist_pair = pair.twist().map_err(GitFlopError::Pair)?;
    let kt = KTheoryWindows::new(wc)?;
    let phi_mp = kt.phi_minus_to_plus(wc.w)?;
    let phi_pm = kt.phi_plus_to_minus(wc.w)?;
    let twist_reduction = phi_mp.mul(&phi_pm).map_err(GitFlopError::Arith)?;
    Ok(TwistComparison {
        equal: twist_pair == twist_reduction,
        phis_unimodular: phi_mp.is_unimodular() && phi_pm.is_unimodular(),
        twist_pair,
        twist_reduction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wc(a: &[i64], b: &[i64], w: i64) -> WallCrossing {
        WallCrossing {
            a: a.to_vec(),
            b: b.to_vec(),
            w,
        }
    }

    #[test]
    fn weight_validation() {
        assert!(wc(&[1, 2], &[3], 0).validate().is_ok());
        assert!(matches!(
            wc(&[1, 2], &[2], 0).validate(),
            Err(GitFlopError::NotCalabiYau { sum_a: 3, sum_b: 2 })
        ));
        assert!(matches!(
            wc(&[1, -2], &[-1], 0).validate(),
            Err(GitFlopError::BadWeights(-2))
        ));
        assert!(matches!(
            wc(&[], &[1], 0).validate(),
            Err(GitFlopError::BadWeights(0))
        ));
    }

    #[test]
    fn kappas_for_one_two_three() {
        let kt = KTheoryWindows::new(&wc(&[1, 2], &[3], 0)).unwrap();
        let km = kt.kappa_minus(0).unwrap();
        assert_eq!(
            km,
            LaurentPoly::from_terms([(0, 1), (1, -1), (2, -1), (3, 1)])
        );
        let kp = kt.kappa_plus(0).unwrap();
        assert_eq!(kp, LaurentPoly::from_terms([(0, -1), (3, 1)]));
    }

    #[test]
    fn transfers_for_one_two_three() {
        let kt = KTheoryWindows::new(&wc(&[1, 2], &[3], 0)).unwrap();
        let phi_mp = kt.phi_minus_to_plus(0).unwrap();
        assert_eq!(
            phi_mp,
            Matrix::from_int_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
        );
        let phi_pm = kt.phi_plus_to_minus(0).unwrap();
        assert_eq!(
            phi_pm,
            Matrix::from_int_rows(&[&[1, 1, 0], &[1, 0, 1], &[-1, 0, 0]])
        );
        assert!(phi_mp.is_unimodular());
        assert!(phi_pm.is_unimodular());
        let twist = kt.twist(0).unwrap();
        assert_eq!(
            twist,
            Matrix::from_int_rows(&[&[-1, 0, 0], &[1, 1, 0], &[1, 0, 1]])
        );
        // This twist is an involution.
        assert!(twist.mul(&twist).unwrap().is_identity());
    }

    #[test]
    fn twist_need_not_be_an_involution() {
        let kt = KTheoryWindows::new(&wc(&[1, 1, 1], &[3], -2)).unwrap();
        let twist = kt.twist(-2).unwrap();
        assert_eq!(
            twist,
            Matrix::from_int_rows(&[&[1, 0, 0], &[3, 1, 0], &[-3, 0, 1]])
        );
        assert!(!twist.mul(&twist).unwrap().is_identity());
    }

    #[test]
    fn conifold_twist_is_trivial() {
        let kt = KTheoryWindows::new(&wc(&[1, 1], &[1, 1], -1)).unwrap();
        let phi_mp = kt.phi_minus_to_plus(-1).unwrap();
        assert_eq!(phi_mp, Matrix::from_int_rows(&[&[0, -1], &[1, 2]]));
        let phi_pm = kt.phi_plus_to_minus(-1).unwrap();
        assert_eq!(phi_pm, Matrix::from_int_rows(&[&[2, 1], &[-1, 0]]));
        assert!(kt.twist(-1).unwrap().is_identity());
    }

    #[test]
    fn shifts_match_transfers_entrywise() {
        let kt = KTheoryWindows::new(&wc(&[1, 2], &[3], 0)).unwrap();
        assert_eq!(
            kt.shift_plus(0).unwrap(),
            kt.phi_minus_to_plus(0).unwrap()
        );
        assert_eq!(
            kt.shift_minus(0).unwrap(),
            kt.phi_plus_to_minus(0).unwrap()
        );
    }

    #[test]
    fn pair_from_windows() {
        let pair = build_git_pair(&wc(&[1, 1], &[1, 1], -1)).unwrap();
        assert!(pair.validate().unwrap().valid);
        // Both kappa vectors span (1, -2, 1).
        let expect = Matrix::from_int_rows(&[&[1], &[-2], &[1]]);
        assert!(Matrix::same_column_span(&pair.p_minus, &expect).unwrap());
        assert!(Matrix::same_column_span(&pair.p_plus, &expect).unwrap());
        assert!(pair.twist().unwrap().is_identity());
    }

    #[test]
    fn two_twist_routes_agree() {
        for (a, b, w) in [
            (vec![1, 1], vec![1, 1], -1),
            (vec![1, 2], vec![3], 0),
            (vec![1, 2], vec![1, 2], 2),
            (vec![1, 1, 1], vec![3], -2),
            (vec![2, 2], vec![1, 3], 1),
        ] {
            let cmp = twist_vs_phi(&WallCrossing { a, b, w }).unwrap();
            assert!(cmp.equal, "routes differ at level {w}");
            assert!(cmp.phis_unimodular);
        }
    }

    #[test]
    fn window_report_is_consistent() {
        let report = build_windows(&wc(&[1, 2], &[3], 0)).unwrap();
        assert_eq!(report.eta, 3);
        assert_eq!(report.exponents_plus, vec![0, 1, 2]);
        assert_eq!(report.exponents_minus, vec![1, 2, 3]);
        assert!(report.phis_unimodular);
        assert_eq!(
            report.twist,
            report
                .phi_minus_to_plus
                .mul(&report.phi_plus_to_minus)
                .unwrap()
        );
    }
}
