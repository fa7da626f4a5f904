//! The length-n flop family: both sides are modeled on rank-(n+1) lattices
//! with distinguished bases of line-bundle classes, relate by transfer
//! matrices through the windows, and carry the twist by the relatively
//! ample line bundle on each side.

use serde::Serialize;

use crate::arith::{Matrix, Rat};
use crate::error::GitFlopError;
use crate::gitflop::euler::euler_pairing_flop;
use crate::gitflop::windows::{KTheoryWindows, WallCrossing};

#[derive(Debug, Clone, Serialize)]
pub struct FlopModel {
    pub n: usize,
    /// Window level of the plus side; the plus basis is [O(level)] up to
    /// [O(0)].
    pub level: i64,
    pub k_basis_plus: Vec<String>,
    pub k_basis_minus: Vec<String>,
    /// Transfer from the minus side to the plus side.
    pub f_minus_plus: Matrix,
    /// Transfer back.
    pub f_plus_minus: Matrix,
    /// Twist by O(1) on the plus side.
    pub l_plus: Matrix,
    /// Twist by O(1) on the minus side; in window coordinates this is the
    /// downward shift.
    pub l_minus: Matrix,
    #[serde(skip)]
    pub windows: KTheoryWindows,
}

/// Weights for the length-n flop: n+1 ones on both sides, window pinned so
/// the plus basis is [O(-n)], ..., [O(0)].
pub fn flop_wall_crossing(n: usize) -> WallCrossing {
    WallCrossing {
        a: vec![1; n + 1],
        b: vec![1; n + 1],
        w: -(n as i64),
    }
}

pub fn build_flop_model(n: usize) -> Result<FlopModel, GitFlopError> {
    if n == 0 {
        return Err(GitFlopError::Unsupported(
            "flop length must be at least 1".into(),
        ));
    }
    let wc = flop_wall_crossing(n);
    let kt = KTheoryWindows::new(&wc)?;
    let level = wc.w;
    let label = |e: i64| format!("[O({e})]");
    let f_minus_plus = kt.phi_minus_to_plus(level)?;
    let f_plus_minus = kt.phi_plus_to_minus(level)?;
    // The shift matrices coincide entry-wise with the transfers on this
    // family; they are kept as separate fields because the relations treat
    // them as independent data.
    let l_plus = kt.shift_plus(level)?;
    let l_minus = kt.shift_minus(level)?;
    Ok(FlopModel {
        n,
        level,
        k_basis_plus: kt.exponents_plus(level).into_iter().map(label).collect(),
        k_basis_minus: kt.exponents_minus(level).into_iter().map(label).collect(),
        f_minus_plus,
        f_plus_minus,
        l_plus,
        l_minus,
        windows: kt,
    })
}

/// One verified identity: both sides as JSON values plus the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
}

/// Relation suite for the length-one flop model, one named entry per
/// identity.
#[derive(Debug, Clone, Serialize)]
pub struct FlopRelationReport {
    pub checks: Vec<RelationCheck>,
    pub valid: bool,
}

impl FlopRelationReport {
    pub fn check(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| c.pass)
    }
}

fn json_of<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report values serialize")
}

/// Checks the four identities of the length-one flop model:
/// the wall-crossing monodromy F_{-+} F_{+-} inverts the twist along the
/// exceptional class, computed from Euler pairings; the conjugation
/// F_{+-}^{-1} = L_+^{-1} F_{-+} L_-^{-1}; the loop around infinity; and
/// rank(L - 1) = 1 on both sides.
pub fn verify_relations(m: &FlopModel) -> Result<FlopRelationReport, GitFlopError> {
    if m.n != 1 {
        return Err(GitFlopError::Unsupported(format!(
            "relation suite covers the length-one flop, got length {}",
            m.n
        )));
    }
    let eta = m.f_minus_plus.rows();
    let id = Matrix::identity(eta);
    let inv = |x: &Matrix| x.inverse().map_err(GitFlopError::Arith);
    let mul = |x: Result<Matrix, GitFlopError>, y: &Matrix| {
        x.and_then(|x| x.mul(y).map_err(GitFlopError::Arith))
    };
    let mut checks = Vec::new();
    let mut push = |name: &str, lhs: serde_json::Value, rhs: serde_json::Value| {
        checks.push(RelationCheck {
            name: name.into(),
            pass: lhs == rhs,
            lhs,
            rhs,
        });
    };

    // Twist along the exceptional class at the window level, from Euler
    // pairings: 1 - v u with u the pairing row against that class.
    let pairing_row = Matrix::from_fn(1, eta, |_, j| {
        Rat::from_bigint(euler_pairing_flop(m.n as u32, m.level, m.level + j as i64))
    });
    let class_col = Matrix::from_fn(eta, 1, |i, _| {
        if i == 0 {
            Rat::from_int(1)
        } else {
            Rat::from_int(0)
        }
    });
    let supported_twist = id
        .sub(&class_col.mul(&pairing_row).map_err(GitFlopError::Arith)?)
        .map_err(GitFlopError::Arith)?;
    let monodromy = m
        .f_minus_plus
        .mul(&m.f_plus_minus)
        .map_err(GitFlopError::Arith)?;
    push(
        "monodromy_inverts_twist",
        json_of(&monodromy),
        json_of(&inv(&supported_twist)?),
    );

    push(
        "window_shift_conjugates",
        json_of(&inv(&m.f_plus_minus)?),
        json_of(&mul(mul(inv(&m.l_plus), &m.f_minus_plus), &inv(&m.l_minus)?)?),
    );

    push(
        "infinity_relation",
        json_of(&infinity_product(m)?),
        json_of(&id),
    );

    let ranks = [
        m.l_plus.sub(&id).map_err(GitFlopError::Arith)?.rank(),
        m.l_minus.sub(&id).map_err(GitFlopError::Arith)?.rank(),
    ];
    push("shifts_unipotent_rank_one", json_of(&ranks), json_of(&[1, 1]));

    let valid = checks.iter().all(|c| c.pass);
    Ok(FlopRelationReport { checks, valid })
}

/// F_{+-}^{-1} L_- F_{-+}^{-1} L_+, the product around the puncture at
/// infinity.
pub fn infinity_product(m: &FlopModel) -> Result<Matrix, GitFlopError> {
    let inv = |x: &Matrix| x.inverse().map_err(GitFlopError::Arith);
    let f_minus_plus_inv = inv(&m.f_minus_plus)?;
    inv(&m.f_plus_minus)?
        .mul(&m.l_minus)
        .and_then(|x| x.mul(&f_minus_plus_inv))
        .and_then(|x| x.mul(&m.l_plus))
        .map_err(GitFlopError::Arith)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_one_matrices() {
        let m = build_flop_model(1).unwrap();
        assert_eq!(m.level, -1);
        assert_eq!(m.k_basis_plus, vec!["[O(-1)]", "[O(0)]"]);
        assert_eq!(m.k_basis_minus, vec!["[O(0)]", "[O(1)]"]);
        assert_eq!(m.f_minus_plus, Matrix::from_int_rows(&[&[0, -1], &[1, 2]]));
        assert_eq!(m.f_plus_minus, Matrix::from_int_rows(&[&[2, 1], &[-1, 0]]));
        assert_eq!(m.l_plus, Matrix::from_int_rows(&[&[0, -1], &[1, 2]]));
        assert_eq!(m.l_minus, Matrix::from_int_rows(&[&[2, 1], &[-1, 0]]));
        assert_eq!(m.l_minus, m.l_plus.inverse().unwrap());
    }

    #[test]
    fn transfers_match_pair_projections() {
        let m = build_flop_model(1).unwrap();
        let pair = crate::gitflop::build_git_pair(&flop_wall_crossing(1)).unwrap();
        let (h_mp, h_pm) = pair.half_monodromies().unwrap();
        assert_eq!(m.f_minus_plus, h_mp);
        assert_eq!(m.f_plus_minus, h_pm);
    }

    #[test]
    fn relations_hold() {
        let m = build_flop_model(1).unwrap();
        let report = verify_relations(&m).unwrap();
        assert!(report.valid);
        let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            names,
            vec![
                "monodromy_inverts_twist",
                "window_shift_conjugates",
                "infinity_relation",
                "shifts_unipotent_rank_one"
            ]
        );
        assert!(report.checks.iter().all(|c| c.pass));
    }

    #[test]
    fn corrupted_minus_shift_breaks_infinity() {
        let mut m = build_flop_model(1).unwrap();
        m.l_minus = m.l_plus.clone();
        let report = verify_relations(&m).unwrap();
        assert!(!report.valid);
        assert!(!report.passed("infinity_relation"));
        assert_eq!(
            infinity_product(&m).unwrap(),
            Matrix::from_int_rows(&[&[-1, -2], &[2, 3]])
        );
        // The relations that do not involve the corrupted matrix survive.
        assert!(report.passed("monodromy_inverts_twist"));
        assert!(report.passed("shifts_unipotent_rank_one"));
    }

    #[test]
    fn corrupted_transfer_breaks_conjugation() {
        let mut m = build_flop_model(1).unwrap();
        m.f_plus_minus = m.f_plus_minus.transpose();
        let report = verify_relations(&m).unwrap();
        assert!(!report.valid);
        assert!(!report.passed("window_shift_conjugates"));
        assert!(!report.passed("monodromy_inverts_twist"));
        assert!(report.passed("shifts_unipotent_rank_one"));
    }

    #[test]
    fn longer_flops_build_but_are_not_verified() {
        let m = build_flop_model(2).unwrap();
        assert_eq!(m.f_minus_plus.rows(), 3);
        assert!(m.f_minus_plus.is_unimodular());
        assert!(m.f_plus_minus.is_unimodular());
        assert!(m.l_plus.is_unimodular());
        assert!(matches!(
            verify_relations(&m),
            Err(GitFlopError::Unsupported(_))
        ));
        assert!(matches!(
            build_flop_model(0),
            Err(GitFlopError::Unsupported(_))
        ));
    }
}
