//! The local system on the twice-punctured sphere attached to a flop: one
//! basepoint on each side of the wall, loop generators for the twists,
//! transfer generators across the wall, and the relation around infinity.
//! Pulling back along the universal cyclic cover and truncating yields the
//! schober on the complex line with one marked point per integer.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::Matrix;
use crate::error::GitFlopError;
use crate::gitflop::flop::FlopModel;
use crate::localsys::{
    ls_check_refinement, ls_pullback, CoveringSpec, Generator, GroupoidPresentation,
    LatticeLocalSystem, Lift, Relation, Sheets, Word, WordLetter,
};
use crate::perv::{GmvData, GmvPoint};
use crate::surface::SurfaceSchober;

pub const X_PLUS: &str = "x_plus";
pub const X_MINUS: &str = "x_minus";

/// Two basepoints, one twist loop at each, two transfer arcs, and the
/// relation around infinity. The system validates exactly when the infinity
/// product of the model is the identity.
pub fn build_skms(m: &FlopModel) -> Result<LatticeLocalSystem, GitFlopError> {
    let eta = m.f_minus_plus.rows();
    let presentation = GroupoidPresentation {
        basepoints: vec![X_PLUS.into(), X_MINUS.into()],
        generators: vec![
            Generator {
                label: "l_plus".into(),
                src: X_PLUS.into(),
                dst: X_PLUS.into(),
            },
            Generator {
                label: "l_minus".into(),
                src: X_MINUS.into(),
                dst: X_MINUS.into(),
            },
            Generator {
                label: "f_plus".into(),
                src: X_MINUS.into(),
                dst: X_PLUS.into(),
            },
            Generator {
                label: "f_minus".into(),
                src: X_PLUS.into(),
                dst: X_MINUS.into(),
            },
        ],
        relations: vec![Relation {
            label: "infinity".into(),
            word: vec![
                WordLetter::fwd("l_plus"),
                WordLetter::bwd("f_plus"),
                WordLetter::fwd("l_minus"),
                WordLetter::bwd("f_minus"),
            ],
        }],
    };
    let sys = LatticeLocalSystem {
        presentation,
        dims: BTreeMap::from([(X_PLUS.into(), eta), (X_MINUS.into(), eta)]),
        mats: BTreeMap::from([
            ("l_plus".into(), m.l_plus.clone()),
            ("l_minus".into(), m.l_minus.clone()),
            ("f_plus".into(), m.f_minus_plus.clone()),
            ("f_minus".into(), m.f_plus_minus.clone()),
        ]),
    };
    sys.require_valid().map_err(GitFlopError::LocalSys)?;
    Ok(sys)
}

/// Deck action of the universal cyclic cover, truncated to the sheet window
/// [-radius, radius]: the plus twist climbs one sheet, the minus twist
/// descends one, the transfers stay on their sheet.
pub fn skms_cover(radius: i64) -> CoveringSpec {
    CoveringSpec {
        sheets: Sheets::Window {
            lo: -radius,
            hi: radius,
        },
        lifts: BTreeMap::from([
            ("l_plus".to_string(), Lift::Shift { by: 1 }),
            ("l_minus".to_string(), Lift::Shift { by: -1 }),
            ("f_plus".to_string(), Lift::Shift { by: 0 }),
            ("f_minus".to_string(), Lift::Shift { by: 0 }),
        ]),
    }
}

/// The schober on the complex line covering the flop: one marked point per
/// integer in [-radius, radius], each carrying the class of the
/// corresponding exceptional line bundle, all monodromies trivial.
#[derive(Debug, Clone, Serialize)]
pub struct SchoberOnC {
    pub schober: SurfaceSchober,
    pub window: (i64, i64),
    /// Wall-crossing twist at each interior integer.
    pub twists: BTreeMap<i64, Matrix>,
    /// Minus-to-plus transfer at each level of the window.
    pub phi_minus_plus: BTreeMap<i64, Matrix>,
    /// Plus-to-minus transfer at the same level, the composite partner.
    pub phi_plus_minus: BTreeMap<i64, Matrix>,
}

pub fn build_schober_c(m: &FlopModel, radius: i64) -> Result<SchoberOnC, GitFlopError> {
    if m.n != 1 {
        return Err(GitFlopError::Unsupported(format!(
            "the schober on the line is built for the length-one flop, got length {}",
            m.n
        )));
    }
    if radius < 1 {
        return Err(GitFlopError::Unsupported(
            "window radius must be at least 1".into(),
        ));
    }
    // Class of the p-th exceptional line bundle in the plus basis: the
    // recurrence c_{p+1} = 2 c_p - c_{p-1} seeded by the basis vectors,
    // i.e. the orbit of [O(0)] under the plus twist.
    let seed = Matrix::from_int_rows(&[&[0], &[1]]);
    let class_of = |p: i64| -> Result<Matrix, GitFlopError> {
        m.l_plus
            .pow(p)
            .and_then(|l| l.mul(&seed))
            .map_err(GitFlopError::Arith)
    };
    let mut points = Vec::new();
    for p in -radius..=radius {
        points.push(GmvPoint {
            dim: 1,
            u: Matrix::zeros(1, 2),
            v: class_of(p)?,
        });
    }
    let outside = LatticeLocalSystem {
        presentation: GroupoidPresentation {
            basepoints: vec!["x".into()],
            generators: vec![Generator {
                label: "boundary".into(),
                src: "x".into(),
                dst: "x".into(),
            }],
            relations: vec![],
        },
        dims: BTreeMap::from([("x".into(), 2)]),
        mats: BTreeMap::from([("boundary".into(), Matrix::identity(2))]),
    };
    let schober = SurfaceSchober {
        disk: GmvData {
            ambient_dim: 2,
            points,
        },
        outside,
        basepoint: "x".into(),
        boundary_word: vec![WordLetter::fwd("boundary")],
    };
    schober.require_valid().map_err(GitFlopError::Surface)?;

    let mut twists = BTreeMap::new();
    for p in -radius + 1..=radius - 1 {
        twists.insert(p, m.windows.twist(p)?);
    }
    let mut phi_minus_plus = BTreeMap::new();
    let mut phi_plus_minus = BTreeMap::new();
    for level in -radius..radius {
        phi_minus_plus.insert(level, m.windows.phi_minus_to_plus(level)?);
        phi_plus_minus.insert(level, m.windows.phi_plus_to_minus(level)?);
    }
    Ok(SchoberOnC {
        schober,
        window: (-radius, radius),
        twists,
        phi_minus_plus,
        phi_plus_minus,
    })
}

/// The loop in the pulled-back system around the integer p, based on the
/// plus basepoint one sheet below: across the wall, around the minus
/// basepoint, back across, and down the plus twist.
pub fn integer_loop(p: i64) -> (String, Word) {
    let w = p - 1;
    let basepoint = format!("{X_PLUS}@{w}");
    let word = vec![
        WordLetter::fwd(format!("f_minus@{w}")),
        WordLetter::bwd(format!("l_minus@{p}")),
        WordLetter::fwd(format!("f_plus@{p}")),
        WordLetter::bwd(format!("l_plus@{w}")),
    ];
    (basepoint, word)
}

fn alternates_f_l(word: &Word) -> bool {
    word.len() == 4
        && word.iter().enumerate().all(|(k, l)| {
            let head = l.g.chars().next();
            if k % 2 == 0 {
                head == Some('f')
            } else {
                head == Some('l')
            }
        })
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegerLoopCheck {
    pub integer: i64,
    pub basepoint: String,
    pub word: Word,
    /// The loop letters alternate between transfer and twist generators.
    pub alternates: bool,
    pub monodromy_matches_twist: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RefinementReport {
    pub window: (i64, i64),
    pub cut_generators: Vec<(String, String)>,
    pub cut_relations: Vec<(String, String)>,
    /// Result of the factorization check of the coarse integer loops
    /// through the pulled-back system.
    pub refinement_holds: bool,
    pub checks: Vec<IntegerLoopCheck>,
    pub valid: bool,
}

/// Pull the two-puncture system back along the truncated cyclic cover and
/// check that the loop around every interior integer transports to the
/// wall-crossing twist there, matching the schober on the line.
pub fn skms_pullback_refines(
    m: &FlopModel,
    radius: i64,
) -> Result<RefinementReport, GitFlopError> {
    let sc = build_schober_c(m, radius)?;
    let skms = build_skms(m)?;
    let pb = ls_pullback(&skms, &skms_cover(radius)).map_err(GitFlopError::LocalSys)?;
    let fine = pb.system;
    fine.require_valid().map_err(GitFlopError::LocalSys)?;

    // Travel from the sheet-0 plus basepoint to the sheet-w one, climbing
    // or descending the plus twist.
    let travel = |w: i64| -> Word {
        if w >= 0 {
            (0..w)
                .map(|k| WordLetter::fwd(format!("l_plus@{k}")))
                .collect()
        } else {
            (w..0)
                .rev()
                .map(|k| WordLetter::bwd(format!("l_plus@{k}")))
                .collect()
        }
    };

    let base0 = format!("{X_PLUS}@0");
    let mut checks = Vec::new();
    let mut coarse_generators = Vec::new();
    let mut coarse_mats = BTreeMap::new();
    let mut inclusion = BTreeMap::new();
    for p in -radius + 1..=radius - 1 {
        let (basepoint, word) = integer_loop(p);
        let alternates = alternates_f_l(&word);
        let monodromy = fine
            .monodromy_at(&word, &basepoint)
            .map_err(GitFlopError::LocalSys)?;
        let twist = &sc.twists[&p];
        let monodromy_matches_twist = monodromy == *twist;
        checks.push(IntegerLoopCheck {
            integer: p,
            basepoint,
            word: word.clone(),
            alternates,
            monodromy_matches_twist,
        });

        // The same loop seen from sheet 0: conjugate by the travel word.
        let w = p - 1;
        let travel_word = travel(w);
        let mut based = travel_word.clone();
        based.extend(word);
        based.extend(crate::localsys::word_inverse(&travel_word));
        let label = format!("around_{p}");
        let a = m.l_plus.pow(w).map_err(GitFlopError::Arith)?;
        let conjugated = a
            .inverse()
            .and_then(|ai| ai.mul(twist))
            .and_then(|x| x.mul(&a))
            .map_err(GitFlopError::Arith)?;
        coarse_generators.push(Generator {
            label: label.clone(),
            src: base0.clone(),
            dst: base0.clone(),
        });
        coarse_mats.insert(label.clone(), conjugated);
        inclusion.insert(label, based);
    }

    let coarse = LatticeLocalSystem {
        presentation: GroupoidPresentation {
            basepoints: vec![base0.clone()],
            generators: coarse_generators,
            relations: vec![],
        },
        dims: BTreeMap::from([(base0, m.l_plus.rows())]),
        mats: coarse_mats,
    };
    let refinement_holds =
        ls_check_refinement(&coarse, &fine, &inclusion).map_err(GitFlopError::LocalSys)?;

    let valid = refinement_holds
        && checks
            .iter()
            .all(|c| c.alternates && c.monodromy_matches_twist);
    Ok(RefinementReport {
        window: (-radius, radius),
        cut_generators: pb.cut_generators,
        cut_relations: pb.cut_relations,
        refinement_holds,
        checks,
        valid,
    })
}
