//! Schobers on a marked surface, presented by gluing: a disk presentation
//! for the marked points, a local system on the surface outside the disk,
//! and a boundary word tying the two together. The boundary word is a loop
//! at the gluing basepoint whose transport equals the total monodromy of
//! the disk.

use serde::{Deserialize, Serialize};

use crate::arith::Matrix;
use crate::error::{LocalSysError, SurfaceError};
use crate::localsys::{Generator, LatticeLocalSystem, LsReport, Relation, Word, WordLetter};
use crate::perv::{monodromy_of, GmvData, GmvPoint, GmvReport, LinearSphericalPair};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSchober {
    /// Presentation of the marked points inside the glued disk.
    pub disk: GmvData,
    /// Local system on the surface outside the disk.
    pub outside: LatticeLocalSystem,
    /// Basepoint of `outside` where the disk boundary is attached.
    pub basepoint: String,
    /// Loop at `basepoint`; its transport must equal the disk total
    /// monodromy. Empty means the boundary loop is trivial.
    pub boundary_word: Word,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceReport {
    pub valid: bool,
    pub disk: GmvReport,
    pub outside: LsReport,
    pub boundary_matches: bool,
}

fn word_as_loop(
    l: &LatticeLocalSystem,
    w: &Word,
    basepoint: &str,
) -> Result<Matrix, SurfaceError> {
    match l.monodromy_at(w, basepoint) {
        Ok(m) => Ok(m),
        Err(LocalSysError::UnknownGenerator(g)) => Err(SurfaceError::BadLoop(g)),
        Err(LocalSysError::NotComposable(s)) => Err(SurfaceError::BadLoop(s)),
        Err(e) => Err(e.into()),
    }
}

/// Transport along a path with prescribed endpoints.
fn transport(
    l: &LatticeLocalSystem,
    w: &Word,
    from: &str,
    to: &str,
) -> Result<Matrix, SurfaceError> {
    if w.is_empty() {
        if from != to {
            return Err(SurfaceError::BadLoop(format!(
                "empty arc between {from:?} and {to:?}"
            )));
        }
        return Ok(Matrix::identity(l.dim(from)?));
    }
    let (s, e) = l
        .presentation
        .word_endpoints(w)
        .map_err(|err| SurfaceError::BadLoop(err.to_string()))?;
    if s != from || e != to {
        return Err(SurfaceError::BadLoop(format!(
            "arc runs {s:?} -> {e:?}, expected {from:?} -> {to:?}"
        )));
    }
    l.monodromy(w).map_err(SurfaceError::from)
}

impl SurfaceSchober {
    pub fn validate(&self) -> Result<SurfaceReport, SurfaceError> {
        let disk = self.disk.validate()?;
        let outside = self.outside.validate()?;
        let boundary_dim = self.outside.dim(&self.basepoint)?;
        if boundary_dim != self.disk.ambient_dim {
            return Err(SurfaceError::LocalSys(LocalSysError::ShapeMismatch(
                format!(
                    "fiber at {:?} has dimension {boundary_dim}, disk ambient dimension {}",
                    self.basepoint, self.disk.ambient_dim
                ),
            )));
        }
        let boundary_matches = if outside.singular_generators.is_empty() {
            word_as_loop(&self.outside, &self.boundary_word, &self.basepoint)?
                == disk.total_monodromy
        } else {
            false
        };
        Ok(SurfaceReport {
            valid: disk.valid && outside.valid && boundary_matches,
            disk,
            outside,
            boundary_matches,
        })
    }

    pub fn require_valid(&self) -> Result<(), SurfaceError> {
        self.disk.require_valid()?;
        self.outside.require_valid()?;
        let report = self.validate()?;
        if !report.boundary_matches {
            return Err(SurfaceError::BoundaryMismatch);
        }
        Ok(())
    }
}

/// Glue one more marked point into the disk, with the given loop on the
/// outside surface as its boundary. The transport of `loop_word` must equal
/// the monodromy `1 - v u` of the new point; the point is inserted first, so
/// the new total monodromy is the loop transport times the old total.
pub fn extend_with_twist(
    s: &SurfaceSchober,
    point: &GmvPoint,
    loop_word: &Word,
) -> Result<SurfaceSchober, SurfaceError> {
    s.require_valid()?;
    if point.u.rows() != point.dim || point.v.cols() != point.dim {
        return Err(SurfaceError::Gmv(crate::error::PervError::ShapeMismatch(
            format!(
                "new point: declared dim {} vs u {}x{}, v {}x{}",
                point.dim,
                point.u.rows(),
                point.u.cols(),
                point.v.rows(),
                point.v.cols()
            ),
        )));
    }
    let twist = monodromy_of(&point.u, &point.v, s.disk.ambient_dim)?;
    let looped = word_as_loop(&s.outside, loop_word, &s.basepoint)?;
    if looped != twist {
        return Err(SurfaceError::MonodromyNotTwist(format!(
            "loop transport {looped:?} vs 1 - vu = {twist:?}"
        )));
    }
    let mut points = Vec::with_capacity(s.disk.points.len() + 1);
    points.push(point.clone());
    points.extend(s.disk.points.iter().cloned());
    let mut boundary_word = s.boundary_word.clone();
    boundary_word.extend(loop_word.iter().cloned());
    let out = SurfaceSchober {
        disk: GmvData {
            ambient_dim: s.disk.ambient_dim,
            points,
        },
        outside: s.outside.clone(),
        basepoint: s.basepoint.clone(),
        boundary_word,
    };
    out.require_valid()?;
    Ok(out)
}

/// A spherical pair glued along two arcs between a plus and a minus
/// basepoint. The arcs must transport to the half monodromies of the pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSchober {
    pub outside: LatticeLocalSystem,
    pub pair: LinearSphericalPair,
    pub basepoint_plus: String,
    pub basepoint_minus: String,
    /// Arc from the plus basepoint to the minus basepoint; transports to
    /// h_{+-}.
    pub arc_plus_minus: Word,
    /// Arc back; transports to h_{-+}.
    pub arc_minus_plus: Word,
}

impl PairSchober {
    /// Check the gluing and collapse to a one-point schober based at the
    /// plus basepoint. The boundary word runs through the minus side, so its
    /// transport is h_{-+} h_{+-}, the twist of the pair.
    pub fn induce(&self) -> Result<SurfaceSchober, SurfaceError> {
        self.outside.require_valid()?;
        self.pair.require_valid()?;
        let (h_mp, h_pm) = self.pair.half_monodromies()?;
        let (dim_plus, dim_minus) = (
            self.outside.dim(&self.basepoint_plus)?,
            self.outside.dim(&self.basepoint_minus)?,
        );
        if dim_plus != self.pair.q_plus.cols() || dim_minus != self.pair.q_minus.cols() {
            return Err(SurfaceError::LocalSys(LocalSysError::ShapeMismatch(
                format!(
                    "fibers ({dim_plus}, {dim_minus}) vs pair sides ({}, {})",
                    self.pair.q_plus.cols(),
                    self.pair.q_minus.cols()
                ),
            )));
        }
        let t_pm = transport(
            &self.outside,
            &self.arc_plus_minus,
            &self.basepoint_plus,
            &self.basepoint_minus,
        )?;
        if t_pm != h_pm {
            return Err(SurfaceError::HalfMonodromyMismatch(
                "plus-to-minus arc".into(),
            ));
        }
        let t_mp = transport(
            &self.outside,
            &self.arc_minus_plus,
            &self.basepoint_minus,
            &self.basepoint_plus,
        )?;
        if t_mp != h_mp {
            return Err(SurfaceError::HalfMonodromyMismatch(
                "minus-to-plus arc".into(),
            ));
        }
        let mut boundary_word = self.arc_plus_minus.clone();
        boundary_word.extend(self.arc_minus_plus.iter().cloned());
        let out = SurfaceSchober {
            disk: self.pair.to_gmv()?,
            outside: self.outside.clone(),
            basepoint: self.basepoint_plus.clone(),
            boundary_word,
        };
        out.require_valid()?;
        Ok(out)
    }
}

/// Glue a spherical pair into the surface along its two arcs.
pub fn extend_with_pair(ps: &PairSchober) -> Result<SurfaceSchober, SurfaceError> {
    ps.induce()
}

fn fresh_generator_label(l: &LatticeLocalSystem, base: String) -> String {
    let mut label = base;
    while l.presentation.generator(&label).is_some() || l.mats.contains_key(&label) {
        label.insert(0, '_');
    }
    label
}

/// Fill the disk back in: one loop generator per marked point, plus the
/// gluing relation equating the boundary word with the composite of the
/// point loops. A schober with no points and an empty boundary word is
/// returned unchanged.
pub fn restrict_full(s: &SurfaceSchober) -> Result<LatticeLocalSystem, SurfaceError> {
    s.require_valid()?;
    let n = s.disk.n_points();
    if n == 0 && s.boundary_word.is_empty() {
        return Ok(s.outside.clone());
    }
    let mut sys = s.outside.clone();
    let mut gammas = Vec::with_capacity(n);
    for i in 0..n {
        let label = fresh_generator_label(&sys, format!("gamma_{}", i + 1));
        sys.presentation.generators.push(Generator {
            label: label.clone(),
            src: s.basepoint.clone(),
            dst: s.basepoint.clone(),
        });
        sys.mats.insert(label.clone(), s.disk.monodromy(i)?);
        gammas.push(label);
    }
    // Boundary word, then the point loops cancelled in order: the relation
    // transports to (m_1 ... m_n)^{-1} (total) = 1.
    let mut word = s.boundary_word.clone();
    for g in &gammas {
        word.push(WordLetter::bwd(g));
    }
    let mut label = "glue".to_string();
    while sys.presentation.relations.iter().any(|r| r.label == label) {
        label.insert(0, '_');
    }
    sys.presentation.relations.push(Relation { label, word });
    sys.require_valid()?;
    Ok(sys)
}

/// Check a closed genus-zero gluing: each puncture loop transports to the
/// declared twist, and the global word (the composite of all boundary loops,
/// contractible on the sphere) transports to the identity.
pub fn compactify_check(
    l: &LatticeLocalSystem,
    punctures: &[(Word, GmvPoint)],
    global_word: &Word,
) -> Result<(), SurfaceError> {
    l.require_valid()?;
    for (i, (loop_word, point)) in punctures.iter().enumerate() {
        if loop_word.is_empty() {
            return Err(SurfaceError::BadLoop(format!("puncture {i}: empty loop")));
        }
        let (start, end) = l
            .presentation
            .word_endpoints(loop_word)
            .map_err(|err| SurfaceError::BadLoop(err.to_string()))?;
        if start != end {
            return Err(SurfaceError::BadLoop(format!(
                "puncture {i}: loop runs {start:?} -> {end:?}"
            )));
        }
        let twist = monodromy_of(&point.u, &point.v, l.dim(&start)?)?;
        if l.monodromy(loop_word)? != twist {
            return Err(SurfaceError::MonodromyNotTwist(format!("puncture {i}")));
        }
    }
    if !global_word.is_empty() {
        let (start, end) = l
            .presentation
            .word_endpoints(global_word)
            .map_err(|err| SurfaceError::BadLoop(err.to_string()))?;
        if start != end {
            return Err(SurfaceError::BadLoop(format!(
                "global word runs {start:?} -> {end:?}"
            )));
        }
        if !l.monodromy(global_word)?.is_identity() {
            return Err(SurfaceError::GlobalRelationFails);
        }
    }
    Ok(())
}
