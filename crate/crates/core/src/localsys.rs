//! Local systems of lattices on a punctured surface, presented
//! combinatorially: a groupoid presentation (basepoints, generator arrows,
//! relation loops) with an invertible matrix attached to each generator.
//!
//! Words list letters in traversal order. A letter with sign +1 runs the
//! generator from src to dst, sign -1 runs it backwards. Evaluation composes
//! matrices as functions, so the last letter of the word contributes the
//! leftmost factor.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::Matrix;
use crate::error::{ArithError, LocalSysError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub src: String,
    pub dst: String,
}

/// One letter of a path word. JSON: `{"g": label, "s": ±1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordLetter {
    pub g: String,
    pub s: i8,
}

impl WordLetter {
    pub fn fwd(g: impl Into<String>) -> Self {
        WordLetter { g: g.into(), s: 1 }
    }

    pub fn bwd(g: impl Into<String>) -> Self {
        WordLetter { g: g.into(), s: -1 }
    }
}

pub type Word = Vec<WordLetter>;

/// Reverse the word and flip every sign.
pub fn word_inverse(w: &[WordLetter]) -> Word {
    w.iter()
        .rev()
        .map(|l| WordLetter {
            g: l.g.clone(),
            s: -l.s,
        })
        .collect()
}

/// Parse `"a b^-1 c"` into a word.
pub fn parse_word(text: &str) -> Result<Word, String> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        if let Some(g) = tok.strip_suffix("^-1") {
            if g.is_empty() {
                return Err(format!("bad word token {tok:?}"));
            }
            out.push(WordLetter::bwd(g));
        } else {
            out.push(WordLetter::fwd(tok));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub label: String,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidPresentation {
    pub basepoints: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl GroupoidPresentation {
    pub fn generator(&self, label: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.label == label)
    }

    /// Structural well-formedness: distinct labels, endpoints exist,
    /// relation words compose and close.
    pub fn check(&self) -> Result<(), LocalSysError> {
        let mut seen = BTreeSet::new();
        for b in &self.basepoints {
            if !seen.insert(b.clone()) {
                return Err(LocalSysError::CoverInconsistent(format!(
                    "duplicate basepoint {b:?}"
                )));
            }
        }
        let mut glabels = BTreeSet::new();
        for g in &self.generators {
            if !glabels.insert(g.label.clone()) {
                return Err(LocalSysError::UnknownGenerator(format!(
                    "duplicate generator label {}",
                    g.label
                )));
            }
            for bp in [&g.src, &g.dst] {
                if !seen.contains(bp) {
                    return Err(LocalSysError::UnknownBasepoint(bp.clone()));
                }
            }
        }
        for r in &self.relations {
            let (start, end) = self.word_endpoints(&r.word)?;
            if start != end {
                return Err(LocalSysError::NotComposable(format!(
                    "relation {:?} runs from {start:?} to {end:?}",
                    r.label
                )));
            }
        }
        Ok(())
    }

    /// Start and end basepoints of a composable word. The empty word has no
    /// endpoints and is rejected here; callers treat it as an identity loop
    /// where that makes sense.
    pub fn word_endpoints(&self, w: &[WordLetter]) -> Result<(String, String), LocalSysError> {
        let mut iter = w.iter();
        let Some(first) = iter.next() else {
            return Err(LocalSysError::NotComposable("empty word".into()));
        };
        let ends = |l: &WordLetter| -> Result<(String, String), LocalSysError> {
            let g = self
                .generator(&l.g)
                .ok_or_else(|| LocalSysError::UnknownGenerator(l.g.clone()))?;
            Ok(if l.s >= 0 {
                (g.src.clone(), g.dst.clone())
            } else {
                (g.dst.clone(), g.src.clone())
            })
        };
        let (start, mut cur) = ends(first)?;
        for l in iter {
            let (s, e) = ends(l)?;
            if s != cur {
                return Err(LocalSysError::NotComposable(format!(
                    "letter {:?} starts at {s:?}, expected {cur:?}",
                    l.g
                )));
            }
            cur = e;
        }
        Ok((start, cur))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeLocalSystem {
    pub presentation: GroupoidPresentation,
    /// Fiber dimension at each basepoint.
    pub dims: BTreeMap<String, usize>,
    /// Matrix of each generator, `dims[dst] x dims[src]`.
    pub mats: BTreeMap<String, Matrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LsReport {
    pub valid: bool,
    pub singular_generators: Vec<String>,
    pub violated_relations: Vec<String>,
}

impl LatticeLocalSystem {
    pub fn dim(&self, basepoint: &str) -> Result<usize, LocalSysError> {
        self.dims
            .get(basepoint)
            .copied()
            .ok_or_else(|| LocalSysError::UnknownBasepoint(basepoint.to_string()))
    }

    pub fn mat(&self, label: &str) -> Result<&Matrix, LocalSysError> {
        self.mats
            .get(label)
            .ok_or_else(|| LocalSysError::UnknownGenerator(label.to_string()))
    }

    fn check_shapes(&self) -> Result<(), LocalSysError> {
        self.presentation.check()?;
        for b in &self.presentation.basepoints {
            self.dim(b)?;
        }
        for g in &self.presentation.generators {
            let m = self.mat(&g.label)?;
            let (rows, cols) = (self.dim(&g.dst)?, self.dim(&g.src)?);
            if m.rows() != rows || m.cols() != cols {
                return Err(LocalSysError::ShapeMismatch(format!(
                    "generator {:?} has a {}x{} matrix, expected {rows}x{cols}",
                    g.label,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<LsReport, LocalSysError> {
        self.check_shapes()?;
        let mut singular = Vec::new();
        for g in &self.presentation.generators {
            if !self.mat(&g.label)?.is_invertible() {
                singular.push(g.label.clone());
            }
        }
        let mut violated = Vec::new();
        if singular.is_empty() {
            for r in &self.presentation.relations {
                if !self.monodromy(&r.word)?.is_identity() {
                    violated.push(r.label.clone());
                }
            }
        }
        Ok(LsReport {
            valid: singular.is_empty() && violated.is_empty(),
            singular_generators: singular,
            violated_relations: violated,
        })
    }

    pub fn require_valid(&self) -> Result<(), LocalSysError> {
        let report = self.validate()?;
        if let Some(g) = report.singular_generators.first() {
            return Err(LocalSysError::SingularGenerator(g.clone()));
        }
        if let Some(r) = report.violated_relations.first() {
            return Err(LocalSysError::RelationViolated(r.clone()));
        }
        Ok(())
    }

    /// Transport along a composable word: the ordered product of generator
    /// matrices and inverses, last letter leftmost. The empty word is not
    /// composable (no basepoint); single loops evaluate to their matrix.
    pub fn monodromy(&self, w: &[WordLetter]) -> Result<Matrix, LocalSysError> {
        let (start, _) = self.presentation.word_endpoints(w)?;
        let mut acc = Matrix::identity(self.dim(&start)?);
        for l in w {
            let m = self.mat(&l.g)?;
            let step = if l.s >= 0 {
                m.clone()
            } else {
                m.inverse().map_err(|_| {
                    LocalSysError::SingularGenerator(l.g.clone())
                })?
            };
            acc = step.mul(&acc).map_err(LocalSysError::Arith)?;
        }
        Ok(acc)
    }

    /// Monodromy of a word that may be empty, read as a loop at `basepoint`.
    pub fn monodromy_at(
        &self,
        w: &[WordLetter],
        basepoint: &str,
    ) -> Result<Matrix, LocalSysError> {
        if w.is_empty() {
            return Ok(Matrix::identity(self.dim(basepoint)?));
        }
        let (start, end) = self.presentation.word_endpoints(w)?;
        if start != basepoint || end != basepoint {
            return Err(LocalSysError::NotComposable(format!(
                "word runs {start:?} -> {end:?}, expected a loop at {basepoint:?}"
            )));
        }
        self.monodromy(w)
    }
}

/// Isomorphism check with an explicit witness: one matrix per basepoint,
/// intertwining every generator, i.e. W_dst M1_g = M2_g W_src. Witnesses
/// that are not invertible do not define an isomorphism, so they yield
/// `false`.
pub fn ls_check_iso(
    l1: &LatticeLocalSystem,
    l2: &LatticeLocalSystem,
    witness: &BTreeMap<String, Matrix>,
) -> Result<bool, LocalSysError> {
    if l1.presentation != l2.presentation {
        return Err(LocalSysError::ShapeMismatch(
            "systems live on different presentations".into(),
        ));
    }
    l1.check_shapes()?;
    l2.check_shapes()?;
    for b in &l1.presentation.basepoints {
        let w = witness
            .get(b)
            .ok_or_else(|| LocalSysError::UnknownBasepoint(format!("witness missing at {b:?}")))?;
        let (d1, d2) = (l1.dim(b)?, l2.dim(b)?);
        if w.rows() != d2 || w.cols() != d1 {
            return Err(LocalSysError::ShapeMismatch(format!(
                "witness at {b:?} is {}x{}, expected {d2}x{d1}",
                w.rows(),
                w.cols()
            )));
        }
        if !w.is_invertible() {
            return Ok(false);
        }
    }
    for g in &l1.presentation.generators {
        let w_src = &witness[&g.src];
        let w_dst = &witness[&g.dst];
        let lhs = w_dst.mul(l1.mat(&g.label)?).map_err(LocalSysError::Arith)?;
        let rhs = l2.mat(&g.label)?.mul(w_src).map_err(LocalSysError::Arith)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Refinement check: every coarse basepoint appears in the fine system with
/// the same fiber, and every coarse generator factors through the declared
/// fine word with exactly the same matrix.
pub fn ls_check_refinement(
    coarse: &LatticeLocalSystem,
    fine: &LatticeLocalSystem,
    inclusion: &BTreeMap<String, Word>,
) -> Result<bool, LocalSysError> {
    coarse.check_shapes()?;
    fine.check_shapes()?;
    for b in &coarse.presentation.basepoints {
        let fine_dim = fine.dim(b)?; // UnknownBasepoint if X is not inside Y
        if fine_dim != coarse.dim(b)? {
            return Ok(false);
        }
    }
    for g in &coarse.presentation.generators {
        let word = inclusion
            .get(&g.label)
            .ok_or_else(|| LocalSysError::MissingFactorization(g.label.clone()))?;
        if word.is_empty() {
            if g.src != g.dst {
                return Err(LocalSysError::NotComposable(format!(
                    "empty factorization for non-loop generator {:?}",
                    g.label
                )));
            }
            if !coarse.mat(&g.label)?.is_identity() {
                return Ok(false);
            }
            continue;
        }
        let (start, end) = fine.presentation.word_endpoints(word)?;
        if start != g.src || end != g.dst {
            return Err(LocalSysError::NotComposable(format!(
                "factorization of {:?} runs {start:?} -> {end:?}, expected {:?} -> {:?}",
                g.label, g.src, g.dst
            )));
        }
        if fine.monodromy(word)? != *coarse.mat(&g.label)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sheets of a covering: a finite labeled set, or a truncation window of an
/// infinite cyclic cover with integer sheets `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sheets {
    Labels { labels: Vec<String> },
    Window { lo: i64, hi: i64 },
}

/// Lift rule for one generator: a table sheet -> sheet for finite covers, or
/// a uniform integer shift for cyclic covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Lift {
    Table { map: BTreeMap<String, String> },
    Shift { by: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringSpec {
    pub sheets: Sheets,
    /// One lift rule per base generator.
    pub lifts: BTreeMap<String, Lift>,
}

/// Pulled-back system plus the boundary report: lifts that leave a
/// truncation window are listed, never silently dropped.
#[derive(Debug, Clone, Serialize)]
pub struct Pullback {
    pub system: LatticeLocalSystem,
    /// (generator label, source sheet) pairs whose lift leaves the window.
    pub cut_generators: Vec<(String, String)>,
    /// (relation label, sheet) pairs whose lift needs a cut generator.
    pub cut_relations: Vec<(String, String)>,
}

/// Basepoint of the pullback: base basepoint on a given sheet.
pub fn sheet_point(base: &str, sheet: &str) -> String {
    format!("{base}@{sheet}")
}

struct SheetSet {
    names: Vec<String>,
    window: Option<(i64, i64)>,
}

impl SheetSet {
    fn new(s: &Sheets) -> Result<Self, LocalSysError> {
        match s {
            Sheets::Labels { labels } => {
                if labels.is_empty() {
                    return Err(LocalSysError::CoverInconsistent("no sheets".into()));
                }
                Ok(SheetSet {
                    names: labels.clone(),
                    window: None,
                })
            }
            Sheets::Window { lo, hi } => {
                if lo > hi {
                    return Err(LocalSysError::CoverInconsistent(format!(
                        "empty window [{lo}, {hi}]"
                    )));
                }
                Ok(SheetSet {
                    names: (*lo..=*hi).map(|k| k.to_string()).collect(),
                    window: Some((*lo, *hi)),
                })
            }
        }
    }

    /// Target sheet of a lift, or None when it leaves the window.
    fn apply(&self, lift: &Lift, sheet: &str) -> Result<Option<String>, LocalSysError> {
        match (lift, self.window) {
            (Lift::Shift { by }, Some((lo, hi))) => {
                let s: i64 = sheet
                    .parse()
                    .map_err(|_| LocalSysError::CoverInconsistent(format!("sheet {sheet:?}")))?;
                let t = s
                    .checked_add(*by)
                    .ok_or_else(|| ArithError::ExponentOverflow("sheet shift".into()))?;
                Ok((lo..=hi).contains(&t).then(|| t.to_string()))
            }
            (Lift::Table { map }, _) => match map.get(sheet) {
                Some(t) if self.names.contains(t) => Ok(Some(t.clone())),
                Some(t) => Err(LocalSysError::CoverInconsistent(format!(
                    "lift target {t:?} is not a sheet"
                ))),
                None => Err(LocalSysError::CoverInconsistent(format!(
                    "no lift entry for sheet {sheet:?}"
                ))),
            },
            (Lift::Shift { .. }, None) => Err(LocalSysError::CoverInconsistent(
                "shift lift over labeled sheets".into(),
            )),
        }
    }

    /// Sheet mapped onto `sheet` by the lift (for traversing lifts backwards).
    fn apply_inverse(&self, lift: &Lift, sheet: &str) -> Result<Option<String>, LocalSysError> {
        match (lift, self.window) {
            (Lift::Shift { by }, Some((lo, hi))) => {
                let s: i64 = sheet
                    .parse()
                    .map_err(|_| LocalSysError::CoverInconsistent(format!("sheet {sheet:?}")))?;
                let t = s
                    .checked_sub(*by)
                    .ok_or_else(|| ArithError::ExponentOverflow("sheet shift".into()))?;
                Ok((lo..=hi).contains(&t).then(|| t.to_string()))
            }
            (Lift::Table { map }, _) => {
                let mut pre = map.iter().filter(|(_, v)| v.as_str() == sheet);
                match (pre.next(), pre.next()) {
                    (Some((k, _)), None) => Ok(Some(k.clone())),
                    (None, _) => Err(LocalSysError::CoverInconsistent(format!(
                        "no sheet maps onto {sheet:?}"
                    ))),
                    (Some(_), Some(_)) => Err(LocalSysError::CoverInconsistent(format!(
                        "lift is not injective over {sheet:?}"
                    ))),
                }
            }
            (Lift::Shift { .. }, None) => Err(LocalSysError::CoverInconsistent(
                "shift lift over labeled sheets".into(),
            )),
        }
    }
}

/// Pull a local system back along a covering. Basepoints of the result are
/// base-basepoint/sheet pairs; generator matrices are copied from the base
/// along lifts. Over a truncation window, lifts and relation instances that
/// leave the window are cut and reported in the result.
pub fn ls_pullback(
    l: &LatticeLocalSystem,
    cover: &CoveringSpec,
) -> Result<Pullback, LocalSysError> {
    l.check_shapes()?;
    let sheets = SheetSet::new(&cover.sheets)?;
    for g in &l.presentation.generators {
        if !cover.lifts.contains_key(&g.label) {
            return Err(LocalSysError::CoverInconsistent(format!(
                "no lift rule for generator {:?}",
                g.label
            )));
        }
    }
    // Finite labeled covers must be permutation actions.
    if sheets.window.is_none() {
        for (label, lift) in &cover.lifts {
            if !matches!(lift, Lift::Table { .. }) {
                return Err(LocalSysError::CoverInconsistent(
                    "shift lift over labeled sheets".into(),
                ));
            }
            let mut targets = BTreeSet::new();
            for s in &sheets.names {
                let t = sheets
                    .apply(lift, s)?
                    .expect("finite covers have no boundary");
                if !targets.insert(t) {
                    return Err(LocalSysError::CoverInconsistent(format!(
                        "lift of {label:?} is not a permutation"
                    )));
                }
            }
        }
    }

    let mut basepoints = Vec::new();
    let mut dims = BTreeMap::new();
    for b in &l.presentation.basepoints {
        for s in &sheets.names {
            let name = sheet_point(b, s);
            dims.insert(name.clone(), l.dim(b)?);
            basepoints.push(name);
        }
    }

    let mut generators = Vec::new();
    let mut mats = BTreeMap::new();
    let mut cut_generators = Vec::new();
    for g in &l.presentation.generators {
        let lift = &cover.lifts[&g.label];
        for s in &sheets.names {
            match sheets.apply(lift, s)? {
                Some(t) => {
                    let label = format!("{}@{s}", g.label);
                    generators.push(Generator {
                        label: label.clone(),
                        src: sheet_point(&g.src, s),
                        dst: sheet_point(&g.dst, &t),
                    });
                    mats.insert(label, l.mat(&g.label)?.clone());
                }
                None => cut_generators.push((g.label.clone(), s.clone())),
            }
        }
    }

    let mut relations = Vec::new();
    let mut cut_relations = Vec::new();
    for r in &l.presentation.relations {
        'sheet: for s in &sheets.names {
            let mut word = Vec::with_capacity(r.word.len());
            let mut cur = s.clone();
            for letter in &r.word {
                let lift = &cover.lifts[&letter.g];
                if letter.s >= 0 {
                    match sheets.apply(lift, &cur)? {
                        Some(next) => {
                            word.push(WordLetter::fwd(format!("{}@{cur}", letter.g)));
                            cur = next;
                        }
                        None => {
                            cut_relations.push((r.label.clone(), s.clone()));
                            continue 'sheet;
                        }
                    }
                } else {
                    match sheets.apply_inverse(lift, &cur)? {
                        Some(prev) => {
                            word.push(WordLetter::bwd(format!("{}@{prev}", letter.g)));
                            cur = prev;
                        }
                        None => {
                            cut_relations.push((r.label.clone(), s.clone()));
                            continue 'sheet;
                        }
                    }
                }
            }
            if cur != *s {
                return Err(LocalSysError::CoverInconsistent(format!(
                    "relation {:?} does not close over sheet {s:?}",
                    r.label
                )));
            }
            relations.push(Relation {
                label: format!("{}@{s}", r.label),
                word,
            });
        }
    }

    Ok(Pullback {
        system: LatticeLocalSystem {
            presentation: GroupoidPresentation {
                basepoints,
                generators,
                relations,
            },
            dims,
            mats,
        },
        cut_generators,
        cut_relations,
    })
}
