//! Braid words and the word problem.
//!
//! Generators σ_i are indexed by arbitrary integers (the stable group with
//! finitely supported words); a word is a finite sequence of signed letters.
//! Equality of words is decided through the action on the free group on
//! generators x_i: σ_i sends x_i to x_i x_{i+1} x_i^{-1} and x_{i+1} to x_i.
//! That action is faithful, so two words are equal iff their endomorphisms
//! agree, and the endomorphisms are compared on the union of supports since
//! both act as the identity elsewhere.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One letter σ_i^{±1}. JSON: `{"i": index, "s": 1}` or `{"i": index, "s": -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidLetter {
    pub i: i64,
    pub s: i8,
}

impl BraidLetter {
    pub fn gen(i: i64) -> Self {
        BraidLetter { i, s: 1 }
    }

    pub fn inv(i: i64) -> Self {
        BraidLetter { i, s: -1 }
    }

    pub fn inverse(self) -> Self {
        BraidLetter {
            i: self.i,
            s: -self.s,
        }
    }
}

/// A braid word; letters apply left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BraidWord(pub Vec<BraidLetter>);

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        BraidWord(letters)
    }

    /// Compact text form: whitespace-separated nonzero integers, the sign of
    /// each integer being the sign of the letter. `"1 2 -1"` is
    /// σ_1 σ_2 σ_1^{-1}. Index 0 and negative indices need the JSON form.
    pub fn parse_compact(text: &str) -> Result<Self, String> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let n: i64 = tok
                .parse()
                .map_err(|_| format!("bad braid letter {tok:?}"))?;
            if n == 0 {
                return Err("braid letter 0 has no sign; use the JSON form".into());
            }
            letters.push(BraidLetter {
                i: n.abs(),
                s: if n > 0 { 1 } else { -1 },
            });
        }
        Ok(BraidWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, rhs: &BraidWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        BraidWord(v)
    }

    /// Indices of free-group generators the word can move.
    pub fn support(&self) -> Vec<i64> {
        let mut s: Vec<i64> = self
            .0
            .iter()
            .flat_map(|l| [l.i, l.i.checked_add(1).expect("braid index overflow")])
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}{}", l.i, if l.s > 0 { "" } else { "^-1" })?;
        }
        Ok(())
    }
}

/// Freely reduced word in the free group on generators x_i.
/// JSON: array of `{"g": index, "s": ±1}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeWord(Vec<FreeLetter>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeLetter {
    pub g: i64,
    pub s: i8,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(g: i64) -> Self {
        FreeWord(vec![FreeLetter { g, s: 1 }])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (i64, i8)>) -> Self {
        let mut w = FreeWord::default();
        for (g, s) in letters {
            w.push(FreeLetter { g, s });
        }
        w
    }

    fn push(&mut self, l: FreeLetter) {
        match self.0.last() {
            Some(last) if last.g == l.g && last.s == -l.s => {
                self.0.pop();
            }
            _ => self.0.push(l),
        }
    }

    fn extend_reduced(&mut self, other: &FreeWord, invert: bool) {
        if invert {
            for l in other.0.iter().rev() {
                self.push(FreeLetter { g: l.g, s: -l.s });
            }
        } else {
            for l in &other.0 {
                self.push(*l);
            }
        }
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    fn is_single_generator(&self, g: i64) -> bool {
        self.0.len() == 1 && self.0[0].g == g && self.0[0].s == 1
    }
}

/// Endomorphism of the free group, finitely supported: generators absent
/// from the map are fixed. JSON: map from generator index to image word.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeGroupEndo {
    images: BTreeMap<i64, FreeWord>,
}

impl FreeGroupEndo {
    pub fn identity() -> Self {
        FreeGroupEndo::default()
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }

    fn set_image(&mut self, g: i64, w: FreeWord) {
        if w.is_single_generator(g) {
            self.images.remove(&g);
        } else {
            self.images.insert(g, w);
        }
    }

    pub fn image(&self, g: i64) -> FreeWord {
        self.images
            .get(&g)
            .cloned()
            .unwrap_or_else(|| FreeWord::generator(g))
    }

    /// Substitute images for letters and freely reduce.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = FreeWord::identity();
        for l in w.letters() {
            match self.images.get(&l.g) {
                None => out.push(*l),
                Some(img) => out.extend_reduced(img, l.s < 0),
            }
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FreeGroupEndo) -> FreeGroupEndo {
        let mut out = FreeGroupEndo::identity();
        for (&g, w) in &other.images {
            out.set_image(g, self.apply(w));
        }
        for (&g, w) in &self.images {
            if !other.images.contains_key(&g) {
                out.set_image(g, w.clone());
            }
        }
        out
    }
}

fn letter_endo(l: BraidLetter) -> FreeGroupEndo {
    let i = l.i;
    let j = i.checked_add(1).expect("braid index overflow");
    let mut e = FreeGroupEndo::identity();
    if l.s > 0 {
        // x_i -> x_i x_{i+1} x_i^{-1},  x_{i+1} -> x_i
        e.set_image(i, FreeWord::from_letters([(i, 1), (j, 1), (i, -1)]));
        e.set_image(j, FreeWord::generator(i));
    } else {
        // x_i -> x_{i+1},  x_{i+1} -> x_{i+1}^{-1} x_i x_{i+1}
        e.set_image(i, FreeWord::generator(j));
        e.set_image(j, FreeWord::from_letters([(j, -1), (i, 1), (j, 1)]));
    }
    e
}

/// The induced free-group endomorphism. Composition matches word order:
/// `braid_act_free(v.concat(w)) = braid_act_free(v) ∘ braid_act_free(w)`.
pub fn braid_act_free(w: &BraidWord) -> FreeGroupEndo {
    let mut e = FreeGroupEndo::identity();
    for &l in &w.0 {
        e = e.compose(&letter_endo(l));
    }
    e
}

/// Word problem: the action is faithful, so images decide equality. Both
/// endomorphisms fix everything outside their stored supports, which makes
/// map equality the right comparison.
pub fn braid_equal(w1: &BraidWord, w2: &BraidWord) -> bool {
    braid_act_free(w1) == braid_act_free(w2)
}
