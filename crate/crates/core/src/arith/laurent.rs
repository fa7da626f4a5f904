//! Integer Laurent polynomials in one variable t.
//!
//! Exponents are signed machine integers and overflow is a reported error,
//! not wraparound; coefficients are big integers. JSON encoding is a map
//! from stringified exponent to coefficient, e.g. `{"-1": 1, "0": -2}`.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::ArithError;

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// `c * t^e`.
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut p = LaurentPoly::default();
        if c != 0 {
            p.terms.insert(e, BigInt::from(c));
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = LaurentPoly::default();
        for (e, c) in terms {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Exponent span `max - min`; zero for monomials and the zero polynomial.
    pub fn degree_span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    fn add_term(&mut self, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, &(-c));
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, k)| (e, k * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> Result<LaurentPoly, ArithError> {
        let mut out = LaurentPoly::default();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                let e = e1
                    .checked_add(e2)
                    .ok_or_else(|| ArithError::ExponentOverflow("mul".into()))?;
                out.add_term(e, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Result<LaurentPoly, ArithError> {
        let mut out = LaurentPoly::default();
        for (e, c) in self.terms() {
            let e = e
                .checked_add(k)
                .ok_or_else(|| ArithError::ExponentOverflow("shift".into()))?;
            out.terms.insert(e, c.clone());
        }
        Ok(out)
    }

    /// True when the support lies inside `[lo, hi]`.
    pub fn supported_in(&self, lo: i64, hi: i64) -> bool {
        self.terms.keys().all(|&e| lo <= e && e <= hi)
    }

    /// Coefficient vector on the exponent interval `[lo, hi]`.
    pub fn coeff_vec(&self, lo: i64, hi: i64) -> Vec<BigInt> {
        (lo..=hi).map(|e| self.coeff(e)).collect()
    }
}

/// Reduce `p` modulo the principal ideal of `modulus` into the exponent
/// window `[window.0, window.1]` (inclusive). Requires the leading and
/// trailing coefficients of `modulus` to be ±1 and the window length to be
/// exactly the degree span of `modulus`, which makes the reduced form unique
/// and the reduction a bijection on length-span coefficient windows.
pub fn laurent_reduce(
    p: &LaurentPoly,
    modulus: &LaurentPoly,
    window: (i64, i64),
) -> Result<LaurentPoly, ArithError> {
    let (lo, hi) = window;
    if modulus.is_zero() {
        return Err(ArithError::BadModulus("zero modulus".into()));
    }
    let span = modulus.degree_span();
    if span == 0 {
        return Err(ArithError::BadModulus(
            "modulus is a monomial; quotient is zero".into(),
        ));
    }
    let (mlo, mhi) = (modulus.min_exp().unwrap(), modulus.max_exp().unwrap());
    let lead = modulus.coeff(mhi);
    let trail = modulus.coeff(mlo);
    if !lead.abs().is_one() || !trail.abs().is_one() {
        return Err(ArithError::BadModulus(format!(
            "leading/trailing coefficients {lead}, {trail} are not \u{b1}1"
        )));
    }
    if hi - lo + 1 != span {
        return Err(ArithError::BadWindow { lo, hi, span });
    }

    let mut r = p.clone();
    // Knock the top down into the window: each step cancels the current
    // maximal exponent and only introduces strictly smaller ones.
    while let Some(e) = r.max_exp() {
        if e <= hi {
            break;
        }
        let c = r.coeff(e);
        let q = &c / &lead; // lead is ±1, exact
        let shifted = modulus.shift(e - mhi)?.scale(&q);
        r = r.sub(&shifted);
    }
    // Then push the bottom up; new terms stay within span of the eliminated
    // exponent, hence never overshoot `hi`.
    while let Some(e) = r.min_exp() {
        if e >= lo {
            break;
        }
        let c = r.coeff(e);
        let q = &c / &trail;
        let shifted = modulus.shift(e - mlo)?.scale(&q);
        r = r.sub(&shifted);
    }
    debug_assert!(r.supported_in(lo, hi));
    Ok(r)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*t^{e}")?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.terms() {
            let c: i64 = c.try_into().map_err(|_| {
                serde::ser::Error::custom(format!("coefficient {c} exceeds the JSON integer range"))
            })?;
            map.serialize_entry(&e.to_string(), &c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, i64>::deserialize(deserializer)?;
        let mut p = LaurentPoly::default();
        for (k, c) in raw {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad exponent key {k:?}")))?;
            p.add_term(e, &BigInt::from(c));
        }
        Ok(p)
    }
}
