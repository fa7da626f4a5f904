//! Exact Euler characteristics for the length-n flop family: line bundles
//! on projective n-space and the pairing against the Koszul-resolved
//! exceptional objects. Everything is a polynomial identity in the twist
//! degree, evaluated over the integers.

use num::{BigInt, One, Zero};

use crate::error::GitFlopError;

/// Generalized binomial coefficient: top (top-1) ... (top-k+1) / k!,
/// defined for any integer top.
pub fn binomial(top: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as i64 {
        num *= BigInt::from(top - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Euler characteristic of O(d) on projective n-space: the polynomial
/// (d+1)(d+2)...(d+n)/n!, valid for every integer d. Serre duality is built
/// into the polynomial: chi(n, d) = (-1)^n chi(n, -d - n - 1).
pub fn chi_pn(n: u32, d: i64) -> BigInt {
    binomial(d + n as i64, n)
}

/// Pairing of the i-th exceptional class against O(j) across the
/// length-(n+1) Koszul resolution: the (n+1)-st finite difference of a
/// degree-n polynomial in j - i, hence identically zero.
pub fn euler_pairing_flop(n: u32, i: i64, j: i64) -> BigInt {
    let mut total = BigInt::zero();
    for k in 0..=(n + 1) {
        let term = binomial((n + 1) as i64, k) * chi_pn(n, j - i + k as i64);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Report for a rectangle of pairings.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EulerVanishingReport {
    pub n: u32,
    pub range: i64,
    pub all_zero: bool,
    /// (i, j, value) triples for any nonzero pairing found.
    pub nonzero: Vec<(i64, i64, String)>,
}

pub fn check_euler_vanishing(n: u32, range: i64) -> Result<EulerVanishingReport, GitFlopError> {
    if range < 0 {
        return Err(GitFlopError::Unsupported("negative range".into()));
    }
    let mut nonzero = Vec::new();
    for i in -range..=range {
        for j in -range..=range {
            let v = euler_pairing_flop(n, i, j);
            if !v.is_zero() {
                nonzero.push((i, j, v.to_string()));
            }
        }
    }
    Ok(EulerVanishingReport {
        n,
        range,
        all_zero: nonzero.is_empty(),
        nonzero,
    })
}
