//! CCZ equivalence of power exponents: two exponents are equivalent iff one
//! lies in the doubling (cyclotomic) coset of the other, or their product is
//! a power of two modulo 2^n - 1. Canonicalization therefore unions the
//! doubling coset with the doubling coset of the modular inverse when the
//! exponent is invertible.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CczError {
    #[error("exponent reduces to 0 mod 2^{0} - 1")]
    ZeroExponent(u32),
}

/// A CCZ class of exponents mod 2^n - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentClass {
    pub n: u32,
    /// Closed under doubling, and under inversion when any member is invertible.
    pub members: BTreeSet<u64>,
    pub canonical: u64,
}

fn order(n: u32) -> u64 {
    (1u64 << n) - 1
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The doubling (2-cyclotomic) coset of d mod 2^n - 1.
pub fn doubling_coset(n: u32, d: u64) -> BTreeSet<u64> {
    let m = order(n);
    let mut out = BTreeSet::new();
    let mut e = d % m;
    while out.insert(e) {
        e = (2 * e) % m;
    }
    out
}

/// Minimum of the doubling coset — the representative convention used when
/// exponent tables list one member per Frobenius orbit.
pub fn coset_leader(n: u32, d: u64) -> u64 {
    *doubling_coset(n, d).iter().next().expect("nonempty coset")
}

/// Full CCZ class of d.
pub fn exponent_class(n: u32, d: u64) -> Result<ExponentClass, CczError> {
    let m = order(n);
    let d = d % m;
    if d == 0 {
        return Err(CczError::ZeroExponent(n));
    }
    let mut members = doubling_coset(n, d);
    if gcd(d, m) == 1 {
        let inv = mod_inverse(d, m).expect("gcd 1 implies invertible");
        members.extend(doubling_coset(n, inv));
    }
    let canonical = *members.iter().next().unwrap();
    Ok(ExponentClass { n, members, canonical })
}

/// Minimum over the doubling coset of d united with that of d^-1 (when
/// invertible).
pub fn canonical_rep(n: u32, d: u64) -> Result<u64, CczError> {
    Ok(exponent_class(n, d)?.canonical)
}

pub fn are_ccz_equiv(n: u32, d1: u64, d2: u64) -> Result<bool, CczError> {
    Ok(canonical_rep(n, d1)? == canonical_rep(n, d2)?)
}

/// Deduplicated classes of the given exponents, sorted by canonical member.
pub fn distinct_classes(n: u32, ds: &[u64]) -> Vec<ExponentClass> {
    let mut out: Vec<ExponentClass> = Vec::new();
    for &d in ds {
        if let Ok(class) = exponent_class(n, d) {
            if !out.iter().any(|c| c.canonical == class.canonical) {
                out.push(class);
            }
        }
    }
    out.sort_by_key(|c| c.canonical);
    out
}
