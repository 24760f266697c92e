//! Differential spectrum, differential uniformity, and the APN / x0-APN /
//! 0-APN predicates for power functions x^d on F_2^n.

use crate::gf2n::{FieldCtx, FieldElem};

/// Differential spectrum of x^d. For a power function every a-row of
/// delta_f(a, b) is the a = 1 row rescaled (D_a f(x) = a^d D_1 f(x/a)), so
/// the fast path stores that single row; `spectrum_full` cross-checks it
/// against the exhaustive (a, x) enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffSpectrum {
    pub n: u32,
    pub d_raw: u64,
    pub d: u64,
    /// counts[b] = #{x : (x+1)^d + x^d = b}
    pub counts: Vec<u32>,
    pub uniformity: u32,
}

impl DiffSpectrum {
    /// Multiset histogram: value -> how many b produce that count (zeros omitted).
    pub fn histogram(&self) -> std::collections::BTreeMap<u32, u32> {
        let mut h = std::collections::BTreeMap::new();
        for &c in &self.counts {
            if c > 0 {
                *h.entry(c).or_insert(0) += 1;
            }
        }
        h
    }
}

/// Reduces an analysis exponent per the fpow convention: nonzero multiples of
/// 2^n - 1 act as the all-ones exponent.
pub fn reduce_exponent(ctx: &FieldCtx, d: u64) -> u64 {
    if d == 0 {
        return 0;
    }
    let e = d % ctx.order();
    if e == 0 {
        ctx.order()
    } else {
        e
    }
}

/// Fast single-row spectrum (a = 1).
pub fn spectrum(ctx: &FieldCtx, d: u64) -> DiffSpectrum {
    let size = 1usize << ctx.n();
    let mut counts = vec![0u32; size];
    for x in 0..size as FieldElem {
        let b = ctx.fpow(x ^ 1, d) ^ ctx.fpow(x, d);
        counts[b as usize] += 1;
    }
    let uniformity = counts.iter().copied().max().unwrap_or(0);
    DiffSpectrum {
        n: ctx.n(),
        d_raw: d,
        d: reduce_exponent(ctx, d),
        counts,
        uniformity,
    }
}

/// Slow full-enumeration spectrum over all (a, x); returns one count row per
/// nonzero a so tests can verify the power-function shortcut.
pub fn spectrum_full(ctx: &FieldCtx, d: u64) -> Vec<Vec<u32>> {
    let size = 1usize << ctx.n();
    let mut rows = Vec::with_capacity(size - 1);
    for a in 1..size as FieldElem {
        let mut counts = vec![0u32; size];
        for x in 0..size as FieldElem {
            let b = ctx.fpow(x ^ a, d) ^ ctx.fpow(x, d);
            counts[b as usize] += 1;
        }
        rows.push(counts);
    }
    rows
}

pub fn uniformity(ctx: &FieldCtx, d: u64) -> u32 {
    spectrum(ctx, d).uniformity
}

pub fn is_apn(ctx: &FieldCtx, d: u64) -> bool {
    uniformity(ctx, d) == 2
}

/// Counts x outside {0, 1} with (x+1)^d + x^d + 1 = 0; the function is 0-APN
/// exactly when the count is zero.
pub fn zero_apn_solution_count(ctx: &FieldCtx, d: u64) -> u64 {
    let size = 1u64 << ctx.n();
    let mut count = 0;
    for x in 2..size {
        let x = x as FieldElem;
        if ctx.fpow(x ^ 1, d) ^ ctx.fpow(x, d) ^ 1 == 0 {
            count += 1;
        }
    }
    count
}

pub fn is_zero_apn(ctx: &FieldCtx, d: u64) -> bool {
    zero_apn_solution_count(ctx, d) == 0
}

/// The exhaustive triple test: f is x0-APN iff every (x, y) with
/// f(x0) + f(x) + f(y) + f(x0+x+y) = 0 lies on (x0+x)(x0+y)(x+y) = 0.
pub fn is_x0_apn(ctx: &FieldCtx, d: u64, x0: FieldElem) -> bool {
    let size = 1u32 << ctx.n();
    let fx0 = ctx.fpow(x0, d);
    for x in 0..size {
        let fx = ctx.fpow(x, d);
        for y in 0..size {
            if x == x0 || y == x0 || x == y {
                continue;
            }
            if fx0 ^ fx ^ ctx.fpow(y, d) ^ ctx.fpow(x0 ^ x ^ y, d) == 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apn_anchors() {
        assert_eq!(uniformity(&FieldCtx::new(7).unwrap(), 5), 2);
        assert!(is_apn(&FieldCtx::new(4).unwrap(), 3));
    }

    #[test]
    fn linear_map_is_degenerate() {
        let ctx = FieldCtx::new(5).unwrap();
        assert_eq!(uniformity(&ctx, 1), 32);
        assert_eq!(zero_apn_solution_count(&ctx, 1), 30);
        assert!(!is_x0_apn(&ctx, 1, 0));
    }

    #[test]
    fn table_one_anchor_pairs() {
        let ctx7 = FieldCtx::new(7).unwrap();
        assert!(is_zero_apn(&ctx7, 21) && !is_apn(&ctx7, 21));
        assert!(is_x0_apn(&ctx7, 21, 0));
        let ctx6 = FieldCtx::new(6).unwrap();
        assert!(is_zero_apn(&ctx6, 27) && !is_apn(&ctx6, 27));
        assert!(!is_zero_apn(&ctx6, 7));
    }
}
