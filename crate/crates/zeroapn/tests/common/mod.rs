//! Independent oracles for the test suite, written against the definitions
//! rather than the library's optimized paths: a double-loop differential
//! spectrum and a cofactor-expansion resultant. Deliberately slow and simple.

#![allow(dead_code)]

use zeroapn::gf2n::FieldCtx;
use zeroapn::gf2poly::BitPoly;

/// Differential counts for a = 1 by the definition: for each b, count x with
/// (x + 1)^d + x^d = b. Usable for n <= 10.
pub fn naive_spectrum(ctx: &FieldCtx, d: u64) -> Vec<u32> {
    assert!(ctx.n() <= 10, "oracle is quadratic; keep n small");
    let size = 1u32 << ctx.n();
    let mut counts = vec![0u32; size as usize];
    for b in 0..size {
        for x in 0..size {
            if ctx.fpow(x ^ 1, d) ^ ctx.fpow(x, d) == b {
                counts[b as usize] += 1;
            }
        }
    }
    counts
}

/// Resultant of two univariate polynomials over F_2 — a single bit — via the
/// scalar Sylvester matrix and Laplace cofactor expansion.
/// Usable for deg f + deg g <= 12.
pub fn cofactor_resultant(f: &BitPoly, g: &BitPoly) -> bool {
    let df = f.degree().expect("nonzero f");
    let dg = g.degree().expect("nonzero g");
    assert!(df + dg <= 12, "oracle is factorial; keep degrees small");
    if df == 0 && dg == 0 {
        panic!("resultant of two constants is undefined");
    }
    let n = df + dg;
    let mut m = vec![vec![false; n]; n];
    for r in 0..dg {
        for j in 0..=df {
            m[r][r + j] = f.coeff(df - j);
        }
    }
    for r in 0..df {
        for j in 0..=dg {
            m[dg + r][r + j] = g.coeff(dg - j);
        }
    }
    laplace_det(&m, &(0..n).collect::<Vec<_>>())
}

fn laplace_det(m: &[Vec<bool>], cols: &[usize]) -> bool {
    let row = m.len() - cols.len();
    if cols.is_empty() {
        return true;
    }
    let mut acc = false;
    for (i, &c) in cols.iter().enumerate() {
        if m[row][c] {
            let rest: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &c)| c)
                .collect();
            acc ^= laplace_det(m, &rest);
        }
    }
    acc
}
