//! Resultant-layer properties: the scalar resultant against the cofactor
//! oracle and the gcd criterion, dual determinant strategies against each
//! other, and the product formula against direct elimination.

mod common;

use proptest::prelude::*;
use zeroapn::gf2poly::BitPoly;
use zeroapn::resultant::{
    checked_det, res_eliminate, res_product_formula_check, res_scalar, sylvester_matrix, BiPoly,
};

fn arb_poly(max_deg: usize) -> impl Strategy<Value = BitPoly> {
    prop::collection::vec(any::<bool>(), 1..=max_deg + 1).prop_map(|bits| {
        let mut p = BitPoly::zero();
        for (i, b) in bits.iter().enumerate() {
            if *b {
                p = p.add(&BitPoly::monomial(i));
            }
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// res(f, g) = 0 iff gcd(f, g) is nonconstant.
    #[test]
    fn scalar_resultant_gcd_criterion(f in arb_poly(10), g in arb_poly(10)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assume!(f.degree() > Some(0) || g.degree() > Some(0));
        let r = res_scalar(&f, &g).unwrap();
        let gcd_trivial = f.gcd(&g).unwrap().degree() == Some(0);
        prop_assert_eq!(r, gcd_trivial);
    }

    /// The scalar resultant matches the Laplace cofactor oracle.
    #[test]
    fn scalar_resultant_matches_oracle(f in arb_poly(6), g in arb_poly(6)) {
        prop_assume!(f.degree() > Some(0) && g.degree() > Some(0));
        prop_assume!(f.degree().unwrap() + g.degree().unwrap() <= 12);
        prop_assert_eq!(res_scalar(&f, &g).unwrap(), common::cofactor_resultant(&f, &g));
    }

    /// Multiplicativity: res(fg, h) = res(f, h) * res(g, h).
    #[test]
    fn scalar_resultant_multiplicative(f in arb_poly(5), g in arb_poly(5), h in arb_poly(5)) {
        prop_assume!(f.degree() > Some(0) && g.degree() > Some(0) && h.degree() > Some(0));
        let lhs = res_scalar(&f.mul(&g), &h).unwrap();
        let rhs = res_scalar(&f, &h).unwrap() && res_scalar(&g, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Fraction-free elimination and evaluation–interpolation agree on the
    /// Sylvester determinant of random bivariate inputs (checked_det panics
    /// into StrategiesDisagree otherwise).
    #[test]
    fn dual_strategies_agree(
        fc in prop::collection::vec(arb_poly(4), 2..=4),
        gc in prop::collection::vec(arb_poly(4), 2..=4),
    ) {
        let f = BiPoly::from_coeffs(fc);
        let g = BiPoly::from_coeffs(gc);
        prop_assume!(f.y_degree().unwrap_or(0) > 0 && g.y_degree().unwrap_or(0) > 0);
        let m = sylvester_matrix(&f, &g).unwrap();
        let _ = checked_det(&m).unwrap();
    }

    /// Specialization: substituting y = c into f and g before taking the
    /// scalar resultant agrees with evaluating Res_y at nothing — instead we
    /// check Res_y(f, g) vanishes at x = c exactly when f(x=c, y) and
    /// g(x=c, y) share a root over the algebraic closure, via the gcd test.
    #[test]
    fn eliminant_vanishing_matches_common_roots(
        fc in prop::collection::vec(arb_poly(3), 2..=3),
        gc in prop::collection::vec(arb_poly(3), 2..=3),
    ) {
        let f = BiPoly::from_coeffs(fc);
        let g = BiPoly::from_coeffs(gc);
        prop_assume!(f.y_degree().unwrap_or(0) > 0 && g.y_degree().unwrap_or(0) > 0);
        let r = res_eliminate(&f, &g).unwrap();
        for c in [BitPoly::zero(), BitPoly::one()] {
            let fe = eval_x(&f, &c);
            let ge = eval_x(&g, &c);
            // Degenerate specializations (leading coefficient vanishing)
            // change the resultant degree; skip those.
            if fe.degree() != f.y_degree() || ge.degree() != g.y_degree() {
                continue;
            }
            let share_root = fe.gcd(&ge).unwrap().degree() != Some(0);
            let r_at_c = if c.is_zero() { r.coeff(0) } else { r.support().count() % 2 == 1 };
            prop_assert_eq!(!r_at_c, share_root);
        }
    }
}

fn eval_x(p: &BiPoly, c: &BitPoly) -> BitPoly {
    // y-polynomial obtained by substituting x = c (c in {0, 1} suffices here)
    let mut out = BitPoly::zero();
    for (j, cx) in p.coeffs().iter().enumerate() {
        let bit = if c.is_zero() {
            cx.coeff(0)
        } else {
            cx.support().count() % 2 == 1
        };
        if bit {
            out = out.add(&BitPoly::monomial(j));
        }
    }
    out
}

#[test]
fn product_formula_random_inputs() {
    // Deterministic xorshift stream; 1000 pairs of degree <= 6 inputs.
    let mut state = 0x9E3779B97F4A7C15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut checked = 0;
    while checked < 1000 {
        let f = BitPoly::from_bits(next() & 0x7F);
        let g = BitPoly::from_bits(next() & 0x7F);
        if f.degree().map_or(true, |d| d == 0) || g.is_zero() {
            continue;
        }
        // lcm(1..6) = 60: every factor of a degree <= 6 input splits there
        let ok = res_product_formula_check(&f, &g, 60).unwrap_or_else(|e| panic!("{f}, {g}: {e}"));
        assert!(ok, "product formula disagrees with determinant: f={f} g={g}");
        checked += 1;
    }
}

#[test]
fn resultant_zero_iff_nonconstant_gcd_exhaustive() {
    // All pairs of nonzero polynomials of degree <= 5 with at least one
    // nonconstant input.
    for fb in 1u64..64 {
        for gb in 1u64..64 {
            let f = BitPoly::from_bits(fb);
            let g = BitPoly::from_bits(gb);
            if f.degree() == Some(0) && g.degree() == Some(0) {
                continue;
            }
            let r = res_scalar(&f, &g).unwrap();
            let trivial = f.gcd(&g).unwrap().degree() == Some(0);
            assert_eq!(r, trivial, "f={f} g={g}");
        }
    }
}
