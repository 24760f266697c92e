//! Sylvester resultants: scalar resultants of univariate polynomials over
//! F_2, and elimination resultants of bivariate polynomials whose Sylvester
//! matrix has BitPoly entries. The elimination determinant runs through a
//! registry of strategies — fraction-free Bareiss elimination and
//! evaluation–interpolation over a large extension field — and the two are
//! cross-checked on every call.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2n::{FieldCtx, FieldError};
use crate::gf2poly::{BitPoly, PolyError};

#[derive(Debug, Error)]
pub enum ResultantError {
    #[error("resultant of two constants is undefined")]
    BothConstant,
    #[error("elimination requires positive y-degree on both inputs")]
    ZeroYDegree,
    #[error("polynomial has an irreducible factor of degree {factor_degree} not splitting in F_2^{ext}")]
    DoesNotSplit { factor_degree: usize, ext: u32 },
    #[error("determinant strategies disagree: {0} vs {1}")]
    StrategiesDisagree(String, String),
    #[error("interpolation produced a coefficient outside F_2")]
    NonBinaryCoefficient,
    #[error("cannot parse bivariate polynomial: {0}")]
    Parse(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A polynomial in F_2[x][y]: coefficient i is the BitPoly-in-x multiplying
/// y^i; the top stored coefficient is nonzero unless the whole is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<BitPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BitPoly>) -> Self {
        while coeffs.last().map_or(false, BitPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BitPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Formal y-degree of the stored representation.
    pub fn y_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(BitPoly::degree).max()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // terms descending by (x-degree, y-degree), matching the multivariate format
        let mut terms: Vec<(usize, usize)> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            for i in c.support() {
                terms.push((i, j));
            }
        }
        terms.sort_unstable_by(|a, b| b.cmp(a));
        let mut first = true;
        for (i, j) in terms {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            if parts.is_empty() {
                f.write_str("1")?;
            } else {
                f.write_str(&parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl FromStr for BiPoly {
    type Err = ResultantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut coeffs: Vec<BitPoly> = Vec::new();
        let bad = || ResultantError::Parse(s.into());
        for term in s.trim().split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (mut dx, mut dy) = (0usize, 0usize);
            if term != "1" {
                for part in term.split('*') {
                    let (var, exp) = match part.split_once('^') {
                        Some((v, e)) => (v, e.parse::<usize>().map_err(|_| bad())?),
                        None => (part, 1),
                    };
                    match var {
                        "x" => dx += exp,
                        "y" => dy += exp,
                        _ => return Err(bad()),
                    }
                }
            }
            if coeffs.len() <= dy {
                coeffs.resize(dy + 1, BitPoly::zero());
            }
            // XOR semantics: repeated monomials cancel
            coeffs[dy] = coeffs[dy].add(&BitPoly::monomial(dx));
        }
        Ok(BiPoly::from_coeffs(coeffs))
    }
}

// ---------------------------------------------------------------------------
// Scalar resultants
// ---------------------------------------------------------------------------

/// Sylvester determinant of two univariate polynomials over F_2 (order
/// deg f + deg g); zero iff they share a nonconstant factor.
pub fn res_scalar(f: &BitPoly, g: &BitPoly) -> Result<bool, ResultantError> {
    let df = f.degree().unwrap_or(0);
    let dg = g.degree().unwrap_or(0);
    if f.is_zero() || g.is_zero() {
        // a zero polynomial shares every factor
        return Ok(false);
    }
    if df == 0 && dg == 0 {
        return Err(ResultantError::BothConstant);
    }
    let n = df + dg;
    // rows as bitmasks over columns 0..n, column c = coefficient slot
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let words = n / 64 + 1;
    let mut push_row = |p: &BitPoly, d: usize, r: usize| {
        let mut row = vec![0u64; words];
        for (j, col) in (0..=d).map(|j| (j, r + j)) {
            if p.coeff(d - j) {
                row[col / 64] |= 1 << (col % 64);
            }
        }
        rows.push(row);
    };
    for r in 0..dg {
        push_row(f, df, r);
    }
    for r in 0..df {
        push_row(g, dg, r);
    }
    // Gaussian elimination over F_2
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| rows[r][col / 64] >> (col % 64) & 1 == 1) else {
            return Ok(false);
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col / 64] >> (col % 64) & 1 == 1 {
                for (w, pw) in row.iter_mut().zip(&pivot_row) {
                    *w ^= pw;
                }
            }
        }
        rank += 1;
    }
    Ok(true)
}

/// Checks Res(f, g) = prod over the roots of f (with multiplicity, in the
/// splitting field) of g evaluated there, against the determinant. The
/// product is computed factor-by-factor as a norm from F_2^deg(p), so
/// `ext_degree` is only validated (every factor degree must divide it).
pub fn res_product_formula_check(
    f: &BitPoly,
    g: &BitPoly,
    ext_degree: u32,
) -> Result<bool, ResultantError> {
    let det = res_scalar(f, g)?;
    if g.is_zero() {
        return Ok(!det);
    }
    let mut product = true; // empty product = 1
    for (p, mult) in f.factor()?.factors() {
        let t = p.degree().expect("irreducible factors are nonconstant");
        if ext_degree as usize % t != 0 {
            return Err(ResultantError::DoesNotSplit {
                factor_degree: t,
                ext: ext_degree,
            });
        }
        let value = if t == 1 {
            // root is 0 (factor x) or 1 (factor x+1)
            if p.coeff(0) {
                g.support().count() % 2 == 1 // g(1)
            } else {
                g.coeff(0) // g(0)
            }
        } else {
            // norm of g(alpha) from F_2^t down to F_2, alpha a root of p
            let ctx = FieldCtx::with_modulus(t as u32, p.clone())?;
            let v = ctx.eval_poly(g, 0b10);
            let mut norm = v;
            let mut conj = v;
            for _ in 1..t {
                conj = ctx.fmul(conj, conj);
                norm = ctx.fmul(norm, conj);
            }
            debug_assert!(norm <= 1, "norm lands in F_2");
            norm == 1
        };
        if !value && *mult > 0 {
            product = false;
        }
    }
    Ok(product == det)
}

// ---------------------------------------------------------------------------
// Determinants of BitPoly matrices: the strategy registry
// ---------------------------------------------------------------------------

pub trait DetStrategy: Sync + Send {
    fn name(&self) -> &'static str;
    fn det(&self, matrix: &[Vec<BitPoly>]) -> Result<BitPoly, ResultantError>;
}

/// Fraction-free Bareiss elimination over F_2[x]; every division is exact.
pub struct BareissDet;

impl DetStrategy for BareissDet {
    fn name(&self) -> &'static str {
        "bareiss"
    }

    fn det(&self, matrix: &[Vec<BitPoly>]) -> Result<BitPoly, ResultantError> {
        let n = matrix.len();
        if n == 0 {
            return Ok(BitPoly::one());
        }
        let mut m: Vec<Vec<BitPoly>> = matrix.to_vec();
        let mut prev = BitPoly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Ok(BitPoly::zero());
                };
                m.swap(k, swap); // over F_2 a row swap does not change the sign
            }
            let pivot = m[k][k].clone();
            let pivot_row = m[k].clone();
            for row in m.iter_mut().skip(k + 1) {
                let lead = std::mem::replace(&mut row[k], BitPoly::zero());
                for j in k + 1..n {
                    let t = row[j].mul(&pivot).add(&lead.mul(&pivot_row[j]));
                    row[j] = t.div_exact(&prev)?;
                }
            }
            prev = pivot;
        }
        Ok(m[n - 1][n - 1].clone())
    }
}

/// Evaluation–interpolation: entries are evaluated at 2^m field points with
/// 2^m exceeding the row-sum degree bound, numeric determinants taken, and
/// the result interpolated back to F_2[x].
pub struct EvalInterpDet;

impl DetStrategy for EvalInterpDet {
    fn name(&self) -> &'static str {
        "eval-interp"
    }

    fn det(&self, matrix: &[Vec<BitPoly>]) -> Result<BitPoly, ResultantError> {
        let n = matrix.len();
        if n == 0 {
            return Ok(BitPoly::one());
        }
        // Hadamard-style bound: sum over rows of the max entry degree
        let bound: usize = matrix
            .iter()
            .map(|row| row.iter().filter_map(BitPoly::degree).max().unwrap_or(0))
            .sum();
        let mut m = 1u32;
        while (1usize << m) <= bound + 1 {
            m += 1;
        }
        let ctx = FieldCtx::new(m)?;
        let points: Vec<u32> = (0..=bound as u32).collect();
        let values: Vec<u32> = points
            .par_iter()
            .map(|&at| {
                let numeric: Vec<Vec<u32>> = matrix
                    .iter()
                    .map(|row| row.iter().map(|p| ctx.eval_poly(p, at)).collect())
                    .collect();
                field_det(&ctx, numeric)
            })
            .collect();
        let coeffs = lagrange_interpolate(&ctx, &points, &values);
        let mut out = BitPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => out = out.add(&BitPoly::monomial(i)),
                _ => return Err(ResultantError::NonBinaryCoefficient),
            }
        }
        Ok(out)
    }
}

fn field_det(ctx: &FieldCtx, mut a: Vec<Vec<u32>>) -> u32 {
    let n = a.len();
    let mut det: u32 = 1;
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        a.swap(k, pivot);
        let inv = ctx.finv(a[k][k]).expect("nonzero pivot");
        det = ctx.fmul(det, a[k][k]);
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            if row[k] == 0 {
                continue;
            }
            let factor = ctx.fmul(row[k], inv);
            for j in k..n {
                row[j] ^= ctx.fmul(factor, pivot_row[j]);
            }
        }
    }
    det
}

/// Lagrange interpolation over F_2^m through the given distinct points.
fn lagrange_interpolate(ctx: &FieldCtx, xs: &[u32], ys: &[u32]) -> Vec<u32> {
    let n = xs.len();
    // master polynomial prod (X - x_i); char 2, so subtraction is XOR
    let mut master = vec![0u32; n + 1];
    master[0] = 1;
    for (i, &x) in xs.iter().enumerate() {
        // multiply by (X + x)
        for j in (0..=i).rev() {
            let scaled = ctx.fmul(master[j], x);
            master[j + 1] ^= master[j];
            master[j] = scaled;
        }
        // rebuild: new[j+1] += old[j]; new[j] = old[j]*x — done in place above
        let _ = x;
    }
    let mut acc = vec![0u32; n];
    let mut quotient = vec![0u32; n];
    for (i, (&x, &y)) in xs.iter().zip(ys).enumerate() {
        let _ = i;
        if y == 0 {
            continue;
        }
        // synthetic division of master by (X - x)
        let mut carry: u32 = 0;
        for j in (0..n).rev() {
            carry = master[j + 1] ^ ctx.fmul(carry, x);
            quotient[j] = carry;
        }
        // denominator = quotient evaluated at x = master'(x)
        let mut denom: u32 = 0;
        for j in (0..n).rev() {
            denom = ctx.fmul(denom, x) ^ quotient[j];
        }
        let scale = ctx.fmul(y, ctx.finv(denom).expect("distinct points"));
        for j in 0..n {
            acc[j] ^= ctx.fmul(scale, quotient[j]);
        }
    }
    acc
}

pub fn det_strategies() -> &'static [&'static dyn DetStrategy] {
    static REGISTRY: [&dyn DetStrategy; 2] = [&BareissDet, &EvalInterpDet];
    &REGISTRY
}

/// Determinant computed by the primary strategy and verified against every
/// other registered strategy.
pub fn checked_det(matrix: &[Vec<BitPoly>]) -> Result<BitPoly, ResultantError> {
    let strategies = det_strategies();
    let primary = strategies[0].det(matrix)?;
    for s in &strategies[1..] {
        let other = s.det(matrix)?;
        if other != primary {
            return Err(ResultantError::StrategiesDisagree(
                strategies[0].name().into(),
                s.name().into(),
            ));
        }
    }
    Ok(primary)
}

/// Builds the Sylvester matrix of F and G with respect to y (order
/// y_deg F + y_deg G, entries in F_2[x]).
pub fn sylvester_matrix(f: &BiPoly, g: &BiPoly) -> Result<Vec<Vec<BitPoly>>, ResultantError> {
    let df = f.y_degree().filter(|&d| d > 0).ok_or(ResultantError::ZeroYDegree)?;
    let dg = g.y_degree().filter(|&d| d > 0).ok_or(ResultantError::ZeroYDegree)?;
    let n = df + dg;
    let mut m = vec![vec![BitPoly::zero(); n]; n];
    for r in 0..dg {
        for j in 0..=df {
            m[r][r + j] = f.coeffs()[df - j].clone();
        }
    }
    for r in 0..df {
        for j in 0..=dg {
            m[dg + r][r + j] = g.coeffs()[dg - j].clone();
        }
    }
    Ok(m)
}

/// Res(F, G, y): eliminates y, returning a univariate polynomial in x that
/// vanishes at the x-coordinate of every common zero. Both determinant
/// strategies are run and must agree.
pub fn res_eliminate(f: &BiPoly, g: &BiPoly) -> Result<BitPoly, ResultantError> {
    checked_det(&sylvester_matrix(f, g)?)
}
