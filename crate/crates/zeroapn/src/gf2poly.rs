//! Univariate polynomials over F_2 with bit-packed coefficients: exact
//! arithmetic, gcd, irreducibility testing, and complete factorization.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("operation requires a nonconstant polynomial")]
    ConstantInput,
    #[error("operation requires a nonzero polynomial")]
    ZeroInput,
    #[error("polynomial is not a perfect square")]
    NotASquare,
    #[error("division is not exact")]
    InexactDivision,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// A polynomial over F_2. Bit `i` of the little-endian word vector is the
/// coefficient of `x^i`; the vector never has trailing zero words, so the
/// zero polynomial is the empty vector and representations are canonical.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitPoly {
    words: Vec<u64>,
}

impl BitPoly {
    pub fn zero() -> Self {
        BitPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        BitPoly { words: vec![1] }
    }

    pub fn x() -> Self {
        BitPoly { words: vec![2] }
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1 << (k % 64);
        BitPoly { words }
    }

    /// Builds a polynomial from the low bits of an integer (bit i = coeff of x^i).
    pub fn from_bits(bits: u64) -> Self {
        let mut p = BitPoly { words: vec![bits] };
        p.normalize();
        p
    }

    /// The low 64 coefficient bits (sufficient for field moduli with n <= 24).
    pub fn low_bits(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .map_or(false, |w| (w >> (i % 64)) & 1 == 1)
    }

    fn set_coeff(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
    }

    /// Iterator over the exponents with coefficient 1, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn add(&self, other: &BitPoly) -> BitPoly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (i, w) in short.words.iter().enumerate() {
            words[i] ^= w;
        }
        let mut p = BitPoly { words };
        p.normalize();
        p
    }

    /// In-place `self ^= other << shift`.
    fn xor_shifted(&mut self, other: &BitPoly, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        if bs == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + ws] ^= w;
            }
        } else {
            let mut carry = 0u64;
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + ws] ^= (w << bs) | carry;
                carry = w >> (64 - bs);
            }
            self.words[other.words.len() + ws] ^= carry;
        }
        self.normalize();
    }

    pub fn mul(&self, other: &BitPoly) -> BitPoly {
        if self.is_zero() || other.is_zero() {
            return BitPoly::zero();
        }
        // Schoolbook over the sparser operand's support; XOR kernels dominate.
        let (dense, sparse) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = BitPoly::zero();
        for e in sparse.support() {
            out.xor_shifted(dense, e);
        }
        out
    }

    pub fn square(&self) -> BitPoly {
        let mut out = BitPoly::zero();
        for e in self.support() {
            out.set_coeff(2 * e);
        }
        out.normalize();
        out
    }

    pub fn divmod(&self, divisor: &BitPoly) -> Result<(BitPoly, BitPoly), PolyError> {
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = BitPoly::zero();
        while let Some(da) = rem.degree() {
            if da < db {
                break;
            }
            let s = da - db;
            quot.set_coeff(s);
            rem.xor_shifted(divisor, s);
        }
        quot.normalize();
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &BitPoly) -> Result<BitPoly, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn div_exact(&self, divisor: &BitPoly) -> Result<BitPoly, PolyError> {
        let (q, r) = self.divmod(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    pub fn gcd(&self, other: &BitPoly) -> Result<BitPoly, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Formal derivative over F_2: odd-exponent terms shift down one degree.
    pub fn derivative(&self) -> BitPoly {
        let mut out = BitPoly::zero();
        for e in self.support() {
            if e % 2 == 1 {
                out.set_coeff(e - 1);
            }
        }
        out.normalize();
        out
    }

    /// Square root of a polynomial whose support uses only even exponents.
    pub fn sqrt(&self) -> Result<BitPoly, PolyError> {
        let mut out = BitPoly::zero();
        for e in self.support() {
            if e % 2 != 0 {
                return Err(PolyError::NotASquare);
            }
            out.set_coeff(e / 2);
        }
        out.normalize();
        Ok(out)
    }

    pub fn mulmod(&self, other: &BitPoly, modulus: &BitPoly) -> Result<BitPoly, PolyError> {
        self.mul(other).rem(modulus)
    }

    pub fn powmod(&self, mut exp: u128, modulus: &BitPoly) -> Result<BitPoly, PolyError> {
        if modulus.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut base = self.rem(modulus)?;
        let mut acc = BitPoly::one().rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            base = base.mulmod(&base, modulus)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Rabin irreducibility test.
    pub fn is_irreducible(&self) -> Result<bool, PolyError> {
        let n = match self.degree() {
            None | Some(0) => return Err(PolyError::ConstantInput),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let x = BitPoly::x();
        // x^(2^n) == x (mod self)
        let mut cur = x.rem(self)?;
        for _ in 0..n {
            cur = cur.mulmod(&cur, self)?;
        }
        if cur != x.rem(self)? {
            return Ok(false);
        }
        for p in prime_factors(n) {
            let mut cur = x.rem(self)?;
            for _ in 0..n / p {
                cur = cur.mulmod(&cur, self)?;
            }
            let h = cur.add(&x.rem(self)?);
            if h.is_zero() || self.gcd(&h)?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complete factorization into irreducibles (squarefree decomposition via
    /// the F_2 derivative, then distinct-degree and equal-degree splitting).
    pub fn factor(&self) -> Result<Factorization, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let mut out: Vec<(BitPoly, u32)> = Vec::new();
        factor_rec(self.clone(), 1, &mut out);
        let mut fac = Factorization { factors: out };
        fac.canonicalize();
        debug_assert_eq!(&fac.expand(), self);
        Ok(fac)
    }

    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".into();
        }
        let mut s = String::from("0x");
        let mut first = true;
        for w in self.words.iter().rev() {
            if first {
                s.push_str(&format!("{w:x}"));
                first = false;
            } else {
                s.push_str(&format!("{w:016x}"));
            }
        }
        s
    }
}

impl PartialOrd for BitPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficient bits read as an integer.
impl Ord for BitPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Display for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.support().collect();
        let mut first = true;
        for &e in exps.iter().rev() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly({self})")
    }
}

impl FromStr for BitPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            if hex.is_empty() || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                return Err(PolyError::Parse(s.into()));
            }
            let mut p = BitPoly::zero();
            for (i, c) in hex.chars().rev().enumerate() {
                let v = c.to_digit(16).unwrap() as u64;
                for b in 0..4 {
                    if (v >> b) & 1 == 1 {
                        p.set_coeff(i * 4 + b);
                    }
                }
            }
            p.normalize();
            return Ok(p);
        }
        let mut p = BitPoly::zero();
        if s == "0" {
            return Ok(p);
        }
        for term in s.split('+') {
            let term = term.trim();
            let e = if term == "1" {
                0
            } else if term == "x" {
                1
            } else if let Some(exp) = term.strip_prefix("x^") {
                exp.parse::<usize>()
                    .map_err(|_| PolyError::Parse(s.into()))?
            } else {
                return Err(PolyError::Parse(s.into()));
            };
            p.set_coeff(e); // XOR semantics: repeated terms cancel
        }
        p.normalize();
        Ok(p)
    }
}

/// Factorization into distinct irreducibles with multiplicities, sorted by
/// (degree, coefficient bits) ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BitPoly, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BitPoly, u32)] {
        &self.factors
    }

    fn canonicalize(&mut self) {
        self.factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BitPoly, u32)> = Vec::with_capacity(self.factors.len());
        for (p, m) in self.factors.drain(..) {
            match merged.last_mut() {
                Some((q, k)) if *q == p => *k += m,
                _ => merged.push((p, m)),
            }
        }
        self.factors = merged;
    }

    pub fn expand(&self) -> BitPoly {
        let mut acc = BitPoly::one();
        for (p, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(p);
            }
        }
        acc
    }

    /// Distinct factor degrees, excluding the degree-1 factors x and x+1.
    pub fn nontrivial_degrees(&self) -> std::collections::BTreeSet<usize> {
        self.factors
            .iter()
            .filter_map(|(p, _)| p.degree())
            .filter(|&d| d > 1)
            .collect()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, m) in &self.factors {
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            write!(f, "({p})^{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Factorization {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut factors = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (poly, mult) = match part.rsplit_once(")^") {
                Some((head, m)) => (
                    head.strip_prefix('(').ok_or_else(|| PolyError::Parse(part.into()))?,
                    m.parse::<u32>().map_err(|_| PolyError::Parse(part.into()))?,
                ),
                None => (
                    part.strip_prefix('(')
                        .and_then(|h| h.strip_suffix(')'))
                        .ok_or_else(|| PolyError::Parse(part.into()))?,
                    1,
                ),
            };
            factors.push((poly.parse()?, mult));
        }
        let mut fac = Factorization { factors };
        fac.canonicalize();
        Ok(fac)
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Squarefree reduction: over F_2, g / gcd(g, g') collects each odd-multiplicity
/// irreducible exactly once; the cofactor is then recursed (a perfect square
/// when the derivative vanishes).
fn factor_rec(g: BitPoly, mult: u32, out: &mut Vec<(BitPoly, u32)>) {
    if g.is_one() {
        return;
    }
    let d = g.derivative();
    if d.is_zero() {
        factor_rec(g.sqrt().expect("zero derivative implies even support"), 2 * mult, out);
        return;
    }
    let s = g.gcd(&d).expect("g nonzero");
    let w = g.div_exact(&s).expect("gcd divides");
    distinct_degree(w, mult, out);
    if !s.is_one() {
        factor_rec(s, mult, out);
    }
}

fn distinct_degree(mut g: BitPoly, mult: u32, out: &mut Vec<(BitPoly, u32)>) {
    let x = BitPoly::x();
    let mut d = 1usize;
    while g.degree().map_or(false, |dg| dg >= 2 * d) {
        // h = x^(2^d) mod g, accumulated by repeated squaring from the previous step
        let mut h = x.rem(&g).expect("g nonconstant");
        for _ in 0..d {
            h = h.mulmod(&h, &g).expect("g nonzero");
        }
        let gd = g.gcd(&h.add(&x.rem(&g).unwrap())).expect("g nonzero");
        if gd.degree() != Some(0) {
            equal_degree(gd.clone(), d, mult, out);
            g = g.div_exact(&gd).expect("factor divides");
        }
        d += 1;
    }
    if !g.is_one() {
        out.push((g, mult));
    }
}

/// Equal-degree splitting via the absolute trace a + a^2 + ... + a^(2^(d-1)).
/// The trace sum must run exactly d squarings (the factor degree), and the
/// RNG is seeded from (g, d) so results are deterministic.
fn equal_degree(g: BitPoly, d: usize, mult: u32, out: &mut Vec<(BitPoly, u32)>) {
    if g.degree() == Some(d) {
        out.push((g, mult));
        return;
    }
    let deg = g.degree().expect("nonzero");
    let mut rng = {
        let mut seed = 0xC0FF_EE00_D15E_A5E5u64 ^ (d as u64);
        for e in g.support() {
            seed = seed.rotate_left(7) ^ (e as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        }
        XorShift64(seed | 1)
    };
    loop {
        let mut a = BitPoly::zero();
        for i in 0..deg {
            if rng.next() & 1 == 1 {
                a.set_coeff(i);
            }
        }
        a.normalize();
        if a.degree().map_or(true, |da| da < 1) {
            continue;
        }
        let mut trace = BitPoly::zero();
        let mut cur = a.clone();
        for _ in 0..d {
            trace = trace.add(&cur);
            cur = cur.mulmod(&cur, &g).expect("g nonzero");
        }
        if trace.is_zero() {
            continue;
        }
        let gd = g.gcd(&trace).expect("g nonzero");
        let dg = gd.degree().unwrap_or(0);
        if dg != 0 && dg != deg {
            equal_degree(gd.clone(), d, mult, out);
            equal_degree(g.div_exact(&gd).expect("factor divides"), d, mult, out);
            return;
        }
    }
}

struct XorShift64(u64);

impl XorShift64 {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BitPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "1", "x", "x^5+x^2+1", "x^3+x+1"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("0x25"), p("x^5+x^2+1"));
        assert_eq!(p("x^5+x^2+1").to_hex(), "0x25");
    }

    #[test]
    fn char_two_addition() {
        assert!(p("x+1").add(&p("x+1")).is_zero());
        assert_eq!(p("x^2+x+1").add(&p("x+1")), p("x^2"));
    }

    #[test]
    fn product_of_cubics() {
        assert_eq!(
            p("x^3+x+1").mul(&p("x^3+x^2+1")),
            p("x^6+x^5+x^4+x^3+x^2+x+1")
        );
        assert_eq!(p("x+1").mul(&p("x+1")), p("x^2+1"));
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(p("x^2+1").divmod(&p("x+1")).unwrap(), (p("x+1"), p("0")));
        assert_eq!(p("x^3").divmod(&p("x+1")).unwrap(), (p("x^2+x+1"), p("1")));
        assert_eq!(
            BitPoly::zero().divmod(&BitPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("x^2+1").gcd(&p("x+1")).unwrap(), p("x+1"));
        assert_eq!(p("x^3+x+1").gcd(&p("x^3+x^2+1")).unwrap(), p("1"));
        assert_eq!(
            BitPoly::zero().gcd(&BitPoly::zero()),
            Err(PolyError::GcdOfZeros)
        );
    }

    #[test]
    fn irreducibility() {
        assert!(p("x^2+x+1").is_irreducible().unwrap());
        assert!(!p("x^2+1").is_irreducible().unwrap());
        assert!(p("x^5+x^2+1").is_irreducible().unwrap());
        assert_eq!(p("1").is_irreducible(), Err(PolyError::ConstantInput));
    }

    #[test]
    fn factor_square() {
        let fac = p("x^2+1").factor().unwrap();
        assert_eq!(fac.to_string(), "(x+1)^2");
    }

    #[test]
    fn factorization_parse_matches_display() {
        let fac: Factorization = "(x)^1 * (x+1)^2 * (x^2+x+1)^1".parse().unwrap();
        assert_eq!(fac.to_string(), "(x)^1 * (x+1)^2 * (x^2+x+1)^1");
        assert_eq!(fac.expand().factor().unwrap(), fac);
    }

    #[test]
    fn ordering_by_degree_then_bits() {
        assert!(p("x^3+x+1") < p("x^3+x^2+1"));
        assert!(p("x^2+x+1") < p("x^3+x+1"));
    }
}
