//! Arithmetic in F_2^n (n <= 24) under an explicit irreducible modulus, with
//! log/antilog tables for fast exponentiation when n is small.

use thiserror::Error;

use crate::gf2poly::BitPoly;

pub const MAX_N: u32 = 24;
const TABLE_MAX_N: u32 = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} out of range 1..={MAX_N}")]
    DegreeOutOfRange(u32),
    #[error("modulus {0} is not irreducible of degree {1}")]
    BadModulus(BitPoly, u32),
    #[error("element {0:#x} is out of range for F_2^{1}")]
    ElementOutOfRange(u64, u32),
}

/// An element of F_2^n: an n-bit residue modulo the context's modulus.
pub type FieldElem = u32;

/// F_2^n under a fixed irreducible modulus. Immutable after construction;
/// freely shareable across threads.
pub struct FieldCtx {
    n: u32,
    modulus: BitPoly,
    modulus_bits: u64,
    /// log[a] for a in 1..2^n; alog[i] = g^i for a fixed generator g.
    tables: Option<(Vec<u32>, Vec<u32>)>,
}

impl FieldCtx {
    /// Context with the canonical modulus: the irreducible degree-n polynomial
    /// whose bit pattern, read as an integer, is smallest.
    pub fn new(n: u32) -> Result<FieldCtx, FieldError> {
        Self::with_modulus(n, smallest_irreducible(n)?)
    }

    /// Context with an explicit irreducible modulus of degree n.
    pub fn with_modulus(n: u32, modulus: BitPoly) -> Result<FieldCtx, FieldError> {
        if n == 0 || n > MAX_N {
            return Err(FieldError::DegreeOutOfRange(n));
        }
        if modulus.degree() != Some(n as usize)
            || (n > 1 && !modulus.is_irreducible().unwrap_or(false))
            || (n == 1 && modulus.low_bits() != 0b11)
        {
            return Err(FieldError::BadModulus(modulus, n));
        }
        let modulus_bits = modulus.low_bits();
        let mut ctx = FieldCtx {
            n,
            modulus,
            modulus_bits,
            tables: None,
        };
        if n <= TABLE_MAX_N {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &BitPoly {
        &self.modulus
    }

    /// Order of the multiplicative group, 2^n - 1.
    pub fn order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn contains(&self, a: u64) -> bool {
        a < (1u64 << self.n)
    }

    pub fn check(&self, a: u64) -> Result<FieldElem, FieldError> {
        if self.contains(a) {
            Ok(a as FieldElem)
        } else {
            Err(FieldError::ElementOutOfRange(a, self.n))
        }
    }

    /// Carry-less product reduced modulo the context modulus.
    pub fn fmul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(self.contains(a as u64) && self.contains(b as u64));
        // clmul of two n<=24-bit values fits in u64
        let mut acc = 0u64;
        let (mut a, mut b) = (a as u64, b as u64);
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        // reduce degree < 2n down to < n
        let n = self.n;
        let mut deg = 63 - acc.leading_zeros() as i64;
        while acc != 0 && deg >= n as i64 {
            acc ^= self.modulus_bits << (deg - n as i64);
            deg = 63 - acc.leading_zeros() as i64;
        }
        acc as FieldElem
    }

    fn build_tables(&self) -> (Vec<u32>, Vec<u32>) {
        let m = self.order() as usize;
        if self.n == 1 {
            // trivial multiplicative group {1}
            return (vec![0, 0], vec![1]);
        }
        'gen: for g in 2..(1u32 << self.n) {
            let mut alog = vec![0u32; m];
            let mut log = vec![0u32; 1 << self.n];
            let mut e = 1u32;
            for (i, slot) in alog.iter_mut().enumerate() {
                *slot = e;
                log[e as usize] = i as u32;
                e = self.fmul(e, g);
                if e == 1 && i + 1 < m {
                    continue 'gen; // g's order is too small
                }
            }
            if e == 1 {
                return (log, alog);
            }
        }
        unreachable!("F_2^n always has a generator")
    }

    /// x^d with the power-function convention: exponents are arbitrary
    /// nonnegative integers; for a != 0 the exponent is reduced mod 2^n - 1
    /// (d > 0 with d = 0 mod 2^n - 1 maps to exponent 2^n - 1, giving 1);
    /// 0^d = 0 for d >= 1 and 0^0 = 1.
    pub fn fpow(&self, a: FieldElem, d: u64) -> FieldElem {
        if d == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let e = d % self.order();
        if e == 0 {
            return 1;
        }
        if let Some((log, alog)) = &self.tables {
            let idx = (log[a as usize] as u64 * e) % self.order();
            return alog[idx as usize];
        }
        let mut acc: FieldElem = 1;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.fmul(acc, base);
            }
            base = self.fmul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn finv(&self, a: FieldElem) -> Option<FieldElem> {
        if a == 0 {
            None
        } else {
            Some(self.fpow(a, self.order() - 1))
        }
    }

    /// Evaluates a BitPoly at a field element (Horner).
    pub fn eval_poly(&self, p: &BitPoly, at: FieldElem) -> FieldElem {
        let Some(deg) = p.degree() else { return 0 };
        let mut acc: FieldElem = 0;
        for i in (0..=deg).rev() {
            acc = self.fmul(acc, at);
            if p.coeff(i) {
                acc ^= 1;
            }
        }
        acc
    }

    /// True iff a^(2^m) = a, i.e. a lies in the subfield F_2^gcd(m, n).
    pub fn in_subfield(&self, a: FieldElem, m: u32) -> bool {
        let mut cur = a;
        for _ in 0..m {
            cur = self.fmul(cur, cur);
        }
        cur == a
    }
}

/// The lexicographically least irreducible polynomial of degree n (by the
/// integer value of its coefficient bitmask).
pub fn smallest_irreducible(n: u32) -> Result<BitPoly, FieldError> {
    if n == 0 || n > MAX_N {
        return Err(FieldError::DegreeOutOfRange(n));
    }
    if n == 1 {
        return Ok(BitPoly::from_bits(0b11)); // x+1: residues {0,1} = F_2
    }
    for bits in (1u64 << n) + 1..1u64 << (n + 1) {
        if bits & 1 == 0 {
            continue; // x divides
        }
        let cand = BitPoly::from_bits(bits);
        if cand.is_irreducible().unwrap_or(false) {
            return Ok(cand);
        }
    }
    unreachable!("irreducibles exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(smallest_irreducible(2).unwrap().to_string(), "x^2+x+1");
        assert_eq!(smallest_irreducible(3).unwrap().to_string(), "x^3+x+1");
        assert_eq!(smallest_irreducible(1).unwrap().to_string(), "x+1");
    }

    #[test]
    fn mul_identities() {
        let ctx = FieldCtx::new(3).unwrap();
        for a in 0..8 {
            assert_eq!(ctx.fmul(a, 0), 0);
            assert_eq!(ctx.fmul(a, 1), a);
        }
        // x * x^2 = x^3 = x + 1 under x^3+x+1
        assert_eq!(ctx.fmul(0b010, 0b100), 0b011);
    }

    #[test]
    fn lagrange_and_zero_powers() {
        let ctx = FieldCtx::new(5).unwrap();
        let m = ctx.order();
        for a in 1..32 {
            assert_eq!(ctx.fpow(a, m), 1);
            assert_eq!(ctx.fpow(a, 2 * m), 1);
        }
        assert_eq!(ctx.fpow(0, 7), 0);
        assert_eq!(ctx.fpow(0, 0), 1);
    }

    #[test]
    fn subfield_counts() {
        let ctx = FieldCtx::new(4).unwrap();
        let in_f4 = (0u32..16).filter(|&a| ctx.in_subfield(a, 2)).count();
        assert_eq!(in_f4, 4);
        let ctx6 = FieldCtx::new(6).unwrap();
        for a in 0..64u32 {
            if ctx6.in_subfield(a, 2) && ctx6.in_subfield(a, 3) {
                assert!(a <= 1, "F_4 and F_8 intersect in F_2");
            }
        }
    }

    #[test]
    fn table_and_reduction_paths_agree() {
        let ctx = FieldCtx::new(7).unwrap();
        for a in 1..128u32 {
            assert_eq!(ctx.fpow(a, 5), {
                let s = ctx.fmul(a, a);
                ctx.fmul(ctx.fmul(s, s), a)
            });
        }
    }
}
