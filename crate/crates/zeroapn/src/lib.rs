//! Toolkit for analyzing 0-APN power functions x^d over F_2^n: exact
//! polynomial arithmetic over F_2, small binary field towers, differential
//! spectra, CCZ-equivalence of exponents, exponent-family catalogues,
//! Sylvester resultants with cross-checked determinant strategies, and the
//! multivariate conjugate-system elimination method.

pub mod ccz;
pub mod diffanalysis;
pub mod exponents;
pub mod gf2n;
pub mod gf2poly;
pub mod multivar;
pub mod resultant;
