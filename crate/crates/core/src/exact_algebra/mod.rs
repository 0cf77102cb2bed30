//! Exact scalars, polynomials in the Mellin covariable and rational
//! functions with integer poles.

pub mod coeff;
pub mod generic;
pub mod parse;
pub mod polyw;
pub mod ratfunc;
pub mod rational;

pub use coeff::{c_frac, c_gen, c_int, Coefficient, Gen, Mono};
pub use generic::{GenericValue, LRatFunc, LinRoot};
pub use parse::{parse_coefficient, ParseError};
pub use polyw::PolyW;
pub use ratfunc::{integer_roots, RatFuncW};
pub use rational::{binom, factorial, q, qi, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("pole at w = {pole} has multiplicity {multiplicity}; a logarithmic term would be required")]
    MultiplePole { pole: i64, multiplicity: u32 },
    #[error("partial fractions need numerator degree {num_degree} below denominator degree {den_degree}")]
    Degree { num_degree: i32, den_degree: u32 },
    #[error("polynomial {0} does not split into integer linear factors")]
    NotSplit(String),
}

/// Canonical form of a coefficient (s^2 -> 2, i^2 -> -1).
pub fn normalize(c: &Coefficient) -> Coefficient {
    c.normalize()
}

/// (T^m f)(w) = f(w + m).
pub fn shift(f: &RatFuncW, m: i64) -> RatFuncW {
    f.shift(m)
}

pub fn residue_at(f: &RatFuncW, w0: i64) -> Result<Coefficient, AlgebraError> {
    f.residue_at(w0)
}

pub fn pole_set(f: &RatFuncW) -> std::collections::BTreeMap<i64, u32> {
    f.pole_set()
}

pub fn partial_fractions(f: &RatFuncW) -> Result<Vec<(i64, u32, Coefficient)>, AlgebraError> {
    f.partial_fractions()
}

#[cfg(test)]
mod tests;
