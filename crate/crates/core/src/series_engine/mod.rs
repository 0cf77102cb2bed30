//! Truncated power series in the cone distance r with exact coefficients.

mod potentials;
mod taylor;

pub use potentials::{
    expand_h, expand_potential, expand_r2_over_sin2, expand_sec2, max_order, Edge, MoleculeParams, DEFAULT_MAX_ORDER,
    POTENTIAL_MAX_ORDER,
};
pub use taylor::{printed_taylor, TaylorTarget, TAYLOR_FIXTURE};

use crate::exact_algebra::{qi, Coefficient, Gen, Mono, Rational};
use num::{One, Signed};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("reciprocal of a series whose leading coefficient is zero")]
    DivisionByZeroSeries,
    #[error("leading coefficient {0} is not a unit of the coefficient ring")]
    NotUnit(String),
    #[error("leading coefficient {0} has no exact square root")]
    NoSquareRoot(String),
    #[error("requested order {requested} exceeds the supported maximum {max}")]
    Order { requested: usize, max: usize },
    #[error("composition needs an inner series with zero constant term")]
    Composition,
    #[error("fixture: {0}")]
    Fixture(String),
}

/// Series sum_{k=start}^{order} c_k r^k, known exactly through r^order.
#[derive(Clone, PartialEq, Eq)]
pub struct RSeries {
    start: i32,
    order: i32,
    coeffs: Vec<Coefficient>,
}

impl RSeries {
    /// Series from coefficients of r^0, r^1, ..., truncated at `order`.
    pub fn new(coeffs: Vec<Coefficient>, order: usize) -> RSeries {
        RSeries::with_start(0, coeffs, order as i32)
    }

    pub fn with_start(start: i32, mut coeffs: Vec<Coefficient>, order: i32) -> RSeries {
        let len = (order - start + 1).max(0) as usize;
        coeffs.resize(len, Coefficient::zero());
        RSeries { start, order, coeffs }
    }

    pub fn zero(order: usize) -> RSeries {
        RSeries::new(vec![], order)
    }
    pub fn constant(c: Coefficient, order: usize) -> RSeries {
        RSeries::new(vec![c], order)
    }
    pub fn one(order: usize) -> RSeries {
        RSeries::constant(Coefficient::one(), order)
    }
    /// The identity series r.
    pub fn r(order: usize) -> RSeries {
        RSeries::new(vec![Coefficient::zero(), Coefficient::one()], order)
    }
    pub fn from_rationals(v: &[Rational], order: usize) -> RSeries {
        RSeries::new(v.iter().cloned().map(Coefficient::from_rational).collect(), order)
    }

    pub fn order(&self) -> i32 {
        self.order
    }
    pub fn start(&self) -> i32 {
        self.start
    }
    /// Coefficient of r^k (zero outside the stored range).
    pub fn coeff(&self, k: i32) -> Coefficient {
        if k < self.start || k > self.order {
            return Coefficient::zero();
        }
        self.coeffs[(k - self.start) as usize].clone()
    }
    /// Coefficients of r^0..=r^order; requires start >= 0.
    pub fn coeffs_from_zero(&self) -> Vec<Coefficient> {
        (0..=self.order).map(|k| self.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|p| p as i32 + self.start)
    }

    pub fn truncate(&self, order: i32) -> RSeries {
        let order = order.min(self.order);
        RSeries::with_start(self.start, self.coeffs.clone(), order)
    }

    pub fn map(&self, f: impl Fn(&Coefficient) -> Coefficient) -> RSeries {
        RSeries { start: self.start, order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, k: &Coefficient) -> RSeries {
        self.map(|c| c * k)
    }

    /// Multiply by r^k.
    pub fn mul_rpow(&self, k: i32) -> RSeries {
        RSeries { start: self.start + k, order: self.order + k, coeffs: self.coeffs.clone() }
    }

    pub fn add(&self, o: &RSeries) -> RSeries {
        let start = self.start.min(o.start);
        let order = self.order.min(o.order);
        let coeffs = (start..=order).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        RSeries::with_start(start, coeffs, order)
    }
    pub fn sub(&self, o: &RSeries) -> RSeries {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> RSeries {
        self.map(|c| -c)
    }

    pub fn mul(&self, o: &RSeries) -> RSeries {
        let start = self.start + o.start;
        let order = (self.order + o.start).min(o.order + self.start);
        let mut coeffs = vec![Coefficient::zero(); (order - start + 1).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                coeffs[k] += &(a * b);
            }
        }
        RSeries::with_start(start, coeffs, order)
    }

    /// Drop leading zero coefficients so that the first stored one is nonzero.
    fn trimmed(&self) -> Option<RSeries> {
        let v = self.valuation()?;
        let skip = (v - self.start) as usize;
        Some(RSeries { start: v, order: self.order, coeffs: self.coeffs[skip..].to_vec() })
    }

    pub fn reciprocal(&self) -> Result<RSeries, SeriesError> {
        let a = self.trimmed().ok_or(SeriesError::DivisionByZeroSeries)?;
        let a0inv = a.coeffs[0].inverse().ok_or_else(|| SeriesError::NotUnit(a.coeffs[0].render()))?;
        let n = a.coeffs.len();
        let mut b: Vec<Coefficient> = Vec::with_capacity(n);
        b.push(a0inv.clone());
        for k in 1..n {
            let mut s = Coefficient::zero();
            for j in 1..=k {
                s += &(&a.coeffs[j] * &b[k - j]);
            }
            b.push(-(&s * &a0inv));
        }
        Ok(RSeries::with_start(-a.start, b, a.order - 2 * a.start))
    }

    pub fn div(&self, o: &RSeries) -> Result<RSeries, SeriesError> {
        Ok(self.mul(&o.reciprocal()?))
    }

    /// Inverse square root by Newton iteration y <- y(3 - a y^2)/2, with the
    /// leading coefficient's inverse square root taken exactly from a
    /// monomial with even exponents and square rational part.
    pub fn inv_sqrt(&self) -> Result<RSeries, SeriesError> {
        let a = self.trimmed().ok_or(SeriesError::DivisionByZeroSeries)?;
        if a.start % 2 != 0 {
            return Err(SeriesError::NoSquareRoot(format!("r^{}", a.start)));
        }
        let y0 = monomial_inv_sqrt(&a.coeffs[0]).ok_or_else(|| SeriesError::NoSquareRoot(a.coeffs[0].render()))?;
        // normalized a = r^start * ahat
        let ahat = RSeries { start: 0, order: a.order - a.start, coeffs: a.coeffs.clone() };
        let n = ahat.order.max(0) as usize;
        let mut y = RSeries::constant(y0, n);
        let three = RSeries::constant(Coefficient::int(3), n);
        let half = Coefficient::from_rational(Rational::new(1.into(), 2.into()));
        // quadratic convergence: the number of exact terms doubles per step
        let mut prec = 1usize;
        while prec <= 2 * (n + 1) {
            let y2 = y.mul(&y);
            y = y.mul(&three.sub(&ahat.mul(&y2))).scale(&half);
            prec *= 2;
        }
        Ok(y.mul_rpow(-a.start / 2))
    }

    pub fn sqrt(&self) -> Result<RSeries, SeriesError> {
        let inv = self.inv_sqrt()?;
        Ok(self.mul(&inv))
    }

    pub fn derivative(&self) -> RSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&qi(i as i64 + self.start as i64)))
            .collect::<Vec<_>>();
        let (start, coeffs) = if self.start == 0 {
            (0, coeffs[1.min(coeffs.len())..].to_vec())
        } else {
            (self.start - 1, coeffs)
        };
        RSeries::with_start(start, coeffs, self.order - 1)
    }

    /// f(g(r)) for f given by coefficients and g with zero constant term.
    pub fn compose_coeffs(f: &[Coefficient], g: &RSeries) -> Result<RSeries, SeriesError> {
        if g.start < 0 || !g.coeff(0).is_zero() {
            return Err(SeriesError::Composition);
        }
        let n = g.order.max(0) as usize;
        let mut acc = RSeries::zero(n);
        for c in f.iter().take(n + 1).rev() {
            acc = acc.mul(g).add(&RSeries::constant(c.clone(), n));
        }
        Ok(acc)
    }

    /// f(g(r)) where f is a series with start 0.
    pub fn compose(&self, g: &RSeries) -> Result<RSeries, SeriesError> {
        let f = self.coeffs_from_zero();
        let h = RSeries::compose_coeffs(&f, g)?;
        Ok(h.truncate(self.order.max(g.order)))
    }

    /// exp(g) for g with zero constant term.
    pub fn exp(&self) -> Result<RSeries, SeriesError> {
        let n = self.order.max(0) as usize;
        RSeries::compose_coeffs(&exp_coeffs(n), self)
    }

    /// Numeric value at r with generators assigned by `val`.
    pub fn eval(&self, r: f64, val: &dyn Fn(Gen) -> f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let (a, b) = c.eval(val);
            let p = r.powi(i as i32 + self.start);
            re += a * p;
            im += b * p;
        }
        (re, im)
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = i as i32 + self.start;
            parts.push(format!("({})*r^{}", c.render(), k));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O(r^{})", parts.join(" + "), self.order + 1)
    }
}

impl fmt::Debug for RSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
impl fmt::Display for RSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Exact square-root inverse of a monomial c*m with c a rational square and
/// m of even exponents (s and i excluded).
fn monomial_inv_sqrt(c: &Coefficient) -> Option<Coefficient> {
    if c.n_terms() != 1 {
        return None;
    }
    let (m, r) = c.terms().next().unwrap();
    if r.is_negative() || m.exp(Gen::S) != 0 || m.exp(Gen::I) != 0 {
        return None;
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    if &(&num * &num) != r.numer() || &(&den * &den) != r.denom() {
        return None;
    }
    let mut half = Mono::one();
    for g in Gen::ALL {
        let e = m.exp(g);
        if e % 2 != 0 {
            return None;
        }
        half.0[g as usize] = -e / 2;
    }
    Some(Coefficient::monomial(half, Rational::new(den, num)))
}

fn exp_coeffs(n: usize) -> Vec<Coefficient> {
    let mut out = Vec::with_capacity(n + 1);
    let mut f = Rational::one();
    for k in 0..=n {
        if k > 0 {
            f /= qi(k as i64);
        }
        out.push(Coefficient::from_rational(f.clone()));
    }
    out
}

/// Taylor coefficients of sin and cos through `order`.
pub fn sin_series(order: usize) -> RSeries {
    trig_series(order, 1)
}
pub fn cos_series(order: usize) -> RSeries {
    trig_series(order, 0)
}

fn trig_series(order: usize, parity: usize) -> RSeries {
    let mut c = vec![Coefficient::zero(); order + 1];
    let mut f = Rational::one();
    for k in 0..=order {
        if k > 0 {
            f /= qi(k as i64);
        }
        if k % 2 == parity {
            let sign = if (k / 2) % 2 == 0 { Rational::one() } else { -Rational::one() };
            c[k] = Coefficient::from_rational(&f * sign);
        }
    }
    RSeries::new(c, order)
}

/// sin(r)/r through `order`.
pub fn sinc_series(order: usize) -> RSeries {
    let s = sin_series(order + 1);
    RSeries::new(s.coeffs_from_zero()[1..].to_vec(), order)
}

/// g(k r) for a series g.
pub fn rescale(g: &RSeries, k: &Rational) -> RSeries {
    let mut c = Vec::new();
    let mut p = Rational::one();
    for i in 0..=g.order() {
        c.push(g.coeff(i).scale(&p));
        p *= k;
    }
    RSeries::new(c, g.order().max(0) as usize)
}

impl Default for RSeries {
    fn default() -> Self {
        RSeries::zero(0)
    }
}

/// True when every coefficient through `order` vanishes.
pub fn vanishes_through(s: &RSeries, order: i32) -> bool {
    (s.start()..=order).all(|k| s.coeff(k).is_zero())
}

#[cfg(test)]
mod tests;
