use super::rational::{q, Rational};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Ring generators. `S` is sqrt(2) and `I` the imaginary unit; both are
/// reduced on every normalization. All other generators are free and may
/// carry negative exponents (Laurent monomials).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    T,
    Z,
    E,
    A,
    S,
    I,
    Z1,
    Z2,
    /// cot(theta_2)
    Ct,
    /// csc^2(theta_2)
    Cs,
    /// angular sector index, for formulas generic in l
    L,
    Za,
    Zb,
    /// R/t in the two-center expansion
    Rho,
    C1,
    C2,
    /// (1 - 2 c2 rho + rho^2)^(-1/2)
    Q2,
}

pub const NGEN: usize = 17;

impl Gen {
    pub const ALL: [Gen; NGEN] = [
        Gen::T,
        Gen::Z,
        Gen::E,
        Gen::A,
        Gen::S,
        Gen::I,
        Gen::Z1,
        Gen::Z2,
        Gen::Ct,
        Gen::Cs,
        Gen::L,
        Gen::Za,
        Gen::Zb,
        Gen::Rho,
        Gen::C1,
        Gen::C2,
        Gen::Q2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gen::T => "t",
            Gen::Z => "Z",
            Gen::E => "E",
            Gen::A => "a",
            Gen::S => "s",
            Gen::I => "i",
            Gen::Z1 => "Z1",
            Gen::Z2 => "Z2",
            Gen::Ct => "ct",
            Gen::Cs => "cs",
            Gen::L => "l",
            Gen::Za => "Za",
            Gen::Zb => "Zb",
            Gen::Rho => "rho",
            Gen::C1 => "c1",
            Gen::C2 => "c2",
            Gen::Q2 => "q2",
        }
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        Gen::ALL.iter().copied().find(|g| g.name() == s)
    }

    fn idx(self) -> usize {
        self as usize
    }
}

/// Exponent vector indexed by `Gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub [i8; NGEN]);

impl Mono {
    pub fn one() -> Mono {
        Mono([0; NGEN])
    }
    pub fn gen(g: Gen, e: i8) -> Mono {
        let mut m = Mono::one();
        m.0[g.idx()] = e;
        m
    }
    pub fn exp(&self, g: Gen) -> i8 {
        self.0[g.idx()]
    }
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
    fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for k in 0..NGEN {
            r.0[k] += o.0[k];
        }
        r
    }
    fn total_degree(&self) -> i32 {
        self.0.iter().map(|&e| (e as i32).abs()).sum()
    }
}

/// Exact scalar: sparse Laurent polynomial over the rationals in the
/// generators of [`Gen`], with s^2 = 2 and i^2 = -1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    terms: BTreeMap<Mono, Rational>,
}

/// Reduce the s and i exponents of a monomial into {0,1}, returning the
/// rational factor produced by the reduction.
fn reduce_mono(mut m: Mono) -> (Mono, Rational) {
    let mut factor = Rational::one();
    let se = m.0[Gen::S.idx()] as i32;
    let odd = se.rem_euclid(2);
    let half = (se - odd) / 2;
    if half != 0 {
        factor *= q(2, 1).pow(half);
    }
    m.0[Gen::S.idx()] = odd as i8;
    let ie = (m.0[Gen::I.idx()] as i32).rem_euclid(4);
    if ie >= 2 {
        factor = -factor;
    }
    m.0[Gen::I.idx()] = (ie % 2) as i8;
    (m, factor)
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { terms: BTreeMap::new() }
    }
    pub fn one() -> Self {
        Coefficient::from_rational(Rational::one())
    }
    pub fn from_rational(r: Rational) -> Self {
        let mut c = Coefficient::zero();
        c.add_term(Mono::one(), r);
        c
    }
    pub fn int(n: i64) -> Self {
        Coefficient::from_rational(q(n, 1))
    }
    pub fn frac(n: i64, d: i64) -> Self {
        Coefficient::from_rational(q(n, d))
    }
    pub fn gen(g: Gen) -> Self {
        Coefficient::gen_pow(g, 1)
    }
    pub fn gen_pow(g: Gen, e: i8) -> Self {
        let mut c = Coefficient::zero();
        c.add_term(Mono::gen(g, e), Rational::one());
        c
    }
    pub fn monomial(m: Mono, r: Rational) -> Self {
        let mut c = Coefficient::zero();
        c.add_term(m, r);
        c
    }

    /// Add `r * m` in place, reducing s and i and dropping zeros.
    pub fn add_term(&mut self, m: Mono, r: Rational) {
        if r.is_zero() {
            return;
        }
        let (m, f) = reduce_mono(m);
        let r = r * f;
        let remove = {
            let e = self.terms.entry(m).or_insert_with(Rational::zero);
            *e += r;
            e.is_zero()
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }
    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    /// The value as a rational number if it is free of generators.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, r) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(r.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Canonical form. Values are kept normalized by every operation, so this
    /// re-inserts each term and is idempotent.
    pub fn normalize(&self) -> Coefficient {
        let mut c = Coefficient::zero();
        for (m, r) in &self.terms {
            c.add_term(*m, r.clone());
        }
        c
    }

    pub fn scale(&self, r: &Rational) -> Coefficient {
        if r.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Coefficient {
        let mut c = Coefficient::zero();
        for (tm, r) in &self.terms {
            c.add_term(tm.mul(m), r.clone());
        }
        c
    }

    /// Multiplicative inverse when the value is a single monomial
    /// (any monomial is a unit: s^-1 = s/2, i^-1 = -i).
    pub fn inverse(&self) -> Option<Coefficient> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, r) = self.terms.iter().next().unwrap();
        let mut inv = Mono::one();
        for k in 0..NGEN {
            inv.0[k] = -m.0[k];
        }
        Some(Coefficient::monomial(inv, r.recip()))
    }

    pub fn pow(&self, e: u32) -> Coefficient {
        let mut acc = Coefficient::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power, negative exponents allowed for monomial values.
    pub fn powi(&self, e: i32) -> Option<Coefficient> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inverse().map(|inv| inv.pow((-e) as u32))
        }
    }

    pub fn degree_in(&self, g: Gen) -> Option<i8> {
        self.terms.keys().map(|m| m.exp(g)).max()
    }
    pub fn min_degree_in(&self, g: Gen) -> Option<i8> {
        self.terms.keys().map(|m| m.exp(g)).min()
    }
    pub fn contains(&self, g: Gen) -> bool {
        self.terms.keys().any(|m| m.exp(g) != 0)
    }

    /// Coefficient of g^e, as a value free of g.
    pub fn coeff_of(&self, g: Gen, e: i8) -> Coefficient {
        let mut c = Coefficient::zero();
        for (m, r) in &self.terms {
            if m.exp(g) == e {
                let mut mm = *m;
                mm.0[g.idx()] = 0;
                c.add_term(mm, r.clone());
            }
        }
        c
    }

    /// Replace generator `g` by `v`. Negative powers require `v` invertible.
    pub fn subs(&self, g: Gen, v: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        let mut cache: BTreeMap<i8, Coefficient> = BTreeMap::new();
        for (m, r) in &self.terms {
            let e = m.exp(g);
            let mut rest = *m;
            rest.0[g.idx()] = 0;
            let p = cache
                .entry(e)
                .or_insert_with(|| {
                    v.powi(e as i32)
                        .expect("negative power of a non-invertible substitution value")
                })
                .clone();
            out += &p.mul_mono(&rest).scale(r);
        }
        out
    }

    pub fn subs_all(&self, pairs: &[(Gen, Coefficient)]) -> Coefficient {
        pairs.iter().fold(self.clone(), |acc, (g, v)| acc.subs(*g, v))
    }

    /// Partial derivative with respect to a free generator.
    pub fn diff(&self, g: Gen) -> Coefficient {
        assert!(g != Gen::S && g != Gen::I, "s and i are constants");
        let mut c = Coefficient::zero();
        for (m, r) in &self.terms {
            let e = m.exp(g);
            if e != 0 {
                let mut mm = *m;
                mm.0[g.idx()] -= 1;
                c.add_term(mm, r * Rational::from_integer(e.into()));
            }
        }
        c
    }

    /// Numerical value as (re, im) with generators assigned by `val`.
    pub fn eval(&self, val: &dyn Fn(Gen) -> f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, r) in &self.terms {
            let mut x = super::rational::to_f64(r);
            for g in Gen::ALL {
                let e = m.exp(g);
                if e == 0 || g == Gen::I {
                    continue;
                }
                let b = if g == Gen::S { std::f64::consts::SQRT_2 } else { val(g) };
                x *= b.powi(e as i32);
            }
            if m.exp(Gen::I) == 1 {
                im += x;
            } else {
                re += x;
            }
        }
        (re, im)
    }

    /// Real value when free of `i`.
    pub fn eval_real(&self, val: &dyn Fn(Gen) -> f64) -> f64 {
        self.eval(val).0
    }

    /// Real and imaginary parts as separate i-free values.
    pub fn re_im(&self) -> (Coefficient, Coefficient) {
        (self.coeff_of(Gen::I, 0), self.coeff_of(Gen::I, 1))
    }
}

impl From<Rational> for Coefficient {
    fn from(r: Rational) -> Self {
        Coefficient::from_rational(r)
    }
}
impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::int(n)
    }
}
impl From<Gen> for Coefficient {
    fn from(g: Gen) -> Self {
        Coefficient::gen(g)
    }
}

impl<'a> AddAssign<&'a Coefficient> for Coefficient {
    fn add_assign(&mut self, o: &'a Coefficient) {
        for (m, r) in &o.terms {
            self.add_term(*m, r.clone());
        }
    }
}
impl<'a> SubAssign<&'a Coefficient> for Coefficient {
    fn sub_assign(&mut self, o: &'a Coefficient) {
        for (m, r) in &o.terms {
            self.add_term(*m, -r.clone());
        }
    }
}
impl<'a> MulAssign<&'a Coefficient> for Coefficient {
    fn mul_assign(&mut self, o: &'a Coefficient) {
        *self = &*self * o;
    }
}

impl<'a, 'b> Add<&'b Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, o: &'b Coefficient) -> Coefficient {
        let mut c = self.clone();
        c += o;
        c
    }
}
impl<'a, 'b> Sub<&'b Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, o: &'b Coefficient) -> Coefficient {
        let mut c = self.clone();
        c -= o;
        c
    }
}
impl<'a, 'b> Mul<&'b Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, o: &'b Coefficient) -> Coefficient {
        let mut c = Coefficient::zero();
        for (m1, r1) in &self.terms {
            for (m2, r2) in &o.terms {
                c.add_term(m1.mul(m2), r1 * r2);
            }
        }
        c
    }
}
impl<'a> Neg for &'a Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(m, r)| (*m, -r.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $f(self, o: Coefficient) -> Coefficient {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $f(self, o: &'a Coefficient) -> Coefficient {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<Coefficient> for &'a Coefficient {
            type Output = Coefficient;
            fn $f(self, o: Coefficient) -> Coefficient {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl std::iter::Sum for Coefficient {
    fn sum<I: Iterator<Item = Coefficient>>(iter: I) -> Coefficient {
        iter.fold(Coefficient::zero(), |a, b| a + b)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    // the numeric constants sqrt 2 and i read first
    let order = [Gen::S, Gen::I].into_iter().chain(Gen::ALL.into_iter().filter(|g| !matches!(g, Gen::S | Gen::I)));
    for g in order {
        let e = m.exp(g);
        match e {
            0 => {}
            1 => parts.push(g.name().to_string()),
            _ => parts.push(format!("{}^{}", g.name(), e)),
        }
    }
    parts.join("*")
}

impl Coefficient {
    /// Terms in display order: by total degree, then by monomial.
    fn display_terms(&self) -> Vec<(&Mono, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| (m.total_degree(), std::cmp::Reverse(**m)));
        v
    }

    /// Canonical text rendering, e.g. `-2+1/3*t^2*Z1^2+1/3*t*Z2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, r)) in self.display_terms().into_iter().enumerate() {
            let neg = r.is_negative();
            let a = r.abs();
            let body = if m.is_one() {
                fmt_rational(&a)
            } else if a.is_one() {
                fmt_mono(m)
            } else {
                format!("{}*{}", fmt_rational(&a), fmt_mono(m))
            };
            if neg {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Shorthand constructors.
pub fn c_int(n: i64) -> Coefficient {
    Coefficient::int(n)
}
pub fn c_frac(n: i64, d: i64) -> Coefficient {
    Coefficient::frac(n, d)
}
pub fn c_gen(g: Gen) -> Coefficient {
    Coefficient::gen(g)
}
