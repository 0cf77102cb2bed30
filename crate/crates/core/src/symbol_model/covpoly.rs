use crate::exact_algebra::{c_gen, c_int, factorial, Coefficient, Gen, Rational};
use num::One;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients depending on the edge variables t, theta_2 (through ct, cs)
/// and on the problem parameters.
pub type EdgeCoeff = Coefficient;

/// Exponent vector of (tau, Theta_2, Phi_2).
pub type Eta = [u8; 3];

pub const TAU: usize = 0;
pub const THETA: usize = 1;
pub const PHI: usize = 2;

pub fn eta_degree(e: &Eta) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

fn eta_add(a: &Eta, b: &Eta) -> Eta {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// All exponent vectors with total degree `d`.
pub fn etas_of_degree(d: u8) -> Vec<Eta> {
    let mut v = Vec::new();
    for a in 0..=d {
        for b in 0..=(d - a) {
            v.push([a, b, d - a - b]);
        }
    }
    v
}

/// alpha! for a multi-index.
pub fn multi_factorial(a: &Eta) -> Rational {
    factorial(a[0] as u32) * factorial(a[1] as u32) * factorial(a[2] as u32)
}

/// Derivative of an edge coefficient along t.
/// Z2 is taken as -tE plus a t-independent constant.
pub fn d_t(c: &EdgeCoeff) -> EdgeCoeff {
    c.diff(Gen::T) - c.diff(Gen::Z2) * c_gen(Gen::E)
}

/// Derivative along theta_2 with ct' = -cs and cs' = -2 cs ct.
pub fn d_theta(c: &EdgeCoeff) -> EdgeCoeff {
    let cs = c_gen(Gen::Cs);
    let ct = c_gen(Gen::Ct);
    -(c.diff(Gen::Ct) * &cs) - c.diff(Gen::Cs) * (&cs * &ct) * c_int(2)
}

/// D_y = -i d_y applied to an edge coefficient; D_phi vanishes since no
/// coefficient depends on phi_2.
pub fn dy_coeff(c: &EdgeCoeff, k: usize) -> EdgeCoeff {
    let mi = -c_gen(Gen::I);
    match k {
        TAU => d_t(c) * mi,
        THETA => d_theta(c) * mi,
        _ => Coefficient::zero(),
    }
}

/// D_y^alpha of an edge coefficient.
pub fn dy_alpha(c: &EdgeCoeff, a: &Eta) -> EdgeCoeff {
    let mut x = c.clone();
    for k in 0..3 {
        for _ in 0..a[k] {
            if x.is_zero() {
                return x;
            }
            x = dy_coeff(&x, k);
        }
    }
    x
}

/// Polynomial in the edge covariables with edge-coefficient entries.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CovPoly {
    terms: BTreeMap<Eta, EdgeCoeff>,
}

impl CovPoly {
    pub fn zero() -> CovPoly {
        CovPoly::default()
    }
    pub fn one() -> CovPoly {
        CovPoly::constant(Coefficient::one())
    }
    pub fn constant(c: EdgeCoeff) -> CovPoly {
        CovPoly::monomial([0, 0, 0], c)
    }
    pub fn monomial(e: Eta, c: EdgeCoeff) -> CovPoly {
        let mut p = CovPoly::zero();
        p.add_term(e, c);
        p
    }
    pub fn tau() -> CovPoly {
        CovPoly::monomial([1, 0, 0], Coefficient::one())
    }
    pub fn theta() -> CovPoly {
        CovPoly::monomial([0, 1, 0], Coefficient::one())
    }
    pub fn phi() -> CovPoly {
        CovPoly::monomial([0, 0, 1], Coefficient::one())
    }
    pub fn add_term(&mut self, e: Eta, c: EdgeCoeff) {
        let v = self.terms.remove(&e).unwrap_or_default() + c;
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Eta, &EdgeCoeff)> {
        self.terms.iter()
    }
    pub fn coeff(&self, e: &Eta) -> EdgeCoeff {
        self.terms.get(e).cloned().unwrap_or_default()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Highest total degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i32 {
        self.terms.keys().map(|e| eta_degree(e) as i32).max().unwrap_or(-1)
    }
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| eta_degree(e) == d)
    }
    pub fn homogeneous_part(&self, d: u32) -> CovPoly {
        CovPoly {
            terms: self.terms.iter().filter(|(e, _)| eta_degree(e) == d).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }
    pub fn scale(&self, k: &EdgeCoeff) -> CovPoly {
        self.map_coeffs(|c| c * k)
    }
    pub fn map_coeffs(&self, f: impl Fn(&EdgeCoeff) -> EdgeCoeff) -> CovPoly {
        let mut p = CovPoly::zero();
        for (e, c) in &self.terms {
            p.add_term(*e, f(c));
        }
        p
    }
    pub fn pow(&self, n: u32) -> CovPoly {
        (0..n).fold(CovPoly::one(), |acc, _| &acc * self)
    }
    /// Partial derivative in the covariable `k`.
    pub fn d_eta(&self, k: usize) -> CovPoly {
        let mut p = CovPoly::zero();
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut ee = *e;
                ee[k] -= 1;
                p.add_term(ee, c * c_int(e[k] as i64));
            }
        }
        p
    }
    pub fn d_eta_alpha(&self, a: &Eta) -> CovPoly {
        let mut p = self.clone();
        for k in 0..3 {
            for _ in 0..a[k] {
                p = p.d_eta(k);
            }
        }
        p
    }
    /// D_y in direction `k`, acting on the coefficients.
    pub fn d_y(&self, k: usize) -> CovPoly {
        self.map_coeffs(|c| dy_coeff(c, k))
    }
    pub fn d_y_alpha(&self, a: &Eta) -> CovPoly {
        self.map_coeffs(|c| dy_alpha(c, a))
    }
    /// Sum over alpha of (1/alpha!) d_eta^alpha(K) D_y^alpha(X).
    pub fn compose(k: &CovPoly, x: &CovPoly) -> CovPoly {
        let mut out = CovPoly::zero();
        for d in 0..=k.degree().max(0) as u8 {
            for a in etas_of_degree(d) {
                let dk = k.d_eta_alpha(&a);
                if dk.is_zero() {
                    continue;
                }
                let dx = x.d_y_alpha(&a);
                let inv = Rational::one() / multi_factorial(&a);
                out = out + (&dk * &dx).map_coeffs(|c| c.scale(&inv));
            }
        }
        out
    }
    /// Substitute numerical covariables; used in spot checks.
    pub fn eval_at(&self, eta: &[EdgeCoeff; 3]) -> EdgeCoeff {
        self.terms
            .iter()
            .map(|(e, c)| c * &eta[0].pow(e[0] as u32) * eta[1].pow(e[1] as u32) * eta[2].pow(e[2] as u32))
            .sum()
    }
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = ["tau", "Theta", "Phi"];
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut m = Vec::new();
                for k in 0..3 {
                    match e[k] {
                        0 => {}
                        1 => m.push(names[k].to_string()),
                        n => m.push(format!("{}^{}", names[k], n)),
                    }
                }
                if m.is_empty() {
                    format!("({})", c.render())
                } else {
                    format!("({})*{}", c.render(), m.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<'a, 'b> Add<&'b CovPoly> for &'a CovPoly {
    type Output = CovPoly;
    fn add(self, o: &CovPoly) -> CovPoly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}
impl<'a, 'b> Sub<&'b CovPoly> for &'a CovPoly {
    type Output = CovPoly;
    fn sub(self, o: &CovPoly) -> CovPoly {
        self + &(-o)
    }
}
impl<'a, 'b> Mul<&'b CovPoly> for &'a CovPoly {
    type Output = CovPoly;
    fn mul(self, o: &CovPoly) -> CovPoly {
        let mut p = CovPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term(eta_add(e1, e2), c1 * c2);
            }
        }
        p
    }
}
impl<'a> Neg for &'a CovPoly {
    type Output = CovPoly;
    fn neg(self) -> CovPoly {
        self.map_coeffs(|c| -c)
    }
}
impl Add for CovPoly {
    type Output = CovPoly;
    fn add(self, o: CovPoly) -> CovPoly {
        &self + &o
    }
}
impl Sub for CovPoly {
    type Output = CovPoly;
    fn sub(self, o: CovPoly) -> CovPoly {
        &self - &o
    }
}
impl Mul for CovPoly {
    type Output = CovPoly;
    fn mul(self, o: CovPoly) -> CovPoly {
        &self * &o
    }
}
impl Neg for CovPoly {
    type Output = CovPoly;
    fn neg(self) -> CovPoly {
        -&self
    }
}
impl fmt::Display for CovPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
impl fmt::Debug for CovPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CKind {
    C0,
    C1,
    C2,
    C1Tilde,
}

/// The covariable polynomials C0, C1, C2 and C1~ = C0 - 4 i t tau + i C1.
pub fn build_c(kind: CKind) -> CovPoly {
    let t = c_gen(Gen::T);
    let cs = c_gen(Gen::Cs);
    let ct = c_gen(Gen::Ct);
    let tau = CovPoly::tau();
    let th = CovPoly::theta();
    let ph = CovPoly::phi();
    let c2 = &(&th * &th) + &(&ph * &ph).scale(&cs);
    match kind {
        CKind::C0 => &(&tau * &tau).scale(&(&t * &t)) + &c2,
        CKind::C1 => &tau.scale(&(&t * c_int(-5))) - &th.scale(&ct),
        CKind::C2 => c2,
        CKind::C1Tilde => {
            let i = c_gen(Gen::I);
            let c0 = build_c(CKind::C0);
            &(&c0 - &tau.scale(&(&t * &i * c_int(4)))) + &build_c(CKind::C1).scale(&i)
        }
    }
}
