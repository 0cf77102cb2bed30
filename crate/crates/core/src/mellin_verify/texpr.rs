use crate::exact_algebra::{c_gen, Coefficient, Gen};
use crate::symbol_model::{d_theta, CovPoly, Eta};
use std::collections::BTreeMap;
use std::fmt;

/// Functions of the edge variable a boundary functional can produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    /// The decay factor e^{-Zt} shared by the noninteracting cases.
    Exp,
    /// d_t^dt of the cutoff-dependent finite part of M(sigma~ u)(point).
    FinitePart { point: i64, dt: u32 },
    /// d_t^dt of an unspecified boundary datum w(t).
    Datum { dt: u32 },
}

impl Basis {
    fn d_t(self) -> Basis {
        match self {
            Basis::Exp => Basis::Exp,
            Basis::FinitePart { point, dt } => Basis::FinitePart { point, dt: dt + 1 },
            Basis::Datum { dt } => Basis::Datum { dt: dt + 1 },
        }
    }

    pub fn render(&self) -> String {
        match self {
            Basis::Exp => "exp(-Z*t)".into(),
            Basis::FinitePart { point, dt: 0 } => format!("Mfp({point})"),
            Basis::FinitePart { point, dt } => format!("dt^{dt} Mfp({point})"),
            Basis::Datum { dt: 0 } => "w".into(),
            Basis::Datum { dt } => format!("dt^{dt} w"),
        }
    }
}

/// Finite linear combination of basis functions with coefficients in t and
/// the angular edge variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TExpr {
    terms: BTreeMap<Basis, Coefficient>,
}

impl TExpr {
    pub fn zero() -> TExpr {
        TExpr::default()
    }

    pub fn basis(b: Basis, c: Coefficient) -> TExpr {
        let mut e = TExpr::zero();
        e.add_term(b, c);
        e
    }

    pub fn add_term(&mut self, b: Basis, c: Coefficient) {
        let v = self.terms.remove(&b).unwrap_or_default() + c;
        if !v.is_zero() {
            self.terms.insert(b, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Coefficient)> {
        self.terms.iter()
    }

    pub fn get(&self, b: &Basis) -> Coefficient {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no cutoff-dependent finite part is present.
    pub fn is_boundary_only(&self) -> bool {
        self.terms.keys().all(|b| !matches!(b, Basis::FinitePart { .. }))
    }

    pub fn add(&self, o: &TExpr) -> TExpr {
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &TExpr) -> TExpr {
        self.add(&o.scale(&-Coefficient::one()))
    }

    pub fn scale(&self, c: &Coefficient) -> TExpr {
        let mut out = TExpr::zero();
        for (b, v) in &self.terms {
            out.add_term(*b, v * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coefficient) -> Coefficient) -> TExpr {
        let mut out = TExpr::zero();
        for (b, v) in &self.terms {
            out.add_term(*b, f(v));
        }
        out
    }

    /// d/dt, with d_t e^{-Zt} = -Z e^{-Zt}.
    pub fn d_t(&self, z: &Coefficient) -> TExpr {
        let mut out = TExpr::zero();
        for (b, v) in &self.terms {
            out.add_term(*b, v.diff(Gen::T));
            let c = if *b == Basis::Exp { -(v * z) } else { v.clone() };
            out.add_term(b.d_t(), c);
        }
        out
    }

    /// d/d theta_2; every basis function is independent of the angles.
    pub fn d_theta(&self) -> TExpr {
        self.map_coeffs(d_theta)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(|(b, c)| format!("({})*{}", c.render(), b.render())).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for TExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Functions of t alone: angular derivative terms are dropped.
    Radial,
    Full,
}

/// Differential operator sum_beta c_beta d_t^b0 d_theta^b1 d_phi^b2 with
/// coefficients on the left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOp {
    terms: BTreeMap<Eta, Coefficient>,
}

impl DiffOp {
    pub fn terms(&self) -> impl Iterator<Item = (&Eta, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &Eta) -> Coefficient {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (b, c) in &o.terms {
            let v = out.terms.remove(b).unwrap_or_default() + c.clone();
            if !v.is_zero() {
                out.terms.insert(*b, v);
            }
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> DiffOp {
        DiffOp { terms: self.terms.iter().map(|(b, v)| (*b, v * c)).filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn apply(&self, f: &TExpr, z: &Coefficient) -> TExpr {
        let mut out = TExpr::zero();
        for (b, c) in &self.terms {
            if b[2] > 0 {
                continue;
            }
            let mut g = f.clone();
            for _ in 0..b[0] {
                g = g.d_t(z);
            }
            for _ in 0..b[1] {
                g = g.d_theta();
            }
            out = out.add(&g.scale(c));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = ["dt", "dtheta", "dphi"];
        self.terms
            .iter()
            .map(|(b, c)| {
                let mut s = format!("({})", c.render());
                for (k, n) in names.iter().enumerate() {
                    match b[k] {
                        0 => {}
                        1 => s.push_str(&format!("*{n}")),
                        e => s.push_str(&format!("*{n}^{e}")),
                    }
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The differential operator op(cp) = sum_beta cp_beta D_y^beta with
/// D_y = -i d_y.
pub fn contract_covariables(cp: &CovPoly, target: Target) -> DiffOp {
    let mi = -c_gen(Gen::I);
    let mut terms = BTreeMap::new();
    for (b, c) in cp.terms() {
        if target == Target::Radial && (b[1] > 0 || b[2] > 0) {
            continue;
        }
        let v = c * &mi.pow(u32::from(b[0] + b[1] + b[2]));
        if !v.is_zero() {
            terms.insert(*b, v);
        }
    }
    DiffOp { terms }
}
