use super::terms::{Expr, GreenTerm};
use crate::exact_algebra::{c_frac, c_int, Coefficient, PolyW};
use crate::symbol_model::{CovPoly, Eta};
use std::collections::BTreeMap;

/// Irreducible functionals after unfolding op(a), s_k and h_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    /// M(sigma~' sigma op(a) sigma~ u)
    E,
    /// M(op(p / 2t^2) sigma~ u); the stored value is p
    P,
    C0,
    IC1,
    C2,
    Z1,
    Z2,
    S3,
}

/// (r-power, functional, internal point, kernel monomial).
pub type AtomKey = (u32, Base, i64, Eta);

/// Formal linear combination of base functionals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomSum {
    terms: BTreeMap<AtomKey, PolyW>,
}

/// w^2 - w - l(l+1), the sector symbol of T^2 h0.
pub fn h_poly(l: u32) -> PolyW {
    let l = l as i64;
    PolyW::from_ints(&[-l * (l + 1), -1, 1])
}

impl AtomSum {
    pub fn new() -> AtomSum {
        AtomSum::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AtomKey, &PolyW)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &AtomKey) -> PolyW {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    /// Constant part of an entry.
    pub fn scalar(&self, k: &AtomKey) -> Coefficient {
        self.get(k).coeff(0)
    }

    pub fn add_base(&mut self, k: AtomKey, v: PolyW) {
        let nv = match self.terms.remove(&k) {
            Some(x) => &x + &v,
            None => v,
        };
        if !nv.is_zero() {
            self.terms.insert(k, nv);
        }
    }

    pub fn add_sum(&mut self, o: &AtomSum) {
        for (k, v) in &o.terms {
            self.add_base(*k, v.clone());
        }
    }

    pub fn scale(&self, c: &Coefficient) -> AtomSum {
        let mut out = AtomSum::new();
        for (k, v) in &self.terms {
            out.add_base(*k, v.scale(c));
        }
        out
    }

    pub fn sub(&self, o: &AtomSum) -> AtomSum {
        let mut out = self.clone();
        out.add_sum(&o.scale(&c_int(-1)));
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coefficient) -> Coefficient) -> AtomSum {
        let mut out = AtomSum::new();
        for (k, v) in &self.terms {
            out.add_base(*k, v.map(&f));
        }
        out
    }

    /// Keep the entries with r-power at most `order`.
    pub fn truncate(&self, order: u32) -> AtomSum {
        AtomSum { terms: self.terms.iter().filter(|(k, _)| k.0 <= order).map(|(k, v)| (*k, v.clone())).collect() }
    }

    /// Add c * r^rpow * X(point) with kernel eta^kernel, unfolded in sector l.
    pub fn add_expr(&mut self, rpow: u32, x: &Expr, point: i64, kernel: Eta, c: &Coefficient, l: u32) {
        if c.is_zero() {
            return;
        }
        let base = |b: Base| (rpow, b, point, kernel);
        let one = PolyW::constant(c.clone());
        match x {
            Expr::E => self.add_base(base(Base::E), one),
            Expr::C0 => self.add_base(base(Base::C0), one),
            Expr::IC1 => self.add_base(base(Base::IC1), one),
            Expr::C2 => self.add_base(base(Base::C2), one),
            Expr::Z1 => self.add_base(base(Base::Z1), one),
            Expr::Z2 => self.add_base(base(Base::Z2), one),
            Expr::S3 => self.add_base(base(Base::S3), one),
            Expr::P(p) => self.add_base(base(Base::P), p.scale(c)),
            Expr::W2 => {
                let lam = c_int((l * (l + 1)) as i64);
                let p = PolyW::new(vec![lam * c_frac(1, 3), c_frac(-8, 3)]);
                self.add_expr(rpow, &Expr::P(p), point, kernel, c, l);
                self.add_expr(rpow, &Expr::Z2, point, kernel, c, l);
            }
            // s2 = a2 + r s3
            Expr::S2 => {
                self.add_expr(rpow, &Expr::W2, point, kernel, c, l);
                self.add_expr(rpow, &Expr::C2, point + 2, kernel, c, l);
                self.add_expr(rpow, &Expr::S3, point + 1, kernel, c, l);
            }
            // s1 = a1 + r s2
            Expr::S1 => {
                self.add_expr(rpow, &Expr::IC1, point + 1, kernel, c, l);
                self.add_expr(rpow, &Expr::Z1, point, kernel, c, l);
                self.add_expr(rpow, &Expr::S2, point + 1, kernel, c, l);
            }
            // a = a0 + r s1 with a0 = -(1/2t^2) T^2 h0 + r^2 C0 / 2t^2
            Expr::A => {
                let m = -c;
                self.add_expr(rpow, &Expr::E, point, kernel, c, l);
                self.add_expr(rpow, &Expr::P(-&h_poly(l)), point, kernel, &m, l);
                self.add_expr(rpow, &Expr::C0, point + 2, kernel, &m, l);
                self.add_expr(rpow, &Expr::S1, point + 1, kernel, &m, l);
            }
            Expr::H(k) => {
                let m = -c;
                self.add_expr(rpow, &Expr::P(h_poly(l)), point, kernel, c, l);
                if *k >= 2 {
                    self.add_expr(rpow, &Expr::Z1, point + 1, kernel, &m, l);
                }
                if *k >= 3 {
                    let p = PolyW::new(vec![c_int(-2), c_frac(8, 3)]);
                    self.add_expr(rpow, &Expr::P(p), point + 2, kernel, c, l);
                    self.add_expr(rpow, &Expr::C0, point + 2, kernel, &m, l);
                    self.add_expr(rpow, &Expr::IC1, point + 2, kernel, &m, l);
                    self.add_expr(rpow, &Expr::Z2, point + 2, kernel, &m, l);
                }
            }
        }
    }

    /// Add c * r^rpow * sum_beta K_beta X(point) for a kernel polynomial K.
    pub fn add_kernel_expr(&mut self, rpow: u32, x: &Expr, point: i64, kernel: &CovPoly, c: &Coefficient, l: u32) {
        for (b, kc) in kernel.terms() {
            self.add_expr(rpow, x, point, *b, &(c * kc), l);
        }
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = &'a GreenTerm>) -> AtomSum {
        let mut s = AtomSum::new();
        for t in terms {
            s.add_expr(t.rpow, &t.expr, t.point, t.kernel, &t.scalar, t.l);
        }
        s
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((r, b, p, k), v)| format!("r^{r} {b:?}@{p} K{k:?}: {}", v.render()))
            .collect::<Vec<_>>()
            .join("\n")
    }
}
