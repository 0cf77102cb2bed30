//! Edge covariable algebra and the Mellin symbols of the edge Hamiltonian.
//!
//! A symbol is a finite sum of terms `r^k * L^m * eta^beta * p(w)` where `L`
//! stands for the Laplace-Beltrami operator of the cone base and `w` is the
//! Mellin covariable, with `(-r d_r)` quantized as `w`.

mod covpoly;

pub use covpoly::{
    build_c, d_t, d_theta, dy_alpha, dy_coeff, eta_degree, etas_of_degree, multi_factorial, CKind, CovPoly,
    EdgeCoeff, Eta, PHI, TAU, THETA,
};

use crate::exact_algebra::{c_frac, c_gen, c_int, Coefficient, Gen, PolyW};
use crate::series_engine::{expand_h, expand_potential, expand_r2_over_sin2, expand_sec2, Edge};
use crate::series_engine::SeriesError;
use std::collections::BTreeMap;
use std::fmt;

/// (r-power, L-power, covariable exponents).
pub type SymKey = (u32, u32, Eta);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct OpSymbol {
    terms: BTreeMap<SymKey, PolyW>,
}

impl OpSymbol {
    pub fn zero() -> OpSymbol {
        OpSymbol::default()
    }
    pub fn term(rpow: u32, lpow: u32, eta: Eta, p: PolyW) -> OpSymbol {
        let mut s = OpSymbol::zero();
        s.add_term((rpow, lpow, eta), p);
        s
    }
    /// `r^rpow L^lpow * cov * p(w)`.
    pub fn from_cov(rpow: u32, lpow: u32, cov: &CovPoly, p: &PolyW) -> OpSymbol {
        let mut s = OpSymbol::zero();
        for (e, c) in cov.terms() {
            s.add_term((rpow, lpow, *e), p.scale(c));
        }
        s
    }
    pub fn add_term(&mut self, k: SymKey, p: PolyW) {
        let v = match self.terms.remove(&k) {
            Some(old) => &old + &p,
            None => p,
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }
    pub fn terms(&self) -> impl Iterator<Item = (&SymKey, &PolyW)> {
        self.terms.iter()
    }
    pub fn get(&self, k: &SymKey) -> PolyW {
        self.terms.get(k).cloned().unwrap_or_else(PolyW::zero)
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
    pub fn add(&self, o: &OpSymbol) -> OpSymbol {
        let mut s = self.clone();
        for (k, p) in &o.terms {
            s.add_term(*k, p.clone());
        }
        s
    }
    pub fn neg(&self) -> OpSymbol {
        self.map(|p| -p)
    }
    pub fn sub(&self, o: &OpSymbol) -> OpSymbol {
        self.add(&o.neg())
    }
    pub fn map(&self, f: impl Fn(&PolyW) -> PolyW) -> OpSymbol {
        let mut s = OpSymbol::zero();
        for (k, p) in &self.terms {
            s.add_term(*k, f(p));
        }
        s
    }
    pub fn scale(&self, c: &Coefficient) -> OpSymbol {
        self.map(|p| p.scale(c))
    }
    /// Pointwise product of symbols (no composition corrections).
    pub fn mul(&self, o: &OpSymbol) -> OpSymbol {
        let mut s = OpSymbol::zero();
        for ((r1, l1, e1), p1) in &self.terms {
            for ((r2, l2, e2), p2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                s.add_term((r1 + r2, l1 + l2, e), p1 * p2);
            }
        }
        s
    }
    pub fn mul_r(&self, k: u32) -> OpSymbol {
        OpSymbol { terms: self.terms.iter().map(|((r, l, e), p)| ((r + k, *l, *e), p.clone())).collect() }
    }
    /// T^m acting on the w-dependence.
    pub fn shift_w(&self, m: i64) -> OpSymbol {
        self.map(|p| p.shift_int(m))
    }
    pub fn d_w(&self) -> OpSymbol {
        self.map(|p| p.derivative())
    }
    /// Partial derivative in the covariable `k` (acting on eta, not on r).
    pub fn d_eta(&self, k: usize) -> OpSymbol {
        let mut s = OpSymbol::zero();
        for ((r, l, e), p) in &self.terms {
            if e[k] > 0 {
                let mut ee = *e;
                ee[k] -= 1;
                s.add_term((*r, *l, ee), p.scale(&c_int(e[k] as i64)));
            }
        }
        s
    }
    /// Replace L by its eigenvalue -l(l+1) on sector `l`.
    pub fn sector_restrict(&self, l: u32) -> OpSymbol {
        let ev = c_int(-((l * (l + 1)) as i64));
        let mut s = OpSymbol::zero();
        for ((r, lp, e), p) in &self.terms {
            s.add_term((*r, 0, *e), p.scale(&ev.pow(*lp)));
        }
        s
    }
    /// Flatness order of a term: r-power minus covariable degree.
    pub fn level_of(k: &SymKey) -> i64 {
        k.0 as i64 - eta_degree(&k.2) as i64
    }
    /// Terms of flatness order exactly `k`, still carrying their r-powers.
    pub fn level_part(&self, k: i64) -> OpSymbol {
        OpSymbol {
            terms: self.terms.iter().filter(|(key, _)| Self::level_of(key) == k).map(|(a, b)| (*a, b.clone())).collect(),
        }
    }
    pub fn truncate(&self, order: i64) -> OpSymbol {
        OpSymbol {
            terms: self
                .terms
                .iter()
                .filter(|(key, _)| Self::level_of(key) <= order)
                .map(|(a, b)| (*a, b.clone()))
                .collect(),
        }
    }
    pub fn max_eta_degree(&self) -> u32 {
        self.terms.keys().map(|k| eta_degree(&k.2)).max().unwrap_or(0)
    }
    pub fn contains_l(&self) -> bool {
        self.terms.keys().any(|k| k.1 > 0)
    }
    /// Covariable polynomial multiplying `r^rpow L^lpow w^d`.
    pub fn cov_part(&self, rpow: u32, lpow: u32, d: usize) -> CovPoly {
        let mut c = CovPoly::zero();
        for ((r, l, e), p) in &self.terms {
            if *r == rpow && *l == lpow {
                c.add_term(*e, p.coeff(d));
            }
        }
        c
    }
    pub fn map_coeffs(&self, f: impl Fn(&Coefficient) -> Coefficient) -> OpSymbol {
        self.map(|p| p.map(&f))
    }
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = ["tau", "Theta", "Phi"];
        let mut parts = Vec::new();
        for ((r, l, e), p) in &self.terms {
            let mut m = Vec::new();
            if *r > 0 {
                m.push(if *r == 1 { "r".to_string() } else { format!("r^{r}") });
            }
            if *l > 0 {
                m.push(if *l == 1 { "L".to_string() } else { format!("L^{l}") });
            }
            for k in 0..3 {
                match e[k] {
                    0 => {}
                    1 => m.push(names[k].to_string()),
                    n => m.push(format!("{}^{}", names[k], n)),
                }
            }
            let head = format!("({})", p.render());
            if m.is_empty() {
                parts.push(head);
            } else {
                parts.push(format!("{}*{}", head, m.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
impl fmt::Debug for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Z1 and Z2 of an edge: the r^0 coefficient of the potential and the r^1
/// coefficient minus tE.
pub fn edge_constants(edge: &Edge) -> Result<(Coefficient, Coefficient), SeriesError> {
    let v = expand_potential(edge, 1)?;
    let te = c_gen(Gen::T) * c_gen(Gen::E);
    Ok((v.coeff(0), v.coeff(1) - te))
}

/// h0 = (w-2)^2 - (w-2) + L as a symbol.
pub fn h0() -> OpSymbol {
    OpSymbol::term(0, 0, [0; 3], PolyW::from_ints(&[6, -5, 1])).add(&OpSymbol::term(0, 1, [0; 3], PolyW::one()))
}

fn inv_2t2() -> Coefficient {
    c_gen(Gen::T).powi(-2).expect("monomial").scale(&crate::exact_algebra::q(1, 2))
}

/// a_level with symbolic Z1, Z2.
pub fn build_a_symbolic(level: u32) -> OpSymbol {
    build_a_with(level, &c_gen(Gen::Z1), &c_gen(Gen::Z2))
}

/// a_level with Z1, Z2 derived from the edge potential.
pub fn build_a(level: u32, edge: &Edge) -> Result<OpSymbol, SeriesError> {
    let (z1, z2) = edge_constants(edge)?;
    Ok(build_a_with(level, &z1, &z2))
}

pub fn build_a_with(level: u32, z1: &Coefficient, z2: &Coefficient) -> OpSymbol {
    let k = inv_2t2();
    let tinv = c_gen(Gen::T).powi(-1).expect("monomial");
    match level {
        0 => h0().shift_w(2).scale(&-&k).add(&OpSymbol::from_cov(2, 0, &build_c(CKind::C0), &PolyW::constant(k))),
        1 => {
            let i = c_gen(Gen::I);
            OpSymbol::from_cov(1, 0, &build_c(CKind::C1), &PolyW::constant(&k * &i))
                .add(&OpSymbol::term(0, 0, [0; 3], PolyW::constant(z1 * &tinv)))
        }
        2 => {
            let w_part = PolyW::w().scale(&(&k * c_frac(-8, 3)));
            let c_part = PolyW::constant(z2 * &tinv);
            OpSymbol::term(0, 0, [0; 3], &w_part + &c_part)
                .add(&OpSymbol::term(0, 1, [0; 3], PolyW::constant(&k * c_frac(-1, 3))))
                .add(&OpSymbol::from_cov(2, 0, &build_c(CKind::C2), &PolyW::constant(k)))
        }
        _ => OpSymbol::zero(),
    }
}

/// Full symbol of r^2 (H_edge - E) through flatness order `order`, assembled
/// directly from the edge operator in hyperspherical coordinates and the
/// Taylor series of its coefficients.
pub fn hamiltonian_symbol(edge: &Edge, order: usize) -> Result<OpSymbol, SeriesError> {
    let n = order + 2;
    let h = expand_h(n)?;
    let rs = expand_r2_over_sin2(n)?;
    let sec = expand_sec2(n)?;
    let v = expand_potential(edge, order.saturating_sub(1).max(1))?;
    let k = inv_2t2();
    let t = c_gen(Gen::T);
    let tinv = t.powi(-1).expect("monomial");
    let i = c_gen(Gen::I);
    let ct = c_gen(Gen::Ct);
    let cs = c_gen(Gen::Cs);
    let w = PolyW::w();
    let one = [0u8; 3];
    let mut s = OpSymbol::term(0, 0, one, (&w * &w).scale(&-&k));
    for j in 0..=n {
        let j32 = j as i32;
        // -(h / 2t^2) w
        s = s.add(&OpSymbol::term(j as u32, 0, one, w.scale(&(-(&k * h.coeff(j32))))));
        // -(1/2t^2)(r^2/sin^2 r) L
        s = s.add(&OpSymbol::term(j as u32, 1, one, PolyW::constant(-(&k * rs.coeff(j32)))));
        // angular part, each carrying r^2 from (r d_theta), (r d_phi)
        let sj = sec.coeff(j32);
        let rp = j as u32 + 2;
        s = s.add(&OpSymbol::term(rp, 0, [0, 2, 0], PolyW::constant(&k * &sj)));
        s = s.add(&OpSymbol::term(rp, 0, [0, 0, 2], PolyW::constant(&k * &cs * &sj)));
        s = s.add(&OpSymbol::term(rp, 0, [0, 1, 0], PolyW::constant(-(&k * &i * &ct * &sj))));
    }
    // -(1/2)(r d_t)^2 - (5r/2t)(r d_t)
    s = s.add(&OpSymbol::term(2, 0, [2, 0, 0], PolyW::constant(c_frac(1, 2))));
    s = s.add(&OpSymbol::term(2, 0, [1, 0, 0], PolyW::constant(&i * &tinv * c_frac(-5, 2))));
    // (r/t) v - E r^2
    for j in 0..=v.order().max(0) {
        s = s.add(&OpSymbol::term(j as u32 + 1, 0, one, PolyW::constant(v.coeff(j) * &tinv)));
    }
    s = s.add(&OpSymbol::term(2, 0, one, PolyW::constant(-c_gen(Gen::E))));
    Ok(s.truncate(order as i64))
}

/// r^k s_k = a - sum_{j<k} r^j a_j, truncated at flatness order `order`.
pub fn remainder_s(k: u32, order: usize, edge: &Edge) -> Result<OpSymbol, SeriesError> {
    if (order as u32) < k {
        return Ok(OpSymbol::zero());
    }
    let mut s = hamiltonian_symbol(edge, order)?;
    for j in 0..k {
        s = s.sub(&build_a(j, edge)?.mul_r(j));
    }
    Ok(s)
}

/// Sum of r^j a_j for j <= 2 with the given edge.
pub fn a_through_second(edge: &Edge) -> Result<OpSymbol, SeriesError> {
    let mut s = OpSymbol::zero();
    for j in 0..=2 {
        s = s.add(&build_a(j, edge)?.mul_r(j));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{parse_coefficient, q};

    fn c(s: &str) -> Coefficient {
        parse_coefficient(s).unwrap()
    }

    #[test]
    fn c_polynomials() {
        let c0 = build_c(CKind::C0);
        assert_eq!(c0.coeff(&[2, 0, 0]), c("t^2"));
        assert_eq!(c0.coeff(&[0, 2, 0]), c("1"));
        assert_eq!(c0.coeff(&[0, 0, 2]), c("cs"));
        let c2 = build_c(CKind::C2);
        assert_eq!(&c0 - &c2, CovPoly::monomial([2, 0, 0], c("t^2")));
        let ct = build_c(CKind::C1Tilde);
        let expect = &(&c0 - &CovPoly::tau().scale(&c("4*i*t"))) + &build_c(CKind::C1).scale(&c("i"));
        assert_eq!(ct, expect);
        let zero = ct.map_coeffs(|x| {
            x.subs_all(&[(Gen::T, c("0")), (Gen::Ct, c("0")), (Gen::Cs, c("0"))])
        });
        assert!(zero.eval_at(&[c("0"), c("0"), c("0")]).is_zero());
    }

    #[test]
    fn theta_derivatives() {
        // d/dtheta cot = -csc^2, d/dtheta csc^2 = -2 csc^2 cot
        assert_eq!(d_theta(&c("ct")), c("-cs"));
        assert_eq!(d_theta(&c("cs")), c("-2*cs*ct"));
        assert_eq!(d_t(&c("t^3")), c("3*t^2"));
    }

    #[test]
    fn compose_contraction() {
        // tau composed with t^2 gives -i * 2t
        let k = CovPoly::tau();
        let x = CovPoly::constant(c("t^2"));
        let out = CovPoly::compose(&k, &x);
        assert_eq!(out.coeff(&[0, 0, 0]), c("-2*i*t"));
        assert_eq!(out.coeff(&[1, 0, 0]), c("t^2"));
    }

    #[test]
    fn a_levels() {
        let a1 = build_a(1, &Edge::Ee).unwrap();
        assert_eq!(a1.get(&(0, 0, [0; 3])).coeff(0), c("1/2*s*t^-1"));
        let a1 = build_a(1, &Edge::En).unwrap();
        assert_eq!(a1.get(&(0, 0, [0; 3])).coeff(0), c("-Z*t^-1"));
        let a0 = build_a(0, &Edge::En).unwrap().sector_restrict(0);
        let p = a0.get(&(0, 0, [0; 3]));
        let expect = PolyW::from_ints(&[6, -5, 1]).shift_int(2).scale(&c("-1/2*t^-2"));
        assert_eq!(p, expect);
    }

    #[test]
    fn eta_degree_two_part_of_a0() {
        let a0 = build_a(0, &Edge::En).unwrap();
        assert!(a0.max_eta_degree() <= 2);
        let mut top = OpSymbol::zero();
        for (k, p) in a0.terms() {
            if eta_degree(&k.2) == 2 {
                top.add_term(*k, p.clone());
            }
        }
        assert_eq!(top, OpSymbol::from_cov(2, 0, &build_c(CKind::C0), &PolyW::constant(c("1/2*t^-2"))));
    }

    #[test]
    fn hamiltonian_cross_check() {
        for edge in [Edge::En, Edge::Ee, Edge::EnNoEe] {
            let full = hamiltonian_symbol(&edge, 2).unwrap();
            assert_eq!(full, a_through_second(&edge).unwrap(), "{edge:?}");
        }
    }

    #[test]
    fn remainders() {
        let r2s2 = remainder_s(2, 2, &Edge::En).unwrap();
        assert_eq!(r2s2, build_a(2, &Edge::En).unwrap().mul_r(2));
        let rs1 = remainder_s(1, 2, &Edge::En).unwrap();
        assert_eq!(rs1.level_part(1), build_a(1, &Edge::En).unwrap().mul_r(1));
        assert!(remainder_s(3, 2, &Edge::En).unwrap().is_zero());
        let r3s3 = remainder_s(3, 3, &Edge::En).unwrap();
        assert!(!r3s3.is_zero());
        assert!(r3s3.terms().all(|(k, _)| OpSymbol::level_of(k) == 3));
    }

    #[test]
    fn sector_h0() {
        let p0 = h0().sector_restrict(0).get(&(0, 0, [0; 3]));
        assert_eq!(p0, PolyW::from_ints(&[6, -5, 1]));
        let p2 = h0().sector_restrict(2).get(&(0, 0, [0; 3]));
        assert_eq!(p2, PolyW::from_ints(&[0, -5, 1]));
        for l in 0..20i64 {
            let p = h0().sector_restrict(l as u32).get(&(0, 0, [0; 3]));
            assert!(p.eval_q(&q(3 + l, 1)).is_zero() && p.eval_q(&q(2 - l, 1)).is_zero());
            assert_ne!(3 + l, 2 - l);
        }
    }
}
