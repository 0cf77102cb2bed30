//! Parametrix symbols d^(k)_{n,j} on angular sectors, the Leibniz-Mellin
//! defining equations they satisfy, conormal symbols and the pole census.
//!
//! A symbol d^(k)_{n,j}(w, r eta) is stored as a map from covariable
//! monomials eta^beta (|beta| = j) to rational functions of w; the factor
//! r^j from the homogeneity in r eta is implicit. In the defining equations
//! (-r d_r) acts on r^n d_{n,j} as multiplication by -(n + j).

mod solver;

pub use solver::{
    amplitude, checked_components, equation, solve_table, verify_defining_equations, verify_with_table, DTable,
    MSym, Residual,
};

use crate::exact_algebra::{c_frac, c_gen, c_int, AlgebraError, Coefficient, Gen, LRatFunc, LinRoot, PolyW, RatFuncW};
use crate::symbol_model::{build_c, eta_degree, CKind, CovPoly, Eta};
use std::collections::BTreeMap;

/// Covariable monomial -> rational function in w.
pub type HomSym = BTreeMap<Eta, RatFuncW>;

pub fn hom_add(a: &HomSym, b: &HomSym) -> HomSym {
    let mut out = a.clone();
    for (e, r) in b {
        let v = match out.remove(e) {
            Some(x) => &x + r,
            None => r.clone(),
        };
        if !v.is_zero() {
            out.insert(*e, v);
        }
    }
    out
}

pub fn hom_scale(a: &HomSym, c: &Coefficient) -> HomSym {
    a.iter().map(|(e, r)| (*e, r.scale(c))).filter(|(_, r)| !r.is_zero()).collect()
}

/// cov(eta) * rat(w) as a map over monomials.
pub fn hom_from(cov: &CovPoly, rat: &RatFuncW) -> HomSym {
    let mut out = HomSym::new();
    for (e, c) in cov.terms() {
        let v = rat.scale(c);
        if !v.is_zero() {
            out.insert(*e, v);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParametrixError {
    #[error("d^({k})_({n},{j}) is outside the implemented range")]
    Range { k: u32, n: u32, j: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A parametrix symbol restricted to sector l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorSymbol {
    pub level: u32,
    pub n: u32,
    pub j: u32,
    pub l: u32,
    pub value: HomSym,
}

impl SectorSymbol {
    pub fn zero(level: u32, n: u32, j: u32, l: u32) -> SectorSymbol {
        SectorSymbol { level, n, j, l, value: HomSym::new() }
    }
    pub fn from_parts(level: u32, n: u32, j: u32, l: u32, cov: &CovPoly, rat: &RatFuncW) -> SectorSymbol {
        SectorSymbol { level, n, j, l, value: hom_from(cov, rat) }
    }
    /// r-power carried by the (r eta)-homogeneous form.
    pub fn rpow(&self) -> u32 {
        self.j
    }
    pub fn is_zero(&self) -> bool {
        self.value.is_empty()
    }
    pub fn is_homogeneous(&self) -> bool {
        self.value.keys().all(|e| eta_degree(e) == self.j)
    }
    pub fn scale(&self, c: &Coefficient) -> SectorSymbol {
        SectorSymbol { value: hom_scale(&self.value, c), ..self.clone() }
    }
    pub fn shift(&self, m: i64) -> SectorSymbol {
        SectorSymbol { value: self.value.iter().map(|(e, r)| (*e, r.shift(m))).collect(), ..self.clone() }
    }
    /// Union of the pole sets of all components, with maximal multiplicity.
    pub fn poles(&self) -> BTreeMap<i64, u32> {
        let mut out = BTreeMap::new();
        for r in self.value.values() {
            for (p, m) in r.pole_set() {
                let e = out.entry(p).or_insert(0);
                *e = (*e).max(m);
            }
        }
        out
    }
    pub fn label(&self) -> String {
        format!("d^({})_({},{})", self.level, self.n, self.j)
    }
    pub fn render(&self) -> String {
        if self.value.is_empty() {
            return "0".into();
        }
        let names = ["tau", "Theta", "Phi"];
        let parts: Vec<String> = self
            .value
            .iter()
            .map(|(e, r)| {
                let mut m = Vec::new();
                for k in 0..3 {
                    match e[k] {
                        0 => {}
                        1 => m.push(format!("(r*{})", names[k])),
                        p => m.push(format!("(r*{})^{}", names[k], p)),
                    }
                }
                if m.is_empty() {
                    r.render()
                } else {
                    format!("{}*{}", r.render(), m.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Roots of h0 - p(2w - 5 - p) on sector l: p + 3 + l and p + 2 - l.
pub fn hp_roots(p: i64, l: u32) -> [i64; 2] {
    let l = l as i64;
    [p + 3 + l, p + 2 - l]
}

/// h0 - p(2w - 5 - p) restricted to sector l.
pub fn hp_poly(p: i64, l: u32) -> PolyW {
    let [a, b] = hp_roots(p, l);
    &PolyW::linear(c_int(a)) * &PolyW::linear(c_int(b))
}

/// 1 / (h0 - p(2w - 5 - p)) on sector l.
pub fn inv_hp(p: i64, l: u32) -> RatFuncW {
    RatFuncW::from_roots(PolyW::one(), &hp_roots(p, l))
}

/// Sector-generic 1 / (h0 - p(2w - 5 - p)).
pub fn inv_hp_generic(p: i64) -> LRatFunc {
    LRatFunc::new(PolyW::one(), &[LinRoot::new(1, p + 3), LinRoot::new(-1, p + 2)])
}

/// b_0 = 1/h0, b_n = b_{n-1} / (h0 - 2n(2w - 5 - 2n)).
pub fn b_seq(n_max: u32, l: u32) -> Vec<RatFuncW> {
    let mut v = vec![inv_hp(0, l)];
    for n in 1..=n_max as i64 {
        let next = v.last().unwrap() * &inv_hp(2 * n, l);
        v.push(next);
    }
    v
}

pub fn b_generic(n: u32) -> LRatFunc {
    (1..=n as i64).fold(inv_hp_generic(0), |acc, k| acc.mul(&inv_hp_generic(2 * k)))
}

/// P_{1,2j+1} = 4i [ t tau C0^j + j (t^3 tau^3 - Theta Phi^2 ct cs) C0^(j-1) ].
pub fn p1(j: u32) -> CovPoly {
    let c0 = build_c(CKind::C0);
    let t = c_gen(Gen::T);
    let tau = CovPoly::tau();
    let mut p = &tau.scale(&t) * &c0.pow(j);
    if j > 0 {
        let cubic = &tau.pow(3).scale(&t.pow(3))
            - &(&CovPoly::theta() * &CovPoly::phi().pow(2)).scale(&(c_gen(Gen::Ct) * c_gen(Gen::Cs)));
        p = &p + &(&cubic * &c0.pow(j - 1)).scale(&c_int(j as i64));
    }
    p.scale(&(c_gen(Gen::I) * c_int(4)))
}

/// P_{2,2} = 34 t^2 tau^2 + 2 (cs^2 + 2 ct^2 cs) Phi^2 + 4 C0.
pub fn p22() -> CovPoly {
    let t = c_gen(Gen::T);
    let cs = c_gen(Gen::Cs);
    let ct = c_gen(Gen::Ct);
    let a = CovPoly::tau().pow(2).scale(&(t.pow(2) * c_int(34)));
    let b = CovPoly::phi().pow(2).scale(&((&cs * &cs + ct.pow(2) * &cs * c_int(2)) * c_int(2)));
    &(&a + &b) + &build_c(CKind::C0).scale(&c_int(4))
}

fn two_t_z1() -> Coefficient {
    c_gen(Gen::T) * c_gen(Gen::Z1) * c_int(2)
}

/// Closed form of d^(k)_{n,j} as cov * rat, where one is printed.
fn closed_form(k: u32, n: u32, j: u32, l: u32) -> Option<(CovPoly, RatFuncW)> {
    let b = |m: u32| b_seq(m, l).pop().unwrap();
    let c0 = build_c(CKind::C0);
    let i = c_gen(Gen::I);
    match (k, n, j) {
        (0, 0, j) if j % 2 == 0 => Some((c0.pow(j / 2), b(j / 2))),
        (0, 1, j) if j % 2 == 1 => {
            let m = (j - 1) / 2;
            let mut s = CovPoly::zero();
            for kk in 0..=m {
                s = &s + &(&c0.pow(m - kk) * &p1(kk));
            }
            Some((-s, b(m + 1)))
        }
        (0, 2, 0) => Some((CovPoly::constant(c_int(-2)), b(1))),
        (0, 2, 2) => Some((-p22(), b(2))),
        (1, 0, 0) => Some((CovPoly::constant(two_t_z1()), &inv_hp(0, l) * &inv_hp(1, l))),
        (1, 0, 1) => Some((build_c(CKind::C1).scale(&i), b(1))),
        (1, 1, 0) => Some((CovPoly::constant(c_int(-10)), b(1))),
        (2, 0, 0) => Some((CovPoly::one(), d2_00_rat(l))),
        _ => None,
    }
}

fn d2_00_rat(l: u32) -> RatFuncW {
    let h0 = inv_hp(0, l);
    let first = (&(&h0 * &inv_hp(1, l)) * &inv_hp(2, l)).scale(&two_t_z1().pow(2));
    // 8(w-2) + L - 6 t Z2 with L = -l(l+1)
    let lam = -((l * (l + 1)) as i64);
    let num = PolyW::new(vec![
        c_int(-16 + lam) - c_gen(Gen::T) * c_gen(Gen::Z2) * c_int(6),
        c_int(8),
    ]);
    let second = (&h0 * &inv_hp(2, l)).mul_poly(&num).scale(&c_frac(-1, 3));
    &first + &second
}

/// Whether compute_d supports (k, n, j).
pub fn in_range(k: u32, n: u32, j: u32) -> bool {
    match k {
        0 => true,
        1 => matches!((n, j), (0, 0) | (0, 1) | (1, 0)),
        2 => (n, j) == (0, 0),
        _ => false,
    }
}

/// d^(k)_{n,j} on sector l. Level 0 uses the closed forms where available
/// and the general recursion otherwise; parity zeros are exact zeros.
pub fn compute_d(k: u32, n: u32, j: u32, l: u32) -> Result<SectorSymbol, ParametrixError> {
    if !in_range(k, n, j) {
        return Err(ParametrixError::Range { k, n, j });
    }
    if k == 0 && (n + j) % 2 == 1 {
        return Ok(SectorSymbol::zero(k, n, j, l));
    }
    if let Some((cov, rat)) = closed_form(k, n, j, l) {
        return Ok(SectorSymbol::from_parts(k, n, j, l, &cov, &rat));
    }
    let mut spec = Vec::new();
    for nn in 0..=n {
        for jj in 0..=j {
            spec.push((0, nn, jj));
        }
    }
    let table = solve_table(&spec, l)?;
    Ok(SectorSymbol { level: k, n, j, l, value: table.get(&(0, n, j)).cloned().unwrap_or_default() })
}

/// The implemented table used by the equation checks.
pub fn default_table(l: u32) -> Result<DTable, ParametrixError> {
    let mut t = DTable::new();
    let idx: &[(u32, u32, u32)] = &[
        (0, 0, 0),
        (0, 0, 2),
        (0, 0, 4),
        (0, 1, 1),
        (0, 1, 3),
        (0, 1, 5),
        (0, 2, 0),
        (0, 2, 2),
        (1, 0, 0),
        (1, 0, 1),
        (1, 1, 0),
        (2, 0, 0),
    ];
    for &(k, n, j) in idx {
        t.insert((k, n, j), compute_d(k, n, j, l)?.value);
    }
    Ok(t)
}

/// Truncated expansion of a_k^(-1): the terms -2t^2 r^n d^(k)_{n,j} with
/// n + j <= order, nonzero and in range.
pub fn mellin_symbol_expansion(k: u32, order: i64, l: u32) -> Result<Vec<SectorSymbol>, ParametrixError> {
    let mut out = Vec::new();
    if order < 0 {
        return Ok(out);
    }
    let m2t2 = c_gen(Gen::T).pow(2) * c_int(-2);
    for s in 0..=order as u32 {
        for n in 0..=s {
            let j = s - n;
            if !in_range(k, n, j) {
                continue;
            }
            let d = compute_d(k, n, j, l)?;
            if !d.is_zero() {
                out.push(d.scale(&m2t2));
            }
        }
    }
    Ok(out)
}

/// Conormal symbol sigma_c^{-2-j}(p_{M,k}) = -2t^2 sum_m d^(k)_{j-k-m,m}(w, eta)
/// over the implemented indices, as a polynomial in eta.
pub fn conormal(k: u32, j: u32, l: u32) -> Result<HomSym, ParametrixError> {
    let mut out = HomSym::new();
    if j < k {
        return Ok(out);
    }
    let m2t2 = c_gen(Gen::T).pow(2) * c_int(-2);
    for m in 0..=(j - k) {
        let n = j - k - m;
        if !in_range(k, n, m) {
            continue;
        }
        out = hom_add(&out, &hom_scale(&compute_d(k, n, m, l)?.value, &m2t2));
    }
    Ok(out)
}

/// Sector-generic closed forms used by the residue tables: (cov, rat in w
/// with l-linear roots). Numerators may contain the generator l.
pub fn generic_d(k: u32, n: u32, j: u32) -> Option<(CovPoly, LRatFunc)> {
    let c0 = build_c(CKind::C0);
    let i = c_gen(Gen::I);
    match (k, n, j) {
        (0, 0, 0) => Some((CovPoly::one(), b_generic(0))),
        (0, 0, 2) => Some((c0, b_generic(1))),
        (0, 1, 1) => Some((-p1(0), b_generic(1))),
        (0, 2, 0) => Some((CovPoly::constant(c_int(-2)), b_generic(1))),
        (1, 0, 0) => Some((CovPoly::constant(two_t_z1()), inv_hp_generic(0).mul(&inv_hp_generic(1)))),
        (1, 0, 1) => Some((build_c(CKind::C1).scale(&i), b_generic(1))),
        (1, 1, 0) => Some((CovPoly::constant(c_int(-10)), b_generic(1))),
        (2, 0, 0) => {
            let first = LRatFunc {
                num: PolyW::constant(two_t_z1().pow(2)),
                den: inv_hp_generic(0).mul(&inv_hp_generic(1)).mul(&inv_hp_generic(2)).den,
            };
            let l = c_gen(Gen::L);
            let lam = -(&l * &l) - &l;
            let num = PolyW::new(vec![
                (c_int(-16) + lam - c_gen(Gen::T) * c_gen(Gen::Z2) * c_int(6)) * c_frac(-1, 3),
                c_frac(-8, 3),
            ]);
            let second = LRatFunc { num, den: inv_hp_generic(0).mul(&inv_hp_generic(2)).den };
            Some((CovPoly::one(), first.add(&second)))
        }
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// Poles of one symbol on one sector with their side of Re w = 7/2 - gamma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReport {
    pub symbol: String,
    pub l: u32,
    pub poles: BTreeMap<i64, u32>,
    pub sides: BTreeMap<i64, Side>,
}

impl PoleReport {
    pub fn multiple_poles(&self) -> Vec<(i64, u32)> {
        self.poles.iter().filter(|(_, m)| **m > 1).map(|(p, m)| (*p, *m)).collect()
    }
}

/// Side of the contour Re w = 7/2 - gamma for an integer pole.
pub fn contour_side(pole: i64, gamma: &crate::exact_algebra::Rational) -> Side {
    let line = crate::exact_algebra::q(7, 2) - gamma;
    if crate::exact_algebra::qi(pole) > line {
        Side::Right
    } else {
        Side::Left
    }
}

/// Poles of d^(k)_{0,0} for each requested level and sector l <= l_max.
pub fn pole_census(
    levels: &[u32],
    l_max: u32,
    gamma: &crate::exact_algebra::Rational,
) -> Result<Vec<PoleReport>, ParametrixError> {
    let mut out = Vec::new();
    for &k in levels {
        for l in 0..=l_max {
            let d = compute_d(k, 0, 0, l)?;
            let poles = d.poles();
            let sides = poles.keys().map(|p| (*p, contour_side(*p, gamma))).collect();
            out.push(PoleReport { symbol: d.label(), l, poles, sides });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
