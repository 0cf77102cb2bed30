use super::atoms::{AtomSum, Base};
use super::terms::Expr;
use super::{assemble_all, GreenError};
use crate::exact_algebra::{c_frac, c_gen, c_int, parse_coefficient, Coefficient, Gen};
use crate::series_engine::Edge;
use crate::symbol_model::{build_c, edge_constants, CKind, CovPoly, Eta};
use serde::Deserialize;
use std::collections::BTreeMap;

/// One functional c * sum_beta K_beta X(point) inside a Q descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPiece {
    pub coef: Coefficient,
    pub expr: Expr,
    pub point: i64,
    pub kernel: CovPoly,
}

impl QPiece {
    pub fn render(&self) -> String {
        let k = if self.kernel == CovPoly::one() { String::new() } else { "K[C1~] ".into() };
        format!("({}) {k}M({} s~u)({})", self.coef.render(), self.expr.display_label(), self.point - self.expr.weight())
    }
}

/// Raw and simplified forms of Q_{l,n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDescriptor {
    pub l: u32,
    pub n: u32,
    pub raw: Vec<QPiece>,
    pub simplified: Vec<QPiece>,
}

fn expand(pieces: &[QPiece], l: u32, rpow: u32, scale: &Coefficient) -> AtomSum {
    let mut s = AtomSum::new();
    for p in pieces {
        s.add_kernel_expr(rpow, &p.expr, p.point, &p.kernel, &(&p.coef * scale), l);
    }
    s
}

impl QDescriptor {
    pub fn expand_raw(&self) -> AtomSum {
        expand(&self.raw, self.l, 0, &Coefficient::one())
    }
    pub fn expand_simplified(&self) -> AtomSum {
        expand(&self.simplified, self.l, 0, &Coefficient::one())
    }
    /// The raw and simplified forms unfold to the same base functionals.
    pub fn identity_holds(&self) -> bool {
        self.expand_raw() == self.expand_simplified()
    }
}

fn tz1() -> Coefficient {
    c_gen(Gen::T) * c_gen(Gen::Z1)
}

fn piece(coef: &Coefficient, expr: Expr, point: i64, kernel: &CovPoly) -> QPiece {
    QPiece { coef: coef.clone(), expr, point, kernel: kernel.clone() }
}

/// [ (s~'s - 1) op(a) ](p) + M(r^2 C0/2t^2)(p) + M(op(r s1))(p) and its h1 form.
fn block_h1(c: &Coefficient, p: i64, k: &CovPoly) -> (Vec<QPiece>, Vec<QPiece>) {
    (
        vec![piece(c, Expr::A, p, k), piece(c, Expr::C0, p + 2, k), piece(c, Expr::S1, p + 1, k)],
        vec![piece(c, Expr::E, p, k), piece(c, Expr::H(1), p, k)],
    )
}

/// The block at p with r^2 C0, i r^2 C1 and op(r^2 s2), and its h2 form.
fn block_h2(c: &Coefficient, p: i64, k: &CovPoly) -> (Vec<QPiece>, Vec<QPiece>) {
    (
        vec![
            piece(c, Expr::A, p, k),
            piece(c, Expr::C0, p + 2, k),
            piece(c, Expr::IC1, p + 2, k),
            piece(c, Expr::S2, p + 2, k),
        ],
        vec![piece(c, Expr::E, p, k), piece(c, Expr::H(2), p, k)],
    )
}

/// The block at p with r^4 C2 and op(r^3 s3), and its h3 form.
fn block_h3(c: &Coefficient, p: i64, k: &CovPoly) -> (Vec<QPiece>, Vec<QPiece>) {
    (
        vec![piece(c, Expr::A, p, k), piece(c, Expr::C2, p + 4, k), piece(c, Expr::S3, p + 3, k)],
        vec![piece(c, Expr::E, p, k), piece(c, Expr::H(3), p, k)],
    )
}

fn join(parts: Vec<(Vec<QPiece>, Vec<QPiece>)>) -> (Vec<QPiece>, Vec<QPiece>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (x, y) in parts {
        a.extend(x);
        b.extend(y);
    }
    (a, b)
}

/// Q_{l,n} for (l, n) in {(0,1), (0,2), (1,1), (2,1), (2,2)}.
pub fn q_descriptor(l: u32, n: u32) -> Result<QDescriptor, GreenError> {
    let one = Coefficient::one();
    let unit = CovPoly::one();
    let c1t = build_c(CKind::C1Tilde);
    let (raw, simplified) = match (l, n) {
        (0, 1) => block_h1(&one, 0, &unit),
        (0, 2) | (2, 2) => block_h1(&one, 0, &c1t),
        (1, 1) => join(vec![block_h2(&one, -1, &unit), block_h1(&-tz1(), 0, &unit)]),
        (2, 1) => {
            let c = (c_int(10) + tz1().pow(2) - c_gen(Gen::T) * c_gen(Gen::Z2) * c_int(2)) * c_frac(1, 6);
            join(vec![
                block_h3(&one, -2, &unit),
                block_h2(&(tz1() * c_frac(-1, 2)), -1, &unit),
                block_h1(&c, 0, &unit),
            ])
        }
        _ => return Err(GreenError::UnknownQ { l, n }),
    };
    Ok(QDescriptor { l, n, raw, simplified })
}

/// The Q functionals present on each sector.
pub const Q_INDEX: [(u32, u32); 5] = [(0, 1), (0, 2), (1, 1), (2, 1), (2, 2)];

/// Leading functional identifying the multiplier of Q_{l,n}: the
/// sigma~'sigma op(a) atom at the given point and kernel monomial.
fn leading(l: u32, n: u32) -> (i64, Eta) {
    match (l, n) {
        (0, 1) => (0, [0; 3]),
        (1, 1) => (-1, [0; 3]),
        (2, 1) => (-2, [0; 3]),
        _ => (0, [0, 2, 0]),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    En,
    Ee,
}

impl EdgeKind {
    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::En => "en",
            EdgeKind::Ee => "ee",
        }
    }
    pub fn edge(self) -> Edge {
        match self {
            EdgeKind::En => Edge::En,
            EdgeKind::Ee => Edge::Ee,
        }
    }
}

/// Multipliers of Q_{l,n} as coefficients of r^0, r^1, r^2, without the
/// common prefactor 2t^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierRow {
    pub l: u32,
    pub n: u32,
    pub derived: [Coefficient; 3],
    pub printed: [Coefficient; 3],
    pub diff: [Coefficient; 3],
}

impl MultiplierRow {
    pub fn is_exact(&self) -> bool {
        self.diff.iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Table {
    pub edge: EdgeKind,
    pub z1: Coefficient,
    pub z2: Coefficient,
    /// Edge constants as printed.
    pub printed_z1: Coefficient,
    pub printed_z2: Coefficient,
    /// Multipliers in terms of the symbols Z1, Z2.
    pub symbolic: Vec<MultiplierRow>,
    /// The same with the edge constants substituted.
    pub rows: Vec<MultiplierRow>,
    /// G P_l minus 2t^2 sum_n multiplier * Q_{l,n}, per sector 0..=5.
    pub residuals: BTreeMap<u32, AtomSum>,
}

impl Theorem1Table {
    pub fn is_exact(&self) -> bool {
        self.rows.iter().chain(&self.symbolic).all(|r| r.is_exact())
            && self.residuals.values().all(|r| r.is_zero())
            && self.z1 == self.printed_z1
            && self.z2 == self.printed_z2
    }
}

#[derive(Clone, Debug, Deserialize)]
struct FixtureRow {
    l: u32,
    n: u32,
    coeffs: [String; 3],
}

#[derive(Clone, Debug, Deserialize)]
struct Theorem1Fixture {
    rows: Vec<FixtureRow>,
    edges: BTreeMap<String, BTreeMap<String, String>>,
}

pub const THEOREM1_FIXTURE: &str = include_str!("../../fixtures/theorem1.json");

fn parse(s: &str) -> Result<Coefficient, GreenError> {
    parse_coefficient(s).map_err(|e| GreenError::Fixture(e.to_string()))
}

fn load() -> Result<Theorem1Fixture, GreenError> {
    serde_json::from_str(THEOREM1_FIXTURE).map_err(|e| GreenError::Fixture(e.to_string()))
}

/// Printed multipliers (symbolic in Z1, Z2) keyed by (l, n).
pub fn printed_multipliers() -> Result<BTreeMap<(u32, u32), [Coefficient; 3]>, GreenError> {
    let fx = load()?;
    let mut out = BTreeMap::new();
    for r in fx.rows {
        out.insert((r.l, r.n), [parse(&r.coeffs[0])?, parse(&r.coeffs[1])?, parse(&r.coeffs[2])?]);
    }
    Ok(out)
}

/// Sum of all assembled Green terms on sector l, unfolded into base atoms.
pub fn sector_sum(l: u32) -> Result<AtomSum, GreenError> {
    let terms = assemble_all(l)?;
    Ok(AtomSum::from_terms(terms.iter().filter(|t| t.l == l)))
}

/// Derive the multipliers on sector l from the leading atoms of the assembled
/// Green symbol, and return them with the residual left after subtracting
/// 2t^2 sum_n multiplier * Q_{l,n}.
pub fn derive_sector(l: u32) -> Result<(Vec<(u32, [Coefficient; 3])>, AtomSum), GreenError> {
    let g = sector_sum(l)?;
    let t = c_gen(Gen::T);
    let two_t2 = &t * &t * c_int(2);
    let inv = two_t2.inverse().expect("monomial");
    let mut mults = Vec::new();
    let mut model = AtomSum::new();
    for (ll, n) in Q_INDEX {
        if ll != l {
            continue;
        }
        let (p, beta) = leading(l, n);
        let m: [Coefficient; 3] = std::array::from_fn(|r| &g.scalar(&(r as u32, Base::E, p, beta)) * &inv);
        let q = q_descriptor(l, n)?;
        for (r, c) in m.iter().enumerate() {
            model.add_sum(&expand(&q.raw, l, r as u32, &(c * &two_t2)));
        }
        mults.push((n, m));
    }
    Ok((mults, g.sub(&model)))
}

fn subs_edge(c: &Coefficient, z1: &Coefficient, z2: &Coefficient) -> Coefficient {
    c.subs(Gen::Z1, z1).subs(Gen::Z2, z2)
}

/// Derived versus printed multipliers for one edge.
pub fn theorem1_table(edge: EdgeKind) -> Result<Theorem1Table, GreenError> {
    let printed = printed_multipliers()?;
    let fx = load()?;
    let consts = fx.edges.get(edge.name()).ok_or_else(|| GreenError::Fixture(format!("no edge {}", edge.name())))?;
    let printed_z1 = parse(consts.get("Z1").map(String::as_str).unwrap_or("0"))?;
    let printed_z2 = parse(consts.get("Z2").map(String::as_str).unwrap_or("0"))?;
    let (z1, z2) = edge_constants(&edge.edge()).map_err(|e| GreenError::Fixture(e.to_string()))?;
    let mut symbolic = Vec::new();
    let mut rows = Vec::new();
    let mut residuals = BTreeMap::new();
    for l in 0..=5 {
        let (mults, res) = derive_sector(l)?;
        residuals.insert(l, res);
        for (n, derived) in mults {
            let p = printed.get(&(l, n)).cloned().unwrap_or_default();
            let diff = std::array::from_fn(|k| &derived[k] - &p[k]);
            let sub = |a: &[Coefficient; 3]| -> [Coefficient; 3] { std::array::from_fn(|k| subs_edge(&a[k], &z1, &z2)) };
            let (ds, ps) = (sub(&derived), sub(&p));
            let dd = std::array::from_fn(|k| &ds[k] - &ps[k]);
            symbolic.push(MultiplierRow { l, n, derived, printed: p, diff });
            rows.push(MultiplierRow { l, n, derived: ds, printed: ps, diff: dd });
        }
    }
    Ok(Theorem1Table { edge, z1, z2, printed_z1, printed_z2, symbolic, rows, residuals })
}
