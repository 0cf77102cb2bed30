use crate::exact_algebra::{Coefficient, PolyW};
use crate::symbol_model::{CovPoly, Eta};
use std::fmt;

use super::GreenError;

/// Green operator symbols assembled through second order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GreenId {
    Ga,
    G02,
    G03,
    G12,
    G13,
    G22,
    G23,
}

impl GreenId {
    pub const ALL: [GreenId; 7] =
        [GreenId::Ga, GreenId::G02, GreenId::G03, GreenId::G12, GreenId::G13, GreenId::G22, GreenId::G23];
    pub const BTYPE: [GreenId; 6] = [GreenId::G02, GreenId::G03, GreenId::G12, GreenId::G13, GreenId::G22, GreenId::G23];

    pub fn name(self) -> &'static str {
        match self {
            GreenId::Ga => "ga",
            GreenId::G02 => "g02",
            GreenId::G03 => "g03",
            GreenId::G12 => "g12",
            GreenId::G13 => "g13",
            GreenId::G22 => "g22",
            GreenId::G23 => "g23",
        }
    }

    /// Accepts `g02`, `g_02`, `g_{0,2}`, `ga`, `g_a` and similar spellings.
    pub fn parse(s: &str) -> Result<GreenId, GreenError> {
        let k: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        GreenId::ALL
            .into_iter()
            .find(|g| g.name() == k)
            .ok_or_else(|| GreenError::UnknownGreenId(s.to_string()))
    }
}

impl fmt::Display for GreenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// T^shift d^(k)_{n,j}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymRef {
    pub k: u32,
    pub n: u32,
    pub j: u32,
    pub shift: i64,
}

impl SymRef {
    pub const fn new(k: u32, n: u32, j: u32, shift: i64) -> SymRef {
        SymRef { k, n, j, shift }
    }
    pub fn label(&self) -> String {
        let d = format!("d^({})_({},{})", self.k, self.n, self.j);
        match self.shift {
            0 => d,
            1 => format!("T {d}"),
            m => format!("T^{m} {d}"),
        }
    }
}

/// Cutoff structure in front of a Mellin functional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutoffTag {
    /// M(X sigma~ u)
    Plain,
    /// M((sigma~' sigma - 1) op(a) sigma~ u)
    MinusOne,
    /// M(sigma~' sigma op(a) sigma~ u)
    Full,
}

/// Expression X inside a functional M(X sigma~ u)(p), stored at the internal
/// point p. Each carries an r-weight: M(r^k X)(p - k) = M(X)(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// (sigma~' sigma - 1) op(a)
    A,
    /// sigma~' sigma op(a)
    E,
    /// C0 / 2t^2
    C0,
    /// i C1 / 2t^2
    IC1,
    /// C2 / 2t^2
    C2,
    /// Z1 / t
    Z1,
    /// Z2 / t
    Z2,
    /// op(-(4/3t^2) w - L/(6t^2) + Z2/t)
    W2,
    S1,
    S2,
    S3,
    /// op(p(w) / 2t^2) with constant coefficients
    P(PolyW),
    /// op(h_k^(l)) for k = 1, 2, 3
    H(u8),
}

impl Expr {
    pub fn weight(&self) -> i64 {
        match self {
            Expr::A | Expr::E | Expr::P(_) | Expr::H(_) => 0,
            Expr::Z1 | Expr::S1 => 1,
            Expr::C0 | Expr::IC1 | Expr::Z2 | Expr::W2 | Expr::S2 => 2,
            Expr::S3 => 3,
            Expr::C2 => 4,
        }
    }

    pub fn cutoff(&self) -> CutoffTag {
        match self {
            Expr::A => CutoffTag::MinusOne,
            Expr::E => CutoffTag::Full,
            _ => CutoffTag::Plain,
        }
    }

    /// Label of the expression at its internal point.
    pub fn label(&self) -> String {
        match self {
            Expr::A => "(s~'s-1) op(a)".into(),
            Expr::E => "s~'s op(a)".into(),
            Expr::C0 => "C0/2t^2".into(),
            Expr::IC1 => "i C1/2t^2".into(),
            Expr::C2 => "C2/2t^2".into(),
            Expr::Z1 => "Z1/t".into(),
            Expr::Z2 => "Z2/t".into(),
            Expr::W2 => "op(-4/3t^2 w - L/6t^2 + Z2/t)".into(),
            Expr::S1 => "op(s1)".into(),
            Expr::S2 => "op(s2)".into(),
            Expr::S3 => "op(s3)".into(),
            Expr::P(p) => format!("op(({})/2t^2)", p.render()),
            Expr::H(k) => format!("op(h{k})"),
        }
    }

    /// Label with the r-weight absorbed, as used at the display point.
    pub fn display_label(&self) -> String {
        match self.weight() {
            0 => self.label(),
            1 => format!("r {}", self.label()),
            k => format!("r^{k} {}", self.label()),
        }
    }
}

/// One entry of a b-type or a-type template: r^rpow Res(T^m d, pole) X(pole).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateTerm {
    pub rpow: u32,
    pub sym: SymRef,
    pub pole: i64,
    pub expr: Expr,
}

/// A residue-weighted Mellin functional in one sector:
/// scalar * r^rpow * sum_alpha (1/alpha!) d_eta^alpha(eta^kernel) M(D_y^alpha X sigma~ u)(point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenTerm {
    pub green: GreenId,
    pub l: u32,
    pub rpow: u32,
    pub scalar: Coefficient,
    pub expr: Expr,
    pub point: i64,
    pub kernel: Eta,
    pub source: Option<(SymRef, i64)>,
}

impl GreenTerm {
    pub fn cutoff(&self) -> CutoffTag {
        self.expr.cutoff()
    }
    pub fn display_point(&self) -> i64 {
        self.point - self.expr.weight()
    }
    pub fn render(&self) -> String {
        let r = match self.rpow {
            0 => String::new(),
            1 => "r ".into(),
            k => format!("r^{k} "),
        };
        let kern = if self.kernel == [0; 3] {
            String::new()
        } else {
            format!("K[{}] ", CovPoly::monomial(self.kernel, Coefficient::one()).render())
        };
        format!("({}) {r}{kern}M({} s~u)({})", self.scalar.render(), self.expr.display_label(), self.display_point())
    }
}

const fn d(k: u32, n: u32, j: u32, shift: i64) -> SymRef {
    SymRef::new(k, n, j, shift)
}

/// The level-0 block r^e0 Res(T^m d00, p0) plus the contracted second-order
/// block at pole p2 with d02, r d11, r^2 d20.
fn level0_block(out: &mut Vec<TemplateTerm>, shift: i64, simple: &[(u32, i64)], p2: i64, x: Expr) {
    for &(e, p) in simple {
        out.push(TemplateTerm { rpow: e, sym: d(0, 0, 0, shift), pole: p, expr: x.clone() });
    }
    for (e, s) in [(0, d(0, 0, 2, shift)), (1, d(0, 1, 1, shift)), (2, d(0, 2, 0, shift))] {
        out.push(TemplateTerm { rpow: e, sym: s, pole: p2, expr: x.clone() });
    }
}

/// The level-1 block r^e Res(T^m d1_00, p) plus r d1_01, r^2 d1_10 at pole p1.
fn level1_block(out: &mut Vec<TemplateTerm>, shift: i64, simple: &[(u32, i64)], p1: i64, x: Expr) {
    for &(e, p) in simple {
        out.push(TemplateTerm { rpow: e, sym: d(1, 0, 0, shift), pole: p, expr: x.clone() });
    }
    out.push(TemplateTerm { rpow: 1, sym: d(1, 0, 1, shift), pole: p1, expr: x.clone() });
    out.push(TemplateTerm { rpow: 2, sym: d(1, 1, 0, shift), pole: p1, expr: x });
}

/// Residue templates of each Green symbol. The r-power of a term is `rpow`
/// plus the covariable degree j of its symbol.
pub fn templates(id: GreenId) -> Vec<TemplateTerm> {
    let mut v = Vec::new();
    match id {
        GreenId::G02 => level0_block(&mut v, 0, &[(1, 1), (0, 2)], 2, Expr::C0),
        GreenId::G03 => level0_block(&mut v, -1, &[(2, 1), (1, 2), (0, 3)], 3, Expr::S3),
        GreenId::G12 => {
            level1_block(&mut v, 0, &[(2, 1), (1, 2)], 2, Expr::C0);
            level0_block(&mut v, 1, &[(0, 1)], 1, Expr::Z1);
            level0_block(&mut v, 0, &[(1, 1), (0, 2)], 2, Expr::IC1);
        }
        GreenId::G13 => level1_block(&mut v, 0, &[(2, 1), (1, 2)], 2, Expr::S2),
        GreenId::G22 => {
            level0_block(&mut v, 0, &[(1, 1), (0, 2)], 2, Expr::W2);
            level0_block(&mut v, -2, &[(2, 2), (1, 3), (0, 4)], 4, Expr::C2);
            level1_block(&mut v, 1, &[(1, 1)], 1, Expr::Z1);
            level1_block(&mut v, 0, &[(2, 1), (1, 2)], 2, Expr::IC1);
            v.push(TemplateTerm { rpow: 2, sym: d(2, 0, 0, 0), pole: 2, expr: Expr::C0 });
        }
        GreenId::G23 => v.push(TemplateTerm { rpow: 2, sym: d(2, 0, 0, 1), pole: 1, expr: Expr::S1 }),
        GreenId::Ga => {
            level0_block(&mut v, 2, &[(0, 0), (1, -1), (2, -2)], 0, Expr::A);
            level1_block(&mut v, 2, &[(1, 0), (2, -1)], 0, Expr::A);
            v.push(TemplateTerm { rpow: 2, sym: d(2, 0, 0, 2), pole: 0, expr: Expr::A });
        }
    }
    v
}

/// Residues printed in the residue tables beyond those the templates use
/// (third-order data), per Green symbol.
pub fn extra_residues(id: GreenId) -> Vec<(SymRef, i64)> {
    match id {
        GreenId::G02 => vec![(d(0, 0, 2, 0), 1)],
        GreenId::G03 => vec![(d(0, 0, 2, -1), 1), (d(0, 0, 2, -1), 2)],
        GreenId::G12 => vec![(d(0, 0, 2, 0), 1), (d(1, 0, 1, 0), 1)],
        GreenId::G13 => vec![(d(1, 0, 1, 0), 1)],
        GreenId::G22 => vec![
            (d(0, 0, 0, -2), 1),
            (d(2, 0, 0, 0), 1),
            (d(0, 0, 2, 0), 1),
            (d(0, 0, 2, -2), 1),
            (d(0, 0, 2, -2), 2),
            (d(0, 0, 2, -2), 3),
            (d(1, 0, 1, 0), 1),
        ],
        _ => vec![],
    }
}
