use super::*;
use crate::exact_algebra::{c_frac, c_gen, c_int, Coefficient, Gen, LinRoot};
use crate::symbol_model::{build_c, CKind, CovPoly, Eta};
use std::collections::BTreeMap;

fn t() -> Coefficient {
    c_gen(Gen::T)
}
fn tz1() -> Coefficient {
    t() * c_gen(Gen::Z1)
}
fn tz2() -> Coefficient {
    t() * c_gen(Gen::Z2)
}
fn two_t2() -> Coefficient {
    t().pow(2) * c_int(2)
}

type DispMap = BTreeMap<(u32, String, i64, Eta), Coefficient>;

fn add(m: &mut DispMap, key: (u32, String, i64, Eta), c: Coefficient) {
    let v = m.remove(&key).unwrap_or_default() + c;
    if !v.is_zero() {
        m.insert(key, v);
    }
}

fn displayed(terms: &[GreenTerm]) -> DispMap {
    let mut m = DispMap::new();
    for t in terms {
        add(&mut m, (t.rpow, t.expr.display_label(), t.display_point(), t.kernel), t.scalar.clone());
    }
    m
}

/// Expected display entries, each 2t^2 * c * r^rpow * K * M(X)(p).
struct Expect {
    m: DispMap,
}

impl Expect {
    fn new() -> Self {
        Expect { m: DispMap::new() }
    }
    fn x(&mut self, rpow: u32, x: Expr, p: i64, k: &CovPoly, c: Coefficient) -> &mut Self {
        for (b, kc) in k.terms() {
            add(&mut self.m, (rpow, x.display_label(), p, *b), &(&c * kc) * &two_t2());
        }
        self
    }
    fn one(&mut self, rpow: u32, x: Expr, p: i64, c: Coefficient) -> &mut Self {
        self.x(rpow, x, p, &CovPoly::one(), c)
    }
    /// M(op(r a1))(p) = M(r^2 iC1/2t^2)(p) + M(r Z1/t)(p)
    fn ra1(&mut self, rpow: u32, p: i64, k: &CovPoly, c: Coefficient) -> &mut Self {
        self.x(rpow, Expr::IC1, p, k, c.clone()).x(rpow, Expr::Z1, p, k, c)
    }
    /// M(op(r^2 a2))(p) = M(r^2 W2)(p) + M(r^4 C2/2t^2)(p)
    fn ra2(&mut self, rpow: u32, p: i64, k: &CovPoly, c: Coefficient) -> &mut Self {
        self.x(rpow, Expr::W2, p, k, c.clone()).x(rpow, Expr::C2, p, k, c)
    }
}

fn k_c0() -> CovPoly {
    &build_c(CKind::C0) - &CovPoly::tau().scale(&(t() * c_gen(Gen::I) * c_int(4)))
}
fn k_ic1() -> CovPoly {
    build_c(CKind::C1).scale(&c_gen(Gen::I))
}
fn k_c1t() -> CovPoly {
    build_c(CKind::C1Tilde)
}
fn unit() -> CovPoly {
    CovPoly::one()
}
fn q(n: i64, d: i64) -> Coefficient {
    c_frac(n, d)
}

fn projected(id: GreenId, l: u32) -> DispMap {
    let terms = if id == GreenId::Ga { assemble_atype(2).unwrap() } else { assemble_btype(id, 2).unwrap() };
    displayed(&project_sector(&terms, l))
}

#[test]
fn residue_fixture_reproduced() {
    let checks = compare_fixture(5).unwrap();
    let bad: Vec<_> = checks.iter().filter(|c| !c.ok).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    assert!(checks.len() >= 60);
}

#[test]
fn m_rows_specialise_to_single_sector_rows() {
    let checks = m_row_consistency().unwrap();
    assert_eq!(checks.len(), 9);
    assert!(checks.iter().all(|c| c.ok));
}

#[test]
fn residue_records_recompute() {
    let recs = residue_table(5).unwrap();
    assert!(!recs.is_empty());
    for r in &recs {
        let fresh = residue_of(&r.sym, r.pole, r.l).unwrap();
        assert_eq!(fresh.get(&r.eta), Some(&r.value));
    }
}

#[test]
fn residue_examples() {
    let d00 = SymRef::new(0, 0, 0, 0);
    assert_eq!(residue_of(&d00, 2, 0).unwrap()[&[0; 3]], c_int(-1));
    assert!(residue_of(&d00, 10, 0).unwrap().is_empty());
    let g = generic_residue(&SymRef::new(1, 0, 0, 2), LinRoot::new(-1, 0), 0).unwrap();
    for l in 0..=5i64 {
        let want = &(tz1() * c_int(-2)) * &c_int(2 * (2 * l + 1) * (l + 1)).inverse().unwrap();
        assert_eq!(g.value.eval(l).unwrap(), want);
    }
}

#[test]
fn atype_examples() {
    let terms = assemble_atype(2).unwrap();
    let p0 = project_sector(&terms, 0);
    let lead = p0.iter().find(|t| t.rpow == 0).unwrap();
    assert_eq!(lead.scalar, two_t2());
    assert_eq!(lead.point, 0);
    assert_eq!(lead.cutoff(), CutoffTag::MinusOne);
    let p1 = project_sector(&terms, 1);
    let r1 = p1.iter().find(|t| t.rpow == 1 && t.point == -1).unwrap();
    assert_eq!(r1.scalar, &two_t2() * &q(1, 3));
    assert!(assemble_from(&[], GreenId::Ga).is_empty());
}

#[test]
fn btype_examples() {
    let g02 = assemble_btype(GreenId::G02, 0).unwrap();
    let t = g02.iter().find(|t| t.point == 2 && t.kernel == [0; 3]).unwrap();
    assert_eq!(t.scalar, two_t2());
    assert_eq!(t.expr, Expr::C0);
    assert_eq!(t.display_point(), 0);
    let g23 = assemble_btype(GreenId::G23, 5).unwrap();
    assert!(g23.iter().all(|t| t.rpow == 2 && t.expr == Expr::S1 && t.point == 1));
    assert_eq!(g23.len(), 3);
    let g03 = assemble_btype(GreenId::G03, 2).unwrap();
    assert!(!g03.is_empty());
    assert!(truncate_terms(&g03, 0).is_empty());
    assert!(matches!(assemble_btype(GreenId::Ga, 0), Err(GreenError::UnknownGreenId(_))));
    assert!(matches!(assemble_btype_named("g99", 0), Err(GreenError::UnknownGreenId(_))));
    assert_eq!(GreenId::parse("g_{1,3}").unwrap(), GreenId::G13);
}

#[test]
fn display_points_shift_back() {
    for id in GreenId::ALL {
        for t in assemble_from(&residue_table_for(&[id], 2).unwrap(), id) {
            assert_eq!(t.display_point() + t.expr.weight(), t.point);
        }
    }
}

#[test]
fn higher_sectors_vanish_through_second_order() {
    for l in 3..=5 {
        assert!(sector_sum(l).unwrap().is_zero(), "sector {l}");
        for id in GreenId::ALL {
            let terms = assemble_from(&residue_table_for(&[id], l).unwrap(), id);
            assert!(project_sector(&terms, l).is_empty());
        }
    }
}

#[test]
fn projection_ga() {
    let c0 = -c_int(2) + tz1().pow(2) * q(1, 3) + tz2() * q(1, 3);
    let mut e = Expect::new();
    e.one(0, Expr::A, 0, c_int(1)).one(1, Expr::A, 0, tz1()).one(2, Expr::A, 0, c0);
    e.x(2, Expr::A, 0, &k_c1t(), q(1, 6));
    assert_eq!(projected(GreenId::Ga, 0), e.m);

    let mut e = Expect::new();
    e.one(1, Expr::A, -1, q(1, 3)).one(2, Expr::A, -1, tz1() * q(1, 6));
    e.one(1, Expr::A, 0, -tz1() * q(1, 3)).one(2, Expr::A, 0, -tz1().pow(2) * q(1, 6));
    assert_eq!(projected(GreenId::Ga, 1), e.m);

    let mut e = Expect::new();
    let c = (c_int(10) + tz1().pow(2) - tz2() * c_int(2)) * q(1, 30);
    e.one(2, Expr::A, -2, q(1, 5)).one(2, Expr::A, -1, -tz1() * q(1, 10)).one(2, Expr::A, 0, c);
    e.x(2, Expr::A, 0, &k_c1t(), q(-1, 30));
    assert_eq!(projected(GreenId::Ga, 2), e.m);
}

#[test]
fn projection_g02_g03() {
    for (id, x) in [(GreenId::G02, Expr::C0), (GreenId::G03, Expr::S3)] {
        let mut e = Expect::new();
        e.one(0, x.clone(), 0, c_int(1)).one(2, x.clone(), 0, q(-1, 3)).x(2, x.clone(), 0, &k_c0(), q(1, 6));
        assert_eq!(projected(id, 0), e.m, "{id} P0");
        let mut e = Expect::new();
        e.one(1, x.clone(), -1, q(1, 3));
        assert_eq!(projected(id, 1), e.m, "{id} P1");
        let mut e = Expect::new();
        if id == GreenId::G03 {
            e.one(2, x.clone(), -2, q(1, 5));
        }
        e.one(2, x.clone(), 0, q(1, 15)).x(2, x.clone(), 0, &k_c0(), q(-1, 30));
        assert_eq!(projected(id, 2), e.m, "{id} P2");
    }
}

#[test]
fn projection_g12_g13() {
    for (id, x) in [(GreenId::G12, Expr::C0), (GreenId::G13, Expr::S2)] {
        let with_a1 = id == GreenId::G12;
        let mut e = Expect::new();
        e.one(1, x.clone(), 0, tz1()).one(2, x.clone(), 0, q(-5, 3)).x(2, x.clone(), 0, &k_ic1(), q(1, 6));
        if with_a1 {
            e.ra1(0, 0, &unit(), c_int(1)).ra1(2, 0, &unit(), q(-1, 3)).ra1(2, 0, &k_c0(), q(1, 6));
        }
        assert_eq!(projected(id, 0), e.m, "{id} P0");
        let mut e = Expect::new();
        e.one(2, x.clone(), -1, tz1() * q(1, 6)).one(1, x.clone(), 0, tz1() * q(-1, 3));
        if with_a1 {
            e.one(1, Expr::IC1, -1, q(1, 3));
        }
        assert_eq!(projected(id, 1), e.m, "{id} P1");
        let mut e = Expect::new();
        e.one(2, x.clone(), -1, tz1() * q(-1, 10)).one(2, x.clone(), 0, q(1, 3)).x(2, x.clone(), 0, &k_ic1(), q(-1, 30));
        if with_a1 {
            e.ra1(2, 0, &unit(), q(1, 15)).ra1(2, 0, &k_c0(), q(-1, 30));
        }
        assert_eq!(projected(id, 2), e.m, "{id} P2");
    }
}

#[test]
fn projection_g22() {
    let mut e = Expect::new();
    e.ra2(0, 0, &unit(), c_int(1)).ra2(2, 0, &unit(), q(-1, 3)).ra2(2, 0, &k_c0(), q(1, 6));
    e.ra1(1, 0, &unit(), tz1()).ra1(2, 0, &unit(), q(-5, 3)).ra1(2, 0, &k_ic1(), q(1, 6));
    e.one(2, Expr::C0, 0, (tz1().pow(2) + tz2()) * q(1, 3));
    assert_eq!(projected(GreenId::G22, 0), e.m);

    let mut e = Expect::new();
    e.ra2(1, -1, &unit(), q(1, 3)).ra1(1, 0, &unit(), tz1() * q(-1, 3));
    e.one(2, Expr::IC1, -1, tz1() * q(1, 6)).one(2, Expr::C0, 0, tz1().pow(2) * q(-1, 6));
    assert_eq!(projected(GreenId::G22, 1), e.m);

    let mut e = Expect::new();
    e.ra2(2, 0, &unit(), q(1, 15)).ra2(2, 0, &k_c0(), q(-1, 30));
    e.one(2, Expr::C2, -2, q(1, 5));
    e.ra1(2, 0, &unit(), q(1, 3)).ra1(2, 0, &k_ic1(), q(-1, 30));
    e.one(2, Expr::IC1, -1, tz1() * q(-1, 10));
    e.one(2, Expr::C0, 0, tz1().pow(2) * q(1, 30) - (c_int(1) + tz2()) * q(1, 15));
    assert_eq!(projected(GreenId::G22, 2), e.m);
}

#[test]
fn projection_g23() {
    let vals = [
        (tz1().pow(2) + tz2()) * q(1, 3),
        tz1().pow(2) * q(-1, 6),
        tz1().pow(2) * q(1, 30) - (c_int(1) + tz2()) * q(1, 15),
    ];
    for (l, v) in vals.into_iter().enumerate() {
        let mut e = Expect::new();
        e.one(2, Expr::S1, 0, v);
        assert_eq!(projected(GreenId::G23, l as u32), e.m);
    }
}

#[test]
fn q_descriptors_rewrite_to_h_forms() {
    for (l, n) in Q_INDEX {
        let d = q_descriptor(l, n).unwrap();
        assert!(d.identity_holds(), "Q_({l},{n})");
    }
    let q01 = q_descriptor(0, 1).unwrap();
    assert_eq!(q01.simplified.iter().map(|p| (p.expr.clone(), p.point)).collect::<Vec<_>>(), vec![(Expr::E, 0), (Expr::H(1), 0)]);
    let q11 = q_descriptor(1, 1).unwrap();
    assert!(q11.simplified.iter().any(|p| p.expr == Expr::H(2) && p.point == -1));
    assert!(q11.simplified.iter().any(|p| p.expr == Expr::H(1) && p.point == 0 && p.coef == -tz1()));
    let q22 = q_descriptor(2, 2).unwrap();
    assert!(q22.raw.iter().all(|p| p.kernel == build_c(CKind::C1Tilde)));
    assert!(q_descriptor(1, 2).is_err());
}

#[test]
fn theorem1_derived_equals_printed() {
    for edge in [EdgeKind::En, EdgeKind::Ee] {
        let tab = theorem1_table(edge).unwrap();
        assert!(tab.is_exact(), "{edge:?}");
        assert_eq!(tab.rows.len(), 5);
        let s1 = tab.rows.iter().find(|r| r.l == 1).unwrap();
        assert!(s1.derived[0].is_zero());
    }
    let en = theorem1_table(EdgeKind::En).unwrap();
    let r = en.rows.iter().find(|r| (r.l, r.n) == (0, 1)).unwrap();
    assert_eq!(r.derived[1], -(t() * c_gen(Gen::Z)));
    let ee = theorem1_table(EdgeKind::Ee).unwrap();
    assert_eq!(ee.z1, c_gen(Gen::S) * q(1, 2));
}
