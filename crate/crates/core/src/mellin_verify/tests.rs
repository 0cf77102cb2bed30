use super::*;
use crate::exact_algebra::{c_frac, c_gen, c_int, q, qi, Coefficient, Gen, PolyW};
use crate::green_assembly::EdgeKind;
use crate::symbol_model::{build_c, CKind, CovPoly};

fn t() -> Coefficient {
    c_gen(Gen::T)
}
fn z() -> Coefficient {
    c_gen(Gen::Z)
}

#[test]
fn u0_series_through_second_order() {
    let s = u_series(0, &z(), 4).unwrap();
    assert_eq!(s.coeff(0), c_int(1));
    assert_eq!(s.coeff(1), -(&z() * &t()));
    assert_eq!(s.coeff(2), (&z() * &t() + (&z() * &t()).pow(2)) * c_frac(1, 2));
}

#[test]
fn u1_series_has_half_charge_at_second_order() {
    let s = u_series(1, &z(), 4).unwrap();
    assert!(s.coeff(0).is_zero());
    assert_eq!(s.coeff(1), t());
    assert_eq!(s.coeff(2), -(&z() * &t().pow(2)) * c_frac(1, 2));
}

#[test]
fn u2_series_leading_term() {
    let s = u_series(2, &z(), 4).unwrap();
    assert!(s.coeff(0).is_zero() && s.coeff(1).is_zero());
    assert_eq!(s.coeff(2), t().pow(2));
}

#[test]
fn series_match_closed_forms() {
    for l in 0..=2 {
        for zz in 1..=3 {
            let u = noninteracting_u(l, qi(zz)).unwrap();
            for tt in [0.5, 1.0, 2.0] {
                let (a, b) = (u.eval_f64(1e-3, tt), u.eval_series(1e-3, tt));
                assert!(((a - b) / a).abs() < 1e-8, "l={l} Z={zz} t={tt}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn case_energies() {
    assert_eq!(case_energy(0, &z()), -z().pow(2));
    assert_eq!(case_energy(1, &z()), z().pow(2) * c_frac(-5, 8));
    assert_eq!(case_energy(2, &z()), z().pow(2) * c_frac(-5, 9));
}

#[test]
fn cutoff_profile_shape() {
    let c = CutoffSpec::default();
    let v = |r: f64| c.profile(num_dual::Dual2_64::from_re(r)).re;
    assert_eq!(v(0.1), 1.0);
    assert_eq!(v(1.2), 0.0);
    let mut last = 1.0;
    for k in 0..=100 {
        let x = v(0.5 + 0.005 * k as f64);
        assert!((0.0..=1.0).contains(&x) && x <= last);
        last = x;
    }
    assert!(CutoffSpec::new(q(1, 2), q(1, 2)).is_err());
}

#[test]
fn boundary_functional_examples() {
    let u0 = u_series(0, &c_int(2), 4).unwrap();
    let h0 = PolyW::from_ints(&[0, -1, 1]);
    assert_eq!(boundary_functional(&h0, 0, &u0).unwrap(), c_int(-1));
    let u1 = u_series(1, &c_int(1), 4).unwrap();
    let h1 = PolyW::from_ints(&[-2, -1, 1]);
    assert_eq!(boundary_functional(&h1, -1, &u1).unwrap(), &t() * &c_int(-3));
    assert!(matches!(boundary_functional(&h0, -1, &u1), Err(MellinError::Cancellation(_))));
    assert!(matches!(boundary_functional(&PolyW::one(), 0, &u1), Err(MellinError::Cancellation(_))));
}

#[test]
fn quadrature_matches_boundary_functional() {
    let cutoffs = [CutoffSpec::default(), CutoffSpec::new(q(1, 4), q(3, 2)).unwrap()];
    let cases = [(0u32, [0i64, -1, 1], 0i64), (1, [-2, -1, 1], -1), (2, [-6, -1, 1], -2)];
    for (l, p, w0) in cases {
        let p = PolyW::from_ints(&p);
        for zz in [1, 2, 3] {
            let u = noninteracting_u(l, qi(zz)).unwrap();
            let exact = boundary_functional(&p, w0, &u.series).unwrap();
            for tt in [0.5, 1.0, 2.0] {
                let e = exact.eval_real(&|_| tt) * (-(zz as f64) * tt).exp();
                for c in &cutoffs {
                    let n = quadrature_functional(&p, w0, &u, tt, c, 1e-10).unwrap().value;
                    assert!(((n - e) / e).abs() < 1e-8, "l={l} Z={zz} t={tt}: {n} vs {e}");
                }
            }
        }
    }
}

#[test]
fn quadrature_of_zero_function() {
    let u = noninteracting_u(0, qi(0)).unwrap();
    // Z = 0 gives u = 1; w^2 - w kills the constant entirely.
    let r = quadrature_functional(&PolyW::from_ints(&[0, 0, 1]), 1, &u, 1.0, &CutoffSpec::default(), 1e-10).unwrap();
    let direct = quadrature_functional(&PolyW::from_ints(&[0, 1]), 1, &u, 1.0, &CutoffSpec::default(), 1e-10).unwrap();
    assert!((r.value - direct.value).abs() < 1e-9);
}

#[test]
fn covariable_contraction() {
    let c1t = contract_covariables(&build_c(CKind::C1Tilde), Target::Radial);
    assert_eq!(c1t.coeff(&[2, 0, 0]), -t().pow(2));
    assert_eq!(c1t.coeff(&[1, 0, 0]), &t() * &c_int(-9));
    assert_eq!(c1t.terms().count(), 2);
    assert!(contract_covariables(&CovPoly::zero(), Target::Full).is_zero());
    let k = &build_c(CKind::C0) - &CovPoly::tau().scale(&(&t() * &c_gen(Gen::I) * c_int(4)));
    let op = contract_covariables(&k, Target::Radial);
    assert_eq!(op.coeff(&[2, 0, 0]), -t().pow(2));
    assert_eq!(op.coeff(&[1, 0, 0]), &t() * &c_int(-4));
    let full = contract_covariables(&build_c(CKind::C1Tilde), Target::Full);
    assert!(full.terms().count() > 2);
}

#[test]
fn contraction_agrees_with_finite_differences() {
    let op = contract_covariables(&build_c(CKind::C1Tilde), Target::Radial);
    let f = TExpr::basis(Basis::Exp, Coefficient::one());
    let exact = op.apply(&f, &c_int(1));
    for tt in [0.5, 1.0, 2.0] {
        let g = |x: f64| (-x).exp();
        let h = 1e-4;
        let d1 = (g(tt + h) - g(tt - h)) / (2.0 * h);
        let d2 = (g(tt + h) - 2.0 * g(tt) + g(tt - h)) / (h * h);
        let fd = -tt * tt * d2 - 9.0 * tt * d1;
        let ex = exact.get(&Basis::Exp).eval_real(&|_| tt) * (-tt).exp();
        assert!(((fd - ex) / ex).abs() < 1e-6);
    }
}

#[test]
fn l0_intermediate_values() {
    let rep = verify_green_action(0, qi(2)).unwrap();
    let zt = &t() * &c_int(2);
    let q01 = rep.q_value(1).unwrap();
    assert_eq!(q01, &TExpr::basis(Basis::Exp, -(t().pow(2) * c_int(2)).inverse().unwrap()));
    let q02 = rep.q_value(2).unwrap();
    let want = (c_int(12) + &zt * &c_int(5) - zt.pow(2)) * -(t().pow(2) * c_int(2)).inverse().unwrap();
    assert_eq!(q02, &TExpr::basis(Basis::Exp, want));
}

#[test]
fn green_operator_reproduces_minus_u() {
    for l in 0..=2 {
        for zz in 1..=3 {
            let rep = verify_green_action(l, qi(zz)).unwrap();
            assert!(rep.is_zero(), "l={l} Z={zz}: {:?}", rep.residual.iter().map(|e| e.render()).collect::<Vec<_>>());
            assert!(rep.residual_series().unwrap().is_zero());
        }
    }
}

#[test]
fn l2_survives_only_through_boundary_term() {
    let rep = verify_green_action(2, qi(1)).unwrap();
    assert!(rep.gu[0].is_zero() && rep.gu[1].is_zero());
    assert_eq!(rep.gu[2], TExpr::basis(Basis::Exp, -t().pow(2)));
    assert!(rep.q_values.iter().all(|(_, v)| !v.is_boundary_only()));
}

#[test]
fn finite_parts_are_cutoff_dependent_but_cancel() {
    let u = noninteracting_u(2, qi(1)).unwrap();
    let rep = green_action(&u).unwrap();
    let cutoffs = [CutoffSpec::default(), CutoffSpec::new(q(1, 3), q(5, 4)).unwrap()];
    let tt = 1.0;
    let vals: Vec<Vec<f64>> = cutoffs
        .iter()
        .map(|c| rep.q_values.iter().map(|(_, v)| numeric_value(v, &u, tt, c, 1e-11).unwrap()).collect())
        .collect();
    assert!((vals[0][0] - vals[1][0]).abs() > 1e-3);
    let gu: Vec<f64> = cutoffs.iter().map(|c| numeric_value(&rep.gu[2], &u, tt, c, 1e-11).unwrap()).collect();
    let m: Vec<f64> = rep.multipliers.iter().map(|(_, m)| m[2].eval_real(&|_| tt) * 2.0 * tt * tt).collect();
    for (k, v) in vals.iter().enumerate() {
        let combo = m[0] * v[0] + m[1] * v[1];
        assert!((combo - gu[k]).abs() < 1e-8);
        assert!((combo + tt * tt * (-tt).exp()).abs() < 1e-8);
    }
}

#[test]
fn edge_constants_of_cases() {
    let u = noninteracting_u(0, qi(2)).unwrap();
    let (z1, z2) = u.edge_constants().unwrap();
    assert_eq!(z1, c_int(-2));
    assert_eq!(z2, &t() * &c_int(4) - c_int(2));
}

#[test]
fn cusp_constants() {
    assert_eq!(kato_cusp(EdgeKind::Ee).unwrap(), c_frac(1, 2));
    assert_eq!(kato_cusp(EdgeKind::En).unwrap(), -z());
    assert_eq!(cusp_coefficient(EdgeKind::Ee, 1).unwrap(), c_frac(1, 4));
    assert_eq!(cusp_coefficient(EdgeKind::En, 1).unwrap(), -z() * c_frac(1, 2));
}

#[test]
fn molecule_constants() {
    let h2 = molecule_z2(&c_int(1), &c_int(1)).unwrap();
    assert_eq!(h2.z1, c_int(-1));
    assert_eq!(h2.z2_plus_te, c_int(-1));
    let g = molecule_z2(&c_gen(Gen::Za), &c_gen(Gen::Zb)).unwrap();
    assert_eq!(g.z1, -c_gen(Gen::Za));
    let single = single_center_limit(&c_gen(Gen::Za), 2).unwrap();
    let atom = crate::series_engine::expand_potential(&crate::series_engine::Edge::En, 2).unwrap();
    for k in 0..=2 {
        assert_eq!(single.coeff(k), atom.coeff(k).subs(Gen::Z, &c_gen(Gen::Za)));
    }
}

#[test]
fn hydrogen_limit_terms() {
    let h = hydrogen_limit().unwrap();
    assert_eq!(h.x1, -z());
    assert_eq!(h.x1sq_scalar, (z().pow(2) - c_gen(Gen::E)) * c_frac(1, 3));
    assert!(h.x1sq_dt1.is_zero());
    assert_eq!(h.x1sq_dt2, c_frac(-1, 6));
    assert_eq!(h.x1.subs(Gen::Z, &Coefficient::zero()), Coefficient::zero());
}
