use super::*;
use crate::exact_algebra::{c_frac, c_gen, c_int, q};
use proptest::prelude::*;


#[test]
fn printed_tables_reproduced() {
    let printed = printed_taylor().unwrap();
    assert_eq!(printed.len(), 5);
    for (name, want) in &printed {
        let s = TaylorTarget::parse(name).unwrap().expand(want.len() - 1).unwrap();
        for (k, w) in want.iter().enumerate() {
            assert_eq!(&s.coeff(k as i32), w, "{name} r^{k}");
        }
    }
}

#[test]
fn named_coefficients() {
    assert_eq!(expand_h(4).unwrap().coeff(4), c_frac(32, 45));
    let vee = expand_potential(&Edge::Ee, 4).unwrap();
    assert_eq!(vee.coeff(4), c_gen(Gen::S) * c_frac(7, 720));
    assert_eq!(vee.coeff(0).render(), "1/2*s");
    assert_eq!(vee.coeff(1).render(), "-2*s*Z");
    assert_eq!(expand_h(0).unwrap().coeffs_from_zero(), vec![c_int(-1)]);
}

#[test]
fn no_ee_edge_drops_repulsion() {
    let full = expand_potential(&Edge::En, 5).unwrap();
    let bare = expand_potential(&Edge::EnNoEe, 5).unwrap();
    assert_eq!(full.coeff(1).subs(Gen::A, &Coefficient::zero()), bare.coeff(1) + c_int(1));
    assert_eq!(bare.coeff(0), -c_gen(Gen::Z));
    assert!(bare.coeff(1).contains(Gen::Z) && !bare.coeff(3).contains(Gen::A));
}

#[test]
fn order_cap() {
    assert!(matches!(expand_h(DEFAULT_MAX_ORDER + 1), Err(SeriesError::Order { .. })));
    assert!(matches!(expand_potential(&Edge::En, POTENTIAL_MAX_ORDER + 1), Err(SeriesError::Order { .. })));
}

fn closed_form(name: &str, r: f64, a: f64, z: f64) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    match name {
        "h" => 1.0 + 2.0 * r * r.tan() - 2.0 * r / r.tan(),
        "sin2" => (r / r.sin()).powi(2),
        "cos2" => 1.0 / r.cos().powi(2),
        "ven" => -z * (r / r.sin() + r / r.cos()) + r / (1.0 - a * (2.0 * r).sin()).sqrt(),
        "vee" => {
            let w = (2.0 * r).sin() * a;
            -s2 * z * r * (1.0 / (1.0 + w).sqrt() + 1.0 / (1.0 - w).sqrt()) + r / (s2 * r.sin())
        }
        _ => unreachable!(),
    }
}

#[test]
fn series_agree_with_closed_forms() {
    for name in ["h", "sin2", "cos2", "ven", "vee"] {
        let s = TaylorTarget::parse(name).unwrap().expand(POTENTIAL_MAX_ORDER).unwrap();
        for (a, z) in [(0.3, 1.0), (-0.7, 2.0), (1.0, 3.0)] {
            for r in [0.01, 0.02, 0.04] {
                let val = |g: Gen| match g {
                    Gen::A => a,
                    Gen::Z => z,
                    Gen::S => std::f64::consts::SQRT_2,
                    _ => f64::NAN,
                };
                let (re, im) = s.eval(r, &val);
                let exact = closed_form(name, r, a, z);
                assert!(im == 0.0 && (re - exact).abs() < 100.0 * r.powi(7), "{name} r={r}: {re} vs {exact}");
            }
        }
    }
}

#[test]
fn molecule_symbolic_leading_terms() {
    let v = expand_potential(&Edge::Molecule(MoleculeParams::symbolic()), 1).unwrap();
    assert_eq!(v.coeff(0), -c_gen(Gen::Za));
    let nuc = expand_potential(&Edge::Molecule(MoleculeParams { za: c_int(1), zb: c_int(1) }), 1).unwrap();
    assert_eq!(nuc.coeff(1), c_int(-1));
}

#[test]
fn elementary_series() {
    let s = sin_series(5);
    assert_eq!(s.coeff(3), c_frac(-1, 6));
    assert_eq!(cos_series(4).coeff(4), c_frac(1, 24));
    assert_eq!(sinc_series(4).coeff(2), c_frac(-1, 6));
    assert_eq!(rescale(&s, &q(2, 1)).coeff(3), c_frac(-8, 6));
    let one = s.mul(&s).add(&cos_series(5).mul(&cos_series(5)));
    assert_eq!(one, RSeries::one(5));
    assert!(vanishes_through(&one.sub(&RSeries::one(5)), 5));
}

fn series_strategy(order: usize, unit: bool) -> impl Strategy<Value = RSeries> {
    prop::collection::vec((-6i64..=6, 1i64..=4), order + 1).prop_map(move |v| {
        let mut c: Vec<Coefficient> = v.iter().map(|(n, d)| c_frac(*n, *d)).collect();
        if unit {
            c[0] = c_int(1);
        }
        RSeries::new(c, order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative_and_commutative(a in series_strategy(5, false), b in series_strategy(5, false), c in series_strategy(5, false)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn reciprocal_inverts(a in series_strategy(5, true)) {
        prop_assert_eq!(a.mul(&a.reciprocal().unwrap()), RSeries::one(5));
    }

    #[test]
    fn inverse_square_root(a in series_strategy(5, true)) {
        let s = a.inv_sqrt().unwrap();
        prop_assert_eq!(s.mul(&s).mul(&a), RSeries::one(5));
        let r = a.sqrt().unwrap();
        prop_assert_eq!(r.mul(&r), a);
    }

    #[test]
    fn derivative_obeys_leibniz(a in series_strategy(5, false), b in series_strategy(5, false)) {
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        prop_assert_eq!(lhs.truncate(4), rhs.truncate(4));
    }

    #[test]
    fn exponential_is_additive(a in series_strategy(5, false), b in series_strategy(5, false)) {
        let a = a.sub(&RSeries::constant(a.coeff(0), 5));
        let b = b.sub(&RSeries::constant(b.coeff(0), 5));
        prop_assert_eq!(a.add(&b).exp().unwrap(), a.exp().unwrap().mul(&b.exp().unwrap()));
    }
}
