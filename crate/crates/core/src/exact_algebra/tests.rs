use super::*;
use proptest::prelude::*;

fn rf(num: &[i64], roots: &[i64]) -> RatFuncW {
    RatFuncW::from_roots(PolyW::from_ints(num), roots)
}

#[test]
fn generator_relations() {
    let s = c_gen(Gen::S);
    let i = c_gen(Gen::I);
    assert_eq!(&s * &s, c_int(2));
    assert_eq!(&i * &i, c_int(-1));
    let v = Coefficient::gen_pow(Gen::S, -1).scale(&q(1, 6)).normalize();
    assert_eq!(v, s.scale(&q(1, 12)));
    assert!((v.eval_real(&|_| std::f64::consts::SQRT_2) - 0.117851130).abs() < 1e-8);
}

#[test]
fn rationals_are_reduced() {
    let r = q(6, -4);
    assert_eq!((r.numer().clone(), r.denom().clone()), (num::BigInt::from(-3), num::BigInt::from(2)));
    assert_eq!(factorial(5), qi(120));
    assert_eq!(binom(&q(-1, 2), 2), q(3, 8));
}

#[test]
fn shift_examples() {
    let f = rf(&[1], &[3, 2]);
    assert_eq!(shift(&f, 0), f);
    let g = shift(&f, 2);
    assert_eq!(g, rf(&[1], &[1, 0]));
    assert_eq!(g.pole_set(), [(1, 1), (0, 1)].into());
    let h = PolyW::from_ints(&[0, -1, 1]).shift_int(-2);
    let w2 = &PolyW::w() - &PolyW::constant(c_int(2));
    assert_eq!(h, &(&w2 * &w2) - &w2);
}

#[test]
fn residue_examples() {
    assert_eq!(residue_at(&rf(&[1], &[4, 1]), 1).unwrap(), c_frac(-1, 3));
    assert_eq!(residue_at(&rf(&[1], &[0]), 0).unwrap(), c_int(1));
    for l in 0..=5i64 {
        assert_eq!(residue_at(&rf(&[1], &[-l, l + 1]), -l).unwrap(), c_frac(-1, 2 * l + 1));
    }
    let generic = LRatFunc::new(PolyW::one(), &[LinRoot::new(-1, 0), LinRoot::new(1, 1)]);
    let v = generic.residue_generic(LinRoot::new(-1, 0)).unwrap();
    for l in 0..=5i64 {
        assert_eq!(v.eval(l).unwrap(), c_frac(-1, 2 * l + 1));
    }
    assert!(matches!(
        residue_at(&rf(&[1], &[3, 3, 2]), 3),
        Err(AlgebraError::MultiplePole { pole: 3, multiplicity: 2 })
    ));
}

#[test]
fn pole_set_examples() {
    assert_eq!(pole_set(&rf(&[1], &[3, 2])), [(3, 1), (2, 1)].into());
    assert_eq!(pole_set(&rf(&[-3, 1], &[3, 3, 1])), [(3, 1), (1, 1)].into());
    assert_eq!(pole_set(&rf(&[1], &[3, 2, 4, 3])), [(3, 2), (2, 1), (4, 1)].into());
}

#[test]
fn partial_fraction_examples() {
    let mut pf = partial_fractions(&rf(&[1], &[1, 0])).unwrap();
    pf.sort_by_key(|t| std::cmp::Reverse(t.0));
    assert_eq!(pf, vec![(1, 1, c_int(1)), (0, 1, c_int(-1))]);
    let f = rf(&[1], &[3, 2, 4, 3]);
    let pf = partial_fractions(&f).unwrap();
    // the 1/(w-3) coefficient is g'(3) = 0 for g = 1/((w-2)(w-4))
    assert_eq!(pf.len(), 3);
    assert!(pf.contains(&(3, 2, c_int(-1))));
    assert!(pf.contains(&(2, 1, c_frac(-1, 2))) && pf.contains(&(4, 1, c_frac(1, 2))));
    assert!(f.laurent_coeff(3, 1).is_zero());
    assert_eq!(RatFuncW::from_partial_fractions(&pf), f);
    let g = rf(&[1], &[4, 1]);
    assert!((residue_at(&g, 4).unwrap() + residue_at(&g, 1).unwrap()).is_zero());
    assert!(matches!(partial_fractions(&rf(&[0, 0, 1], &[1, 2])), Err(AlgebraError::Degree { .. })));
}

#[test]
fn integer_root_splitting() {
    let p = &(&PolyW::from_ints(&[-3, 1]) * &PolyW::from_ints(&[2, 1])) * &PolyW::constant(c_int(2));
    let (lead, mut roots) = integer_roots(&p).unwrap();
    roots.sort();
    assert_eq!((lead, roots), (qi(2), vec![-2, 3]));
    assert!(integer_roots(&PolyW::from_ints(&[1, 0, 1])).is_err());
}

#[test]
fn parse_render_examples() {
    for s in ["-1/3", "2*t*Z1", "1/12*s", "-2+1/3*t^2*Z1^2+1/3*t*Z2", "0", "t^-2*Z"] {
        let c = parse_coefficient(s).unwrap();
        assert_eq!(parse_coefficient(&c.render()).unwrap(), c, "{s}");
    }
    assert_eq!(parse_coefficient("(1-Z)*(1+Z)").unwrap(), c_int(1) - c_gen(Gen::Z).pow(2));
    assert!(parse_coefficient("2*+").is_err());
    assert!(parse_coefficient("foo").is_err());
}

const GENS: [Gen; 6] = [Gen::T, Gen::Z, Gen::S, Gen::I, Gen::E, Gen::A];

fn coeff_strategy() -> impl Strategy<Value = Coefficient> {
    prop::collection::vec((-5i64..=5, 1i64..=3, prop::collection::vec(-2i8..=3, 6)), 0..4).prop_map(|terms| {
        let mut c = Coefficient::zero();
        for (n, d, e) in terms {
            let mut m = Coefficient::frac(n, d);
            for (g, k) in GENS.iter().zip(e) {
                m = &m * &Coefficient::gen_pow(*g, k);
            }
            c += &m;
        }
        c
    })
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFuncW> {
    (prop::collection::vec(-4i64..=4, 1..3), prop::collection::vec(-4i64..=6, 2..5))
        .prop_map(|(num, roots)| rf(&num, &roots))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in coeff_strategy(), b in coeff_strategy(), c in coeff_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(a.normalize().normalize(), a.normalize());
    }

    #[test]
    fn render_parse_round_trip(a in coeff_strategy()) {
        prop_assert_eq!(parse_coefficient(&a.render()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in coeff_strategy(), b in coeff_strategy()) {
        let val = |g: Gen| match g { Gen::T => 0.7, Gen::Z => 1.3, Gen::E => -0.4, Gen::A => 0.2, _ => f64::NAN };
        let (ar, ai) = a.eval(&val);
        let (br, bi) = b.eval(&val);
        let (pr, pi) = (&a * &b).eval(&val);
        let scale = 1.0 + (ar.abs() + ai.abs()) * (br.abs() + bi.abs());
        prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-9 * scale);
        prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-9 * scale);
    }

    #[test]
    fn shift_round_trip(f in ratfunc_strategy(), m in -5i64..=5) {
        prop_assert_eq!(shift(&shift(&f, m), -m), f.clone());
        for (c, k) in f.pole_set() {
            if k == 1 {
                prop_assert_eq!(residue_at(&shift(&f, m), c - m).unwrap(), residue_at(&f, c).unwrap());
            }
        }
    }

    #[test]
    fn residues_sum_to_zero(f in ratfunc_strategy()) {
        prop_assume!(f.numerator().degree() <= f.den_degree() as i32 - 2);
        let total: Coefficient = f.pole_set().keys().map(|c| f.laurent_residue(*c)).sum();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn partial_fractions_recombine(f in ratfunc_strategy()) {
        prop_assume!(f.numerator().degree() < f.den_degree() as i32);
        prop_assert_eq!(RatFuncW::from_partial_fractions(&f.partial_fractions().unwrap()), f);
    }

    #[test]
    fn residue_matches_numeric_contour(num in prop::collection::vec(-4i64..=4, 1..3), roots in prop::collection::btree_set(-4i64..=6, 2..5)) {
        let roots: Vec<i64> = roots.into_iter().collect();
        let f = rf(&num, &roots);
        let eval = |w: (f64, f64)| -> (f64, f64) {
            let mut n = (0.0, 0.0);
            let mut p = (1.0, 0.0);
            for k in 0..=f.numerator().degree().max(0) as usize {
                let c = f.numerator().coeff(k).eval_real(&|_| f64::NAN);
                n = (n.0 + c * p.0, n.1 + c * p.1);
                p = (p.0 * w.0 - p.1 * w.1, p.0 * w.1 + p.1 * w.0);
            }
            let mut d = (1.0, 0.0);
            for (r, m) in f.denominator() {
                for _ in 0..*m {
                    let x = (w.0 - *r as f64, w.1);
                    d = (d.0 * x.0 - d.1 * x.1, d.0 * x.1 + d.1 * x.0);
                }
            }
            let den = d.0 * d.0 + d.1 * d.1;
            ((n.0 * d.0 + n.1 * d.1) / den, (n.1 * d.0 - n.0 * d.1) / den)
        };
        for c in f.pole_set().keys() {
            let n = 256;
            let mut acc = 0.0;
            for k in 0..n {
                let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                let (ct, st) = (th.cos() * 0.4, th.sin() * 0.4);
                let v = eval((*c as f64 + ct, st));
                // (1/2 pi i) f dz with dz = i rho e^{i th} dth
                acc += (v.0 * ct - v.1 * st) / n as f64;
            }
            let exact = residue_at(&f, *c).unwrap().eval_real(&|_| f64::NAN);
            prop_assert!((acc - exact).abs() < 1e-9 * (1.0 + exact.abs()));
        }
    }
}
