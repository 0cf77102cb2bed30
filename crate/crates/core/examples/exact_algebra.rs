//! Exact scalars with sqrt 2 and i as generators, rational functions of the
//! Mellin covariable w, residues and partial fractions.

use edgegreen::exact_algebra::{c_gen, parse_coefficient, Coefficient, Gen, PolyW, RatFuncW};

fn main() {
    let s = c_gen(Gen::S);
    let i = c_gen(Gen::I);
    println!("s*s = {}, i*i = {}", &s * &s, &i * &i);
    let v = Coefficient::gen_pow(Gen::S, -1).scale(&edgegreen::exact_algebra::q(1, 6)).normalize();
    println!("1/(6 s) = {v}");

    let c = parse_coefficient("-2+1/3*t^2*Z1^2+1/3*t*Z2").expect("valid");
    println!("parsed {c}; with Z1 = -Z: {}", c.subs(Gen::Z1, &-c_gen(Gen::Z)));

    // 1/((w-3)^2 (w-2) (w-4)), the sector-0 denominator of d^(1)_(0,0)
    let f = RatFuncW::from_roots(PolyW::one(), &[3, 3, 2, 4]);
    println!("f = {f}, poles {:?}", f.pole_set());
    for (root, k, coeff) in f.partial_fractions().expect("proper") {
        println!("  {coeff} / (w - {root})^{k}");
    }
    let g = RatFuncW::from_roots(PolyW::one(), &[4, 1]);
    println!("Res(1/((w-4)(w-1)), 1) = {}", g.residue_at(1).expect("simple"));
    println!("T^2 shifts 1/((w-3)(w-2)) to {}", RatFuncW::from_roots(PolyW::one(), &[3, 2]).shift(2));
    match f.residue_at(3) {
        Ok(r) => println!("residue {r}"),
        Err(e) => println!("residue at 3: {e}"),
    }
}
