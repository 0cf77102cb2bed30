//! Electron-nucleus edge of a two-center system with the far nucleus at
//! formal distance rho = R/t.
//! Usage: cargo run --example molecule [Za] [Zb]

use edgegreen::exact_algebra::{c_gen, parse_coefficient, Gen};
use edgegreen::mellin_verify::{molecule_z2, single_center_limit};

fn main() {
    let arg = |k: usize| std::env::args().nth(k).map(|a| parse_coefficient(&a).expect("coefficient"));
    let za = arg(1).unwrap_or_else(|| 1.into());
    let zb = arg(2).unwrap_or_else(|| 1.into());
    let m = molecule_z2(&za, &zb).expect("potential");
    println!("Za = {za}, Zb = {zb}: Z1 = {}, Z2 + tE = {}", m.z1, m.z2_plus_te);
    let g = molecule_z2(&c_gen(Gen::Za), &c_gen(Gen::Zb)).expect("potential");
    println!("generic: Z1 = {}, Z2 + tE = {}", g.z1, g.z2_plus_te);
    let s = single_center_limit(&c_gen(Gen::Za), 2).expect("limit");
    println!("Zb = 0, R/t -> 0: {}", s.render());
}
