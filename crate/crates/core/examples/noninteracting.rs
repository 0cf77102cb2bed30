//! The asymptotic Green operator applied to closed-form eigenfunctions of
//! the noninteracting problem reproduces -u through r^2.
//! Usage: cargo run --example noninteracting [l] [Z]

use edgegreen::cli::parse_rational;
use edgegreen::mellin_verify::verify_green_action;

fn main() {
    let l: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let z = std::env::args().nth(2).map(|a| parse_rational(&a).expect("rational")).unwrap_or_else(|| edgegreen::exact_algebra::qi(2));
    let rep = verify_green_action(l, z).expect("case");
    println!("l = {}, Z = {}, E = {}, Z1 = {}, Z2 = {}", rep.l, rep.z, rep.energy, rep.z1, rep.z2);
    for (n, v) in &rep.q_values {
        println!("Q({l},{n})(u) = {v}");
    }
    for k in 0..rep.gu.len() {
        println!("r^{k}: Gu = {}, u = {}, Gu + u = {}", rep.gu[k], rep.u[k], rep.residual[k]);
    }
    println!("identity holds: {}", rep.is_zero());
}
