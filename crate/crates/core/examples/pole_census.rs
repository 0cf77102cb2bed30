//! Poles of the leading parametrix symbols per sector and their position
//! relative to the contour Re w = 7/2 - gamma.
//! Usage: cargo run --example pole_census [gamma]

use edgegreen::cli::parse_gamma;
use edgegreen::parametrix_engine::pole_census;

fn main() {
    let gamma = parse_gamma(&std::env::args().nth(1).unwrap_or_else(|| "1".into())).expect("gamma in (1/2, 3/2)");
    for r in pole_census(&[0, 1, 2], 3, &gamma).expect("census") {
        let poles: Vec<String> = r.poles.iter().map(|(p, m)| format!("{p}{}", if *m > 1 { format!("^{m}") } else { String::new() })).collect();
        println!("{} l = {}: poles {}; multiple {:?}", r.symbol, r.l, poles.join(" "), r.multiple_poles());
    }
}
