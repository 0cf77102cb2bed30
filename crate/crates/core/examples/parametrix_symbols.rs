//! Sector-restricted parametrix symbols d^(k)_(n,j), their conormal
//! counterparts, and the defining equations they satisfy.
//! Usage: cargo run --example parametrix_symbols [l]

use edgegreen::parametrix_engine::{compute_d, conormal, in_range, verify_defining_equations};

fn main() {
    let l: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(0);
    for k in 0..=2 {
        for n in 0..=2 {
            for j in 0..=2 {
                if !in_range(k, n, j) {
                    continue;
                }
                let d = compute_d(k, n, j, l).expect("symbol");
                println!("{} on l = {l}: {}", d.label(), d.render());
            }
        }
    }
    let c = conormal(0, 0, l).expect("conormal");
    println!("conormal symbol of order 0: {c:?}");
    for order in 0..=2 {
        let r = verify_defining_equations(order, l).expect("table");
        println!("defining equations through order {order}: residual zero = {}", r.is_zero());
    }
}
