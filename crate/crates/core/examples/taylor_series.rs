//! Taylor expansions in the cone distance r: the geometric functions and the
//! Coulomb potentials at electron-nucleus and electron-electron coalescence.
//! Usage: cargo run --example taylor_series [order]

use edgegreen::series_engine::{printed_taylor, TaylorTarget};

fn main() {
    let order: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let printed = printed_taylor().expect("fixture");
    for name in TaylorTarget::NAMES {
        let t = TaylorTarget::parse(name).expect("known");
        let k = if name == "molecule" { order.min(2) } else { order };
        match t.expand(k) {
            Ok(s) => {
                println!("{name}:");
                for p in 0..=k {
                    let c = s.coeff(p as i32);
                    let check = match printed.get(name).and_then(|v| v.get(p)) {
                        Some(w) if *w == c => "  (matches table)",
                        Some(_) => "  (DIFFERS from table)",
                        None => "",
                    };
                    println!("  r^{p}: {c}{check}");
                }
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
}
