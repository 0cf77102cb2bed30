//! Cusp constants read off from the Green operator expansion, and the
//! one-electron limit at large hyperradius.

use edgegreen::green_assembly::EdgeKind;
use edgegreen::mellin_verify::{cusp_coefficient, hydrogen_limit};

fn main() {
    for edge in [EdgeKind::En, EdgeKind::Ee] {
        for l in 0..=1 {
            println!("{} edge, l = {l}: cusp coefficient {}", edge.name(), cusp_coefficient(edge, l).expect("cusp"));
        }
    }
    let h = hydrogen_limit().expect("limit");
    println!("one-electron limit: |x1| coefficient {}", h.x1);
    println!("  |x1|^2 scalar {}", h.x1sq_scalar);
    println!("  |x1|^2 d_t {}, |x1|^2 d_t^2 {} (printed {})", h.x1sq_dt1, h.x1sq_dt2, h.printed_x1sq_dt2);
}
