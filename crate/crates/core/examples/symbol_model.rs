//! Mellin symbols of the edge Hamiltonian: the leading symbol h0, the
//! first- and second-order symbols and the C polynomials in the covariables.

use edgegreen::series_engine::Edge;
use edgegreen::symbol_model::{build_a, build_c, edge_constants, h0, CKind};

fn main() {
    println!("h0 = {}", h0().render());
    for k in [CKind::C0, CKind::C1, CKind::C1Tilde] {
        println!("{k:?} = {}", build_c(k).render());
    }
    for edge in [Edge::En, Edge::Ee] {
        let (z1, z2) = edge_constants(&edge).expect("potential");
        println!("{edge:?}: Z1 = {z1}, Z2 = {z2}");
        for level in 1..=2 {
            let a = build_a(level, &edge).expect("symbol");
            println!("  a{level} = {}", a.render());
        }
    }
    println!("h0 on sector l = 1: {}", h0().sector_restrict(1).render());
}
