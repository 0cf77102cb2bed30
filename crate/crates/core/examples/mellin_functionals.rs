//! Boundary functionals M(p(-r d_r) sigma u)(w0) evaluated exactly from
//! the series data of u, checked against direct quadrature for two cutoffs.

use edgegreen::exact_algebra::{q, qi, PolyW};
use edgegreen::mellin_verify::{boundary_functional, noninteracting_u, quadrature_functional, CutoffSpec};

fn main() {
    let cutoffs = [CutoffSpec::default(), CutoffSpec::new(q(1, 4), q(3, 2)).expect("cutoff")];
    for (l, p, w0) in [(0u32, [0i64, -1, 1], 0i64), (1, [-2, -1, 1], -1), (2, [-6, -1, 1], -2)] {
        let p = PolyW::from_ints(&p);
        let u = noninteracting_u(l, qi(2)).expect("case");
        let exact = boundary_functional(&p, w0, &u.series).expect("functional");
        println!("l = {l}: M(({p}) sigma u)({w0}) = ({exact}) exp(-Z t)");
        for t in [0.5, 1.0, 2.0] {
            let e = exact.eval_real(&|_| t) * (-2.0 * t).exp();
            for c in &cutoffs {
                let qv = quadrature_functional(&p, w0, &u, t, c, 1e-10).expect("quadrature");
                println!(
                    "  t = {t}, cutoff [{}, {}]: exact {e:.12e}, quadrature {:.12e} ({} evaluations)",
                    c.r_a, c.r_b, qv.value, qv.evaluations
                );
            }
        }
    }
}
