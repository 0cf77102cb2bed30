use super::{inv_hp, HomSym, ParametrixError};
use crate::exact_algebra::{binom, c_gen, c_int, qi, Gen, RatFuncW};
use crate::symbol_model::{build_a_symbolic, dy_alpha, eta_degree, Eta, OpSymbol};
use std::collections::BTreeMap;

/// Symbol with explicit r-powers: (total r-power, eta monomial) -> w part.
pub type MSym = BTreeMap<(u32, Eta), RatFuncW>;

/// (level k, n, j) -> d^(k)_{n,j}.
pub type DTable = BTreeMap<(u32, u32, u32), HomSym>;

fn add_into(m: &mut MSym, key: (u32, Eta), v: RatFuncW) {
    if v.is_zero() {
        return;
    }
    let nv = match m.remove(&key) {
        Some(x) => &x + &v,
        None => v,
    };
    if !nv.is_zero() {
        m.insert(key, nv);
    }
}

/// r^k T^{-2} a_k on sector l with symbolic Z1, Z2.
fn shifted_a(k: u32, l: u32) -> OpSymbol {
    build_a_symbolic(k).sector_restrict(l).shift_w(-2).mul_r(k)
}

/// r^level A_level with A_level = -2t^2 sum_{n,j} r^n d^(level)_{n,j}.
pub fn amplitude(table: &DTable, level: u32) -> MSym {
    let m2t2 = c_gen(Gen::T).pow(2) * c_int(-2);
    let mut out = MSym::new();
    for ((k, n, j), h) in table {
        if *k != level {
            continue;
        }
        for (e, r) in h {
            add_into(&mut out, (level + n + j, *e), r.scale(&m2t2));
        }
    }
    out
}

/// Sub-multi-indices of `e` without a Phi component (D_phi vanishes).
fn alphas(e: &Eta) -> Vec<Eta> {
    let mut v = Vec::new();
    for a in 0..=e[0] {
        for b in 0..=e[1] {
            v.push([a, b, 0]);
        }
    }
    v
}

/// sum_{alpha, m} (1/alpha!)(1/m!) [d_w^m d_eta^alpha X] (-r d_r)^m D_y^alpha Y,
/// restricted to total r-power `target` when given.
fn leibniz_mellin(out: &mut MSym, x: &OpSymbol, y: &MSym, target: Option<u32>) {
    for ((rx, _, ex), px) in x.terms() {
        for ((ry, ey), ry_val) in y {
            let rt = rx + ry;
            if target.is_some_and(|t| t != rt) {
                continue;
            }
            // sum_m (1/m!) p^(m)(w) (-ry)^m = p(w - ry)
            let p = px.shift_int(-(*ry as i64));
            for a in alphas(ex) {
                let mut c = qi(1);
                for k in 0..3 {
                    c *= binom(&qi(ex[k] as i64), a[k] as u32);
                }
                let dy = if a == [0, 0, 0] { ry_val.clone() } else { ry_val.map_coeffs(|cc| dy_alpha(cc, &a)) };
                if dy.is_zero() {
                    continue;
                }
                let e = [ex[0] - a[0] + ey[0], ex[1] - a[1] + ey[1], ex[2] - a[2] + ey[2]];
                let v = dy.mul_poly(&p.scale_q(&c));
                add_into(out, (rt, e), v);
            }
        }
    }
}

/// E_K = sum_{i+j=K} (r^i T^{-2} a_i) # (r^j A_j).
pub fn equation(table: &DTable, kk: u32, l: u32, target: Option<u32>) -> MSym {
    let mut out = MSym::new();
    for i in 0..=kk {
        let x = shifted_a(i, l);
        let y = amplitude(table, kk - i);
        leibniz_mellin(&mut out, &x, &y, target);
    }
    out
}

/// Components (K, N, max eta-degree) of the defining equations that are
/// complete for the implemented table, N being r-power minus eta-degree.
pub fn checked_components(order: u32) -> Vec<(u32, u32, u32)> {
    [(0, 0, 4), (0, 1, 5), (0, 2, 3), (1, 1, 1), (1, 2, 0), (2, 2, 0)]
        .into_iter()
        .filter(|(_, n, _)| *n <= order)
        .collect()
}

/// Nonzero parts of E_0 - 1, E_1, E_2 on the checked components, keyed by
/// (K, N, eta monomial).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Residual {
    pub entries: BTreeMap<(u32, u32, Eta), RatFuncW>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn max_eta_degree(&self) -> Option<u32> {
        self.entries.keys().map(|k| eta_degree(&k.2)).max()
    }
    pub fn min_eta_degree(&self) -> Option<u32> {
        self.entries.keys().map(|k| eta_degree(&k.2)).min()
    }
}

pub fn verify_with_table(table: &DTable, order: u32, l: u32) -> Residual {
    let comps = checked_components(order);
    let mut res = Residual::default();
    for kk in 0..=order.min(2) {
        let mut e = equation(table, kk, l, None);
        if kk == 0 {
            add_into(&mut e, (0, [0; 3]), -RatFuncW::one());
        }
        for ((rp, eta), v) in e {
            let d = eta_degree(&eta);
            if rp < d {
                continue;
            }
            let n = rp - d;
            if comps.iter().any(|(k, nn, emax)| *k == kk && *nn == n && d <= *emax) {
                res.entries.insert((kk, n, eta), v);
            }
        }
    }
    res
}

/// Substitute the implemented symbols into the defining equations through
/// flatness order `order` (at most 2).
pub fn verify_defining_equations(order: u32, l: u32) -> Result<Residual, ParametrixError> {
    Ok(verify_with_table(&super::default_table(l)?, order, l))
}

/// Solve the defining equations for the listed unknowns in order: the
/// coefficient of d^(k)_{n,j} in its own component is h0 - p(2w-5-p) with
/// p = k + n + j.
pub fn solve_table(spec: &[(u32, u32, u32)], l: u32) -> Result<DTable, ParametrixError> {
    let mut order = spec.to_vec();
    order.sort();
    let mut table = DTable::new();
    for (k, n, j) in order {
        let rp = k + n + j;
        let e = equation(&table, k, l, Some(rp));
        let inv = inv_hp(rp as i64, l);
        let mut h = HomSym::new();
        for ((r, eta), v) in e {
            if r != rp || eta_degree(&eta) != j {
                continue;
            }
            let mut comp = v;
            if k == 0 && rp == 0 {
                comp = &comp - &RatFuncW::one();
            }
            let d = -&(&comp * &inv);
            if !d.is_zero() {
                h.insert(eta, d);
            }
        }
        // the unit on the right of E_0 when the component was otherwise empty
        if k == 0 && rp == 0 && h.is_empty() {
            h.insert([0; 3], inv.clone());
        }
        table.insert((k, n, j), h);
    }
    Ok(table)
}
