use super::{cos_series, rescale, sin_series, sinc_series, RSeries, SeriesError};
use crate::exact_algebra::{c_gen, c_int, q, Coefficient, Gen};

/// Default cap on truncation orders; overridable through EDGEGREEN_MAX_ORDER.
pub const DEFAULT_MAX_ORDER: usize = 8;

/// Highest supported truncation order for the coalescence potentials.
pub const POTENTIAL_MAX_ORDER: usize = 6;

pub fn max_order() -> usize {
    std::env::var("EDGEGREEN_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

fn check_order(order: usize, max: usize) -> Result<(), SeriesError> {
    if order > max {
        Err(SeriesError::Order { requested: order, max })
    } else {
        Ok(())
    }
}

/// Two-center data: nuclear charges and the formal ratio R/t is kept as the
/// generator `rho`, with cos(theta_1), cos(theta_2) as `c1`, `c2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoleculeParams {
    pub za: Coefficient,
    pub zb: Coefficient,
}

impl MoleculeParams {
    pub fn symbolic() -> MoleculeParams {
        MoleculeParams { za: c_gen(Gen::Za), zb: c_gen(Gen::Zb) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Edge {
    /// electron-nucleus edge, with the electron-electron term
    En,
    /// electron-electron edge
    Ee,
    /// electron-nucleus edge without electron-electron interaction
    EnNoEe,
    Molecule(MoleculeParams),
}

/// h = 1 + 2 r tan r - 2 r cot r, from the tan and cot series.
pub fn expand_h(order: usize) -> Result<RSeries, SeriesError> {
    check_order(order, max_order())?;
    let n = order + 2;
    let sin = sin_series(n);
    let cos = cos_series(n);
    let r = RSeries::r(n);
    let tan = sin.div(&cos)?;
    // r cot r = cos r / (sin r / r)
    let rcot = cos.div(&sinc_series(n))?;
    let h = RSeries::one(n).add(&r.mul(&tan).scale(&c_int(2))).sub(&rcot.scale(&c_int(2)));
    Ok(h.truncate(order as i32))
}

/// r^2 / sin^2 r
pub fn expand_r2_over_sin2(order: usize) -> Result<RSeries, SeriesError> {
    check_order(order, max_order())?;
    let s = sinc_series(order);
    s.mul(&s).reciprocal()
}

/// 1 / cos^2 r
pub fn expand_sec2(order: usize) -> Result<RSeries, SeriesError> {
    check_order(order, max_order())?;
    let c = cos_series(order);
    c.mul(&c).reciprocal()
}

/// r / sin r
fn r_over_sin(n: usize) -> Result<RSeries, SeriesError> {
    sinc_series(n).reciprocal()
}

/// r / cos r
fn r_over_cos(n: usize) -> Result<RSeries, SeriesError> {
    Ok(RSeries::r(n).mul(&cos_series(n).reciprocal()?))
}

/// sin(2r)
fn sin2(n: usize) -> RSeries {
    rescale(&sin_series(n), &q(2, 1))
}

/// Coulomb potential series in r for the given edge.
pub fn expand_potential(edge: &Edge, order: usize) -> Result<RSeries, SeriesError> {
    let max = match edge {
        Edge::Molecule(_) => max_order(),
        _ => POTENTIAL_MAX_ORDER.min(max_order()),
    };
    check_order(order, max)?;
    let n = order;
    let z = c_gen(Gen::Z);
    let a = c_gen(Gen::A);
    let nuclear = |zz: &Coefficient| -> Result<RSeries, SeriesError> {
        Ok(r_over_sin(n)?.add(&r_over_cos(n)?).scale(&-zz))
    };
    match edge {
        Edge::EnNoEe => nuclear(&z),
        Edge::En => {
            let arg = RSeries::one(n).sub(&sin2(n).scale(&a));
            Ok(nuclear(&z)?.add(&RSeries::r(n).mul(&arg.inv_sqrt()?)))
        }
        Edge::Ee => {
            let s2a = sin2(n).scale(&a);
            let plus = RSeries::one(n).add(&s2a).inv_sqrt()?;
            let minus = RSeries::one(n).sub(&s2a).inv_sqrt()?;
            let sq2 = c_gen(Gen::S);
            let attr = RSeries::r(n).mul(&plus.add(&minus)).scale(&-(&sq2 * &z));
            // 1/(sqrt 2 j0(r)) = (s/2) r / sin r
            let rep = r_over_sin(n)?.scale(&(&sq2 * &Coefficient::frac(1, 2)));
            Ok(attr.add(&rep))
        }
        Edge::Molecule(p) => molecule(p, n),
    }
}

/// Two-center potential with R/t = rho formal. The constant parts of the
/// square-root arguments are written through q2^-2 = 1 - 2 c2 rho + rho^2.
fn molecule(p: &MoleculeParams, n: usize) -> Result<RSeries, SeriesError> {
    let za = &p.za;
    let zb = &p.zb;
    let rho = c_gen(Gen::Rho);
    let c1 = c_gen(Gen::C1);
    let c2 = c_gen(Gen::C2);
    let a = c_gen(Gen::A);
    let q2m2 = Coefficient::gen_pow(Gen::Q2, -2);
    let sin = sin_series(n);
    let cos = cos_series(n);
    let cosm1 = cos.sub(&RSeries::one(n));
    let r = RSeries::r(n);
    let rho_inv = Coefficient::gen_pow(Gen::Rho, -1);

    let t1 = r_over_sin(n)?.scale(&-za);
    let t2 = r_over_cos(n)?.scale(&-zb);
    let t3 = r.scale(&(&(za * zb) * &rho_inv));
    // sin^2 r + 2 sin r c1 rho + rho^2
    let arg4 = sin.mul(&sin).add(&sin.scale(&(&c_int(2) * &(&c1 * &rho)))).add(&RSeries::constant(rho.pow(2), n));
    let t4 = r.mul(&arg4.inv_sqrt()?).scale(&-zb);
    // cos^2 r - 1 - 2 (cos r - 1) c2 rho + q2^-2
    let arg5 = cos
        .mul(&cos)
        .sub(&RSeries::one(n))
        .sub(&cosm1.scale(&(&c_int(2) * &(&c2 * &rho))))
        .add(&RSeries::constant(q2m2.clone(), n));
    let t5 = r.mul(&arg5.inv_sqrt()?).scale(&-za);
    // -sin(2r) a + 2 (sin r c1 - (cos r - 1) c2) rho + q2^-2
    let arg6 = sin2(n)
        .scale(&-a)
        .add(&sin.scale(&(&c1 * &rho)).sub(&cosm1.scale(&(&c2 * &rho))).scale(&c_int(2)))
        .add(&RSeries::constant(q2m2, n));
    let t6 = r.mul(&arg6.inv_sqrt()?);
    Ok(t1.add(&t2).add(&t3).add(&t4).add(&t5).add(&t6))
}
