use super::texpr::{contract_covariables, Basis, TExpr, Target};
use super::MellinError;
use crate::exact_algebra::{c_frac, c_gen, c_int, Coefficient, Gen};
use crate::green_assembly::{derive_sector, theorem1_table, EdgeKind, MultiplierRow};
use crate::series_engine::{expand_potential, Edge, MoleculeParams, RSeries};
use crate::symbol_model::{build_c, edge_constants, CKind};

fn row(rows: &[MultiplierRow], l: u32, n: u32) -> Result<[Coefficient; 3], MellinError> {
    rows.iter()
        .find(|r| r.l == l && r.n == n)
        .map(|r| r.derived.clone())
        .ok_or_else(|| MellinError::Unsupported(format!("no multiplier row ({l},{n})")))
}

/// 1/kappa where the coalescence distance is kappa t r + O(r^3):
/// |x1 - x2| = sqrt 2 t sin r and |x1| = t sin r.
fn inv_kappa(edge: EdgeKind) -> Coefficient {
    match edge {
        EdgeKind::En => Coefficient::one(),
        EdgeKind::Ee => c_gen(Gen::S) * c_frac(1, 2),
    }
}

/// Coefficient c in G P_l u ~ r^l (1 + c d) w_l, d the interparticle distance:
/// the ratio of the first two multiplier coefficients of Q_{l,1}.
pub fn cusp_coefficient(edge: EdgeKind, l: u32) -> Result<Coefficient, MellinError> {
    let (mults, _) = derive_sector(l)?;
    let m = mults
        .into_iter()
        .find(|(n, _)| *n == 1)
        .map(|(_, m)| m)
        .ok_or_else(|| MellinError::Unsupported(format!("no multiplier row ({l},1)")))?;
    if l as usize + 1 >= m.len() {
        return Err(MellinError::Unsupported(format!("sector {l} has no cusp term through r^2")));
    }
    let (z1, z2) = edge_constants(&edge.edge())?;
    let m: Vec<Coefficient> = m.iter().map(|c| c.subs(Gen::Z1, &z1).subs(Gen::Z2, &z2)).collect();
    let (lead, next) = (&m[l as usize], &m[l as usize + 1]);
    let ratio = next * &lead.inverse().ok_or_else(|| MellinError::Unsupported("vanishing leading multiplier".into()))?;
    Ok(&(&ratio * &c_gen(Gen::T).inverse().expect("monomial")) * &inv_kappa(edge))
}

/// Logarithmic derivative of the spherical average at coalescence.
pub fn kato_cusp(edge: EdgeKind) -> Result<Coefficient, MellinError> {
    cusp_coefficient(edge, 0)
}

/// Z1 and Z2 + tE of the two-center electron-nucleus edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoleculeConstants {
    pub z1: Coefficient,
    pub z2_plus_te: Coefficient,
}

pub fn molecule_z2(za: &Coefficient, zb: &Coefficient) -> Result<MoleculeConstants, MellinError> {
    let v = expand_potential(&Edge::Molecule(MoleculeParams { za: za.clone(), zb: zb.clone() }), 1)?;
    Ok(MoleculeConstants { z1: v.coeff(0), z2_plus_te: v.coeff(1) })
}

/// Two-center potential with Zb = 0 in the limit R/t -> 0, through `order`.
pub fn single_center_limit(za: &Coefficient, order: usize) -> Result<RSeries, MellinError> {
    let v = expand_potential(&Edge::Molecule(MoleculeParams { za: za.clone(), zb: Coefficient::zero() }), order)?;
    let mut out = Vec::new();
    for k in 0..=order as i32 {
        let c = v.coeff(k);
        if c.min_degree_in(Gen::Rho).is_some_and(|d| d < 0) {
            return Err(MellinError::Unsupported("R/t appears with a negative power".into()));
        }
        out.push(c.subs_all(&[(Gen::Rho, Coefficient::zero()), (Gen::Q2, Coefficient::one())]));
    }
    Ok(RSeries::new(out, order))
}

/// Second-order l = 0 electron-nucleus expansion in |x1| = t r as t -> inf:
/// (1 + x1 |x1| + |x1|^2 (scalar + dt2 d_t^2 + dt1 d_t)) acting on w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HydrogenLimit {
    pub x1: Coefficient,
    pub x1sq_scalar: Coefficient,
    pub x1sq_dt1: Coefficient,
    pub x1sq_dt2: Coefficient,
    /// Coefficient of |x1|^2 d_t^2 as printed (transcription).
    pub printed_x1sq_dt2: Coefficient,
}

fn t_limit(c: &Coefficient) -> Result<Coefficient, MellinError> {
    if c.degree_in(Gen::T).is_some_and(|d| d > 0) {
        return Err(MellinError::Unsupported(format!("{} grows as t -> inf", c.render())));
    }
    Ok(c.coeff_of(Gen::T, 0))
}

pub fn hydrogen_limit() -> Result<HydrogenLimit, MellinError> {
    let tab = theorem1_table(EdgeKind::En)?;
    let m = row(&tab.rows, 0, 1)?;
    let k = row(&tab.rows, 0, 2)?[2].clone();
    let t = c_gen(Gen::T);
    let tinv = t.inverse().expect("monomial");
    // r = |x1| / t
    let x1 = t_limit(&(&m[1] * &tinv))?;
    let scalar = t_limit(&(&m[2] * &tinv.pow(2)))?;
    // 2t^2 Q_{0,2} = 2t^2 op(C1~)[w / 2t^2] with w = 2t^2 Q_{0,1}
    let w = TExpr::basis(Basis::Datum { dt: 0 }, (t.pow(2) * c_int(2)).inverse().expect("monomial"));
    let op = contract_covariables(&build_c(CKind::C1Tilde), Target::Radial);
    let q2 = op.apply(&w, &Coefficient::zero()).scale(&(&(t.pow(2) * c_int(2)) * &(&k * &tinv.pow(2))));
    let scalar = &scalar + &t_limit(&q2.get(&Basis::Datum { dt: 0 }))?;
    Ok(HydrogenLimit {
        x1,
        x1sq_scalar: scalar,
        x1sq_dt1: t_limit(&q2.get(&Basis::Datum { dt: 1 }))?,
        x1sq_dt2: t_limit(&q2.get(&Basis::Datum { dt: 2 }))?,
        printed_x1sq_dt2: c_frac(1, 6),
    })
}
