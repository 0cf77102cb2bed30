use super::cases::{exponents, CaseWavefunction, CutoffSpec};
use super::texpr::{Basis, TExpr};
use super::MellinError;
use crate::exact_algebra::{Coefficient, Gen, PolyW};
use crate::series_engine::RSeries;
use num_dual::{second_derivative, Dual2_64, DualNum};

/// M(op(p) sigma~ u)(w0) split into its cutoff-independent boundary part and
/// the multiple of the finite part of M(sigma~ u)(w0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MellinValue {
    pub boundary: Coefficient,
    pub finite_part: Coefficient,
}

fn series_coeff(u: &RSeries, k: i64) -> Result<Coefficient, MellinError> {
    if k > i64::from(u.order()) {
        return Err(MellinError::SeriesTooShort { needed: k, order: u.order() });
    }
    Ok(if k < i64::from(u.start()) { Coefficient::zero() } else { u.coeff(k as i32) })
}

/// p(w) M(sigma~ u)(w) at w0 by analytic continuation. M(sigma~ u) has simple
/// poles at -k with residue u_k; a pole at w0 must be cancelled by p(w0) = 0
/// and then leaves p'(w0) u_{-w0}.
pub fn mellin_value(p: &PolyW, w0: i64, u: &RSeries) -> Result<MellinValue, MellinError> {
    let w = Coefficient::int(w0);
    let pw = p.eval(&w);
    let uk = series_coeff(u, -w0)?;
    if uk.is_zero() {
        return Ok(MellinValue { boundary: Coefficient::zero(), finite_part: pw });
    }
    if !pw.is_zero() {
        return Err(MellinError::Cancellation(format!(
            "p({w0}) = {} does not cancel the pole of the Mellin transform at {w0}",
            pw.render()
        )));
    }
    Ok(MellinValue { boundary: &p.derivative().eval(&w) * &uk, finite_part: Coefficient::zero() })
}

/// Check that r^{w0-1} p(-r d_r) u is integrable at r = 0.
pub fn check_integrable(p: &PolyW, w0: i64, u: &RSeries) -> Result<(), MellinError> {
    for k in exponents(u) {
        if k + w0 <= 0 && !p.eval(&Coefficient::int(-k)).is_zero() {
            return Err(MellinError::Cancellation(format!("p({}) != 0 leaves r^{} unintegrable at w0 = {w0}", -k, k)));
        }
    }
    Ok(())
}

/// Cutoff-independent value of M(op(p) sigma~ u)(w0) in terms of the series
/// data of u at r = 0.
pub fn boundary_functional(p: &PolyW, w0: i64, u: &RSeries) -> Result<Coefficient, MellinError> {
    check_integrable(p, w0, u)?;
    let v = mellin_value(p, w0, u)?;
    if !v.finite_part.is_zero() {
        return Err(MellinError::Cancellation(format!(
            "p({w0}) = {} multiplies the cutoff-dependent part of the Mellin transform",
            v.finite_part.render()
        )));
    }
    Ok(v.boundary)
}

/// The same value as a function of t: boundary data carry e^{-Zt}.
pub fn mellin_texpr(p: &PolyW, w0: i64, u: &RSeries) -> Result<TExpr, MellinError> {
    let v = mellin_value(p, w0, u)?;
    let mut e = TExpr::basis(Basis::Exp, v.boundary);
    e.add_term(Basis::FinitePart { point: w0, dt: 0 }, v.finite_part);
    Ok(e)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u32,
}

/// Upper end of the log-radius range; r = e^{-40} is below double precision
/// relevance for integrands that decay at r = 0.
const S_MAX: f64 = 40.0;

fn eval_t(c: &Coefficient, t: f64) -> Result<f64, MellinError> {
    let (re, im) = c.eval(&|g| if g == Gen::T { t } else { f64::NAN });
    if re.is_nan() || im.abs() > 1e-300 {
        return Err(MellinError::NotNumeric(c.render()));
    }
    Ok(re)
}

/// Integrate f over s in [-ln r_b, S_MAX], split where the cutoff becomes 1.
fn integrate_log(f: impl Fn(f64) -> f64, cutoff: &CutoffSpec, tol: f64) -> Result<QuadratureResult, MellinError> {
    let sb = -cutoff.r_b_f64().ln();
    let sa = -cutoff.r_a_f64().ln();
    let a = quadrature::double_exponential::integrate(&f, sb, sa, tol * 1e-2);
    let b = quadrature::double_exponential::integrate(&f, sa, S_MAX, tol * 1e-2);
    let value = a.integral + b.integral;
    let error_estimate = a.error_estimate + b.error_estimate;
    if !value.is_finite() || error_estimate > tol * value.abs().max(1.0) {
        return Err(MellinError::ToleranceNotMet { error: error_estimate, tol });
    }
    Ok(QuadratureResult { value, error_estimate, evaluations: a.num_function_evaluations + b.num_function_evaluations })
}

/// Direct numerical value of the integral of r^{w0-1} p(-r d_r)(sigma~ u)
/// at fixed t. With r = e^{-s}, -r d_r becomes d_s; derivatives of the
/// cutoff times the closed form are exact (dual numbers).
pub fn quadrature_functional(
    p: &PolyW,
    w0: i64,
    u: &CaseWavefunction,
    t: f64,
    cutoff: &CutoffSpec,
    tol: f64,
) -> Result<QuadratureResult, MellinError> {
    if p.degree() > 2 {
        return Err(MellinError::NotNumeric(format!("degree {} > 2", p.degree())));
    }
    check_integrable(p, w0, &u.series)?;
    let pc: Vec<f64> = (0..3).map(|k| eval_t(&p.coeff(k), t)).collect::<Result<_, _>>()?;
    let w0f = w0 as f64;
    let f = |s: f64| {
        let (g0, g1, g2) = second_derivative(
            |s: Dual2_64| {
                let r = (-s).exp();
                cutoff.profile(r) * u.eval(r, Dual2_64::from_re(t))
            },
            s,
        );
        (-s * w0f).exp() * (pc[0] * g0 + pc[1] * g1 + pc[2] * g2)
    };
    integrate_log(f, cutoff, tol)
}

/// Numerical finite part of M(sigma~ d_t^dt u)(point) at fixed t, for points
/// where the Mellin integral converges.
pub fn quadrature_finite_part(
    u: &CaseWavefunction,
    point: i64,
    dt: u32,
    t: f64,
    cutoff: &CutoffSpec,
    tol: f64,
) -> Result<QuadratureResult, MellinError> {
    if dt > 2 {
        return Err(MellinError::NotNumeric(format!("t-derivative of order {dt}")));
    }
    if let Some(k) = exponents(&u.series).into_iter().find(|k| k + point <= 0) {
        return Err(MellinError::Cancellation(format!("r^{k} makes M(sigma~ u)({point}) divergent")));
    }
    let pf = point as f64;
    let f = |s: f64| {
        let r = (-s).exp();
        let (v0, v1, v2) = second_derivative(|tt: Dual2_64| u.eval(Dual2_64::from_re(r), tt), t);
        let d = [v0, v1, v2][dt as usize];
        (-s * pf).exp() * cutoff.profile(Dual2_64::from_re(r)).re * d
    };
    integrate_log(f, cutoff, tol)
}

/// Numerical value of a TExpr at fixed t, evaluating finite parts by
/// quadrature with the given cutoff.
pub fn numeric_value(
    e: &TExpr,
    u: &CaseWavefunction,
    t: f64,
    cutoff: &CutoffSpec,
    tol: f64,
) -> Result<f64, MellinError> {
    let mut acc = 0.0;
    for (b, c) in e.terms() {
        let cv = eval_t(c, t)?;
        let bv = match b {
            Basis::Exp => (-u.z_f64() * t).exp(),
            Basis::FinitePart { point, dt } => quadrature_finite_part(u, *point, *dt, t, cutoff, tol)?.value,
            Basis::Datum { .. } => return Err(MellinError::NotNumeric(b.render())),
        };
        acc += cv * bv;
    }
    Ok(acc)
}
