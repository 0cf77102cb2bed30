use super::MellinError;
use crate::exact_algebra::{c_frac, c_gen, q, to_f64, Coefficient, Gen, Rational};
use crate::series_engine::{cos_series, sin_series, RSeries};
use num::{One, Signed};
use num_dual::{Dual2_64, DualNum};

/// Smooth cutoff equal to 1 on [0, r_a] and 0 on [r_b, inf), with an
/// exp(-1/x) transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutoffSpec {
    pub r_a: Rational,
    pub r_b: Rational,
}

impl Default for CutoffSpec {
    fn default() -> Self {
        CutoffSpec { r_a: q(1, 2), r_b: Rational::one() }
    }
}

fn smooth_step(x: Dual2_64) -> Dual2_64 {
    if x.re <= 0.0 {
        Dual2_64::from_re(0.0)
    } else {
        (-x.recip()).exp()
    }
}

impl CutoffSpec {
    pub fn new(r_a: Rational, r_b: Rational) -> Result<CutoffSpec, MellinError> {
        if !r_a.is_positive() || r_b <= r_a {
            return Err(MellinError::InvalidCutoff(format!("need 0 < r_a < r_b, got {r_a}, {r_b}")));
        }
        Ok(CutoffSpec { r_a, r_b })
    }

    pub fn r_a_f64(&self) -> f64 {
        to_f64(&self.r_a)
    }

    pub fn r_b_f64(&self) -> f64 {
        to_f64(&self.r_b)
    }

    /// Profile value with exact derivatives through second order.
    pub fn profile(&self, r: Dual2_64) -> Dual2_64 {
        let (a, b) = (self.r_a_f64(), self.r_b_f64());
        if r.re <= a {
            return Dual2_64::from_re(1.0);
        }
        if r.re >= b {
            return Dual2_64::from_re(0.0);
        }
        let x = (-r + b) / (b - a);
        let f = smooth_step(x);
        let g = smooth_step(-x + 1.0);
        f / (f + g)
    }
}

/// A closed-form two-electron wavefunction on the electron-nucleus edge of
/// sector l, without its angular factor Y_{l,m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseWavefunction {
    pub l: u32,
    pub z: Rational,
    /// u = e^{-Zt} * series, exact in t through `series.order()`.
    pub series: RSeries,
    /// Energy of the noninteracting state.
    pub energy: Coefficient,
}

/// Series order used for the noninteracting cases.
pub const CASE_ORDER: usize = 4;

/// r-series of u_l e^{Zt} for charge `z` (numeric or symbolic).
pub fn u_series(l: u32, z: &Coefficient, order: usize) -> Result<RSeries, MellinError> {
    if l > 2 {
        return Err(MellinError::UnsupportedSector(l));
    }
    let t = c_gen(Gen::T);
    let zt = z * &t;
    let sin = sin_series(order);
    let cosm1 = cos_series(order).sub(&RSeries::one(order));
    let (pre, lead) = match l {
        0 => (RSeries::one(order), sin.scale(&-&zt)),
        1 => (sin.scale(&t), sin.scale(&-(&zt * c_frac(1, 2)))),
        _ => (sin.mul(&sin).scale(&t.pow(2)), sin.scale(&-(&zt * c_frac(1, 3)))),
    };
    let arg = lead.sub(&cosm1.scale(&zt));
    Ok(pre.mul(&arg.exp()?).truncate(order as i32))
}

/// E_0 = -Z^2/2 - Z^2/(2 (l+1)^2): one electron in 1s, the other in the
/// lowest orbital of angular momentum l.
pub fn case_energy(l: u32, z: &Coefficient) -> Coefficient {
    let n = i64::from(l) + 1;
    -(z.pow(2) * c_frac(1, 2)) - z.pow(2) * c_frac(1, 2 * n * n)
}

pub fn noninteracting_u(l: u32, z: Rational) -> Result<CaseWavefunction, MellinError> {
    let zc = Coefficient::from_rational(z.clone());
    Ok(CaseWavefunction { l, series: u_series(l, &zc, CASE_ORDER)?, energy: case_energy(l, &zc), z })
}

impl CaseWavefunction {
    pub fn z_coeff(&self) -> Coefficient {
        Coefficient::from_rational(self.z.clone())
    }

    pub fn z_f64(&self) -> f64 {
        to_f64(&self.z)
    }

    /// Closed form u(r, t) with dual-number arguments.
    pub fn eval(&self, r: Dual2_64, t: Dual2_64) -> Dual2_64 {
        let z = self.z_f64();
        let (s, c) = (r.sin(), r.cos());
        match self.l {
            0 => (-(t * z) * (s + c)).exp(),
            1 => t * s * (-(t * (z / 2.0)) * s - t * z * c).exp(),
            _ => t * t * s * s * (-(t * (z / 3.0)) * s - t * z * c).exp(),
        }
    }

    pub fn eval_f64(&self, r: f64, t: f64) -> f64 {
        self.eval(Dual2_64::from_re(r), Dual2_64::from_re(t)).re
    }

    /// Coefficient of r^k of u e^{Zt}.
    pub fn coeff(&self, k: i64) -> Result<Coefficient, MellinError> {
        if k > i64::from(self.series.order()) {
            return Err(MellinError::SeriesTooShort { needed: k, order: self.series.order() });
        }
        Ok(if k < 0 { Coefficient::zero() } else { self.series.coeff(k as i32) })
    }

    /// Numeric value of the truncated series (including e^{-Zt}).
    pub fn eval_series(&self, r: f64, t: f64) -> f64 {
        let z = self.z_f64();
        let val = |g: Gen| if g == Gen::T { t } else { 0.0 };
        self.series.eval(r, &val).0 * (-z * t).exp()
    }

    /// Z1 and Z2 of the edge potential without electron-electron term,
    /// at this case's charge and energy.
    pub fn edge_constants(&self) -> Result<(Coefficient, Coefficient), MellinError> {
        use crate::series_engine::Edge;
        let (z1, z2) = crate::symbol_model::edge_constants(&Edge::EnNoEe)?;
        let subs = [(Gen::Z, self.z_coeff()), (Gen::E, self.energy.clone())];
        Ok((z1.subs_all(&subs), z2.subs_all(&subs)))
    }
}

/// Exponents k of u with nonzero coefficient, through the series order.
pub(crate) fn exponents(u: &RSeries) -> Vec<i64> {
    (u.start()..=u.order()).filter(|k| !u.coeff(*k).is_zero()).map(i64::from).collect()
}
