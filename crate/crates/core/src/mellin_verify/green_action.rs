use super::cases::{noninteracting_u, CaseWavefunction};
use super::functional::mellin_texpr;
use super::texpr::{contract_covariables, Basis, TExpr, Target};
use super::MellinError;
use crate::exact_algebra::{c_gen, c_int, Coefficient, Gen, PolyW, Rational};
use crate::green_assembly::{derive_sector, q_descriptor, AtomSum, Base, QPiece, Q_INDEX};
use crate::series_engine::RSeries;
use crate::symbol_model::{build_c, CKind, CovPoly};

/// Substitution of the edge constants Z1, Z2.
#[derive(Clone, Debug)]
struct Subs {
    z1: Coefficient,
    z2: Coefficient,
}

impl Subs {
    fn apply(&self, c: &Coefficient) -> Coefficient {
        c.subs_all(&[(Gen::Z1, self.z1.clone()), (Gen::Z2, self.z2.clone())])
    }
    fn poly(&self, p: &PolyW) -> PolyW {
        p.map(|c| self.apply(c))
    }
    fn cov(&self, k: &CovPoly) -> CovPoly {
        k.map_coeffs(|c| self.apply(c))
    }
}

fn inv_2t2() -> Coefficient {
    (c_gen(Gen::T).pow(2) * c_int(2)).inverse().expect("monomial")
}

fn t_inv() -> Coefficient {
    c_gen(Gen::T).inverse().expect("monomial")
}

/// M(sigma~ u)(point) where no pole sits at `point`.
fn plain_mellin(u: &CaseWavefunction, point: i64) -> Result<TExpr, MellinError> {
    if !u.coeff(-point)?.is_zero() {
        return Err(MellinError::Cancellation(format!("M(sigma~ u) has a pole at {point}")));
    }
    Ok(TExpr::basis(Basis::FinitePart { point, dt: 0 }, Coefficient::one()))
}

fn constant_of(p: &PolyW, base: Base) -> Result<Coefficient, MellinError> {
    if p.degree() > 0 {
        return Err(MellinError::Unsupported(format!("{base:?} carries a w-dependent factor")));
    }
    Ok(p.coeff(0))
}

/// Value of one base functional at an internal point. Eigen-parts vanish
/// since op(a) sigma~ u = r^2 (H - E) u on the support of the outer cutoff.
fn atom_value(u: &CaseWavefunction, s: &Subs, base: Base, p: &PolyW, point: i64) -> Result<TExpr, MellinError> {
    let z = u.z_coeff();
    let op = |c: CovPoly| contract_covariables(&c, Target::Full);
    Ok(match base {
        Base::E => TExpr::zero(),
        Base::P => mellin_texpr(&s.poly(p), point, &u.series)?.scale(&inv_2t2()),
        Base::C0 | Base::IC1 | Base::C2 => {
            let c = s.apply(&constant_of(p, base)?);
            let cov = match base {
                Base::C0 => build_c(CKind::C0),
                Base::IC1 => build_c(CKind::C1).scale(&c_gen(Gen::I)),
                _ => build_c(CKind::C2),
            };
            op(cov).apply(&plain_mellin(u, point)?, &z).scale(&(&inv_2t2() * &c))
        }
        Base::Z1 => plain_mellin(u, point)?.scale(&(&s.apply(&constant_of(p, base)?) * &(&s.z1 * &t_inv()))),
        Base::Z2 => plain_mellin(u, point)?.scale(&(&s.apply(&constant_of(p, base)?) * &(&s.z2 * &t_inv()))),
        Base::S3 => return Err(MellinError::Unsupported("third-order remainder data".into())),
    })
}

/// coef * op(kernel)[M(op(X) sigma~ u)(point)] for one Q piece.
fn piece_value(u: &CaseWavefunction, s: &Subs, piece: &QPiece) -> Result<TExpr, MellinError> {
    let mut atoms = AtomSum::new();
    atoms.add_expr(0, &piece.expr, piece.point, [0; 3], &Coefficient::one(), u.l);
    let mut v = TExpr::zero();
    for ((_, base, point, _), p) in atoms.terms() {
        v = v.add(&atom_value(u, s, *base, p, *point)?);
    }
    let k = contract_covariables(&s.cov(&piece.kernel), Target::Full);
    Ok(k.apply(&v, &u.z_coeff()).scale(&s.apply(&piece.coef)))
}

/// Result of applying the asymptotic Green operator to a closed-form
/// eigenfunction, per power of r.
#[derive(Clone, Debug)]
pub struct GreenActionReport {
    pub l: u32,
    pub z: Rational,
    pub energy: Coefficient,
    pub z1: Coefficient,
    pub z2: Coefficient,
    /// Derived multipliers (r^0, r^1, r^2) per Q index n, edge constants substituted.
    pub multipliers: Vec<(u32, [Coefficient; 3])>,
    /// Q_{l,n}(u) per n.
    pub q_values: Vec<(u32, TExpr)>,
    /// Coefficients of r^0, r^1, r^2.
    pub gu: Vec<TExpr>,
    pub u: Vec<TExpr>,
    pub residual: Vec<TExpr>,
}

impl GreenActionReport {
    pub fn is_zero(&self) -> bool {
        self.residual.iter().all(TExpr::is_zero)
    }

    pub fn q_value(&self, n: u32) -> Option<&TExpr> {
        self.q_values.iter().find(|(m, _)| *m == n).map(|(_, v)| v)
    }

    /// G u + u as a series times e^{-Zt}; None if cutoff-dependent parts remain.
    pub fn residual_series(&self) -> Option<RSeries> {
        if !self.residual.iter().all(TExpr::is_boundary_only) {
            return None;
        }
        let c = self.residual.iter().map(|e| e.get(&Basis::Exp)).collect();
        Some(RSeries::new(c, self.residual.len() - 1))
    }
}

/// Q_{l,n}(u) from the simplified h-forms.
pub fn q_value(u: &CaseWavefunction, l: u32, n: u32, z1: &Coefficient, z2: &Coefficient) -> Result<TExpr, MellinError> {
    let s = Subs { z1: z1.clone(), z2: z2.clone() };
    let d = q_descriptor(l, n)?;
    let mut v = TExpr::zero();
    for piece in &d.simplified {
        v = v.add(&piece_value(u, &s, piece)?);
    }
    Ok(v)
}

/// G u_l through r^2 for the noninteracting state of sector l and charge z,
/// with the multipliers derived from the assembled Green symbol.
pub fn verify_green_action(l: u32, z: Rational) -> Result<GreenActionReport, MellinError> {
    let u = noninteracting_u(l, z.clone())?;
    green_action(&u)
}

pub fn green_action(u: &CaseWavefunction) -> Result<GreenActionReport, MellinError> {
    let l = u.l;
    let (z1, z2) = u.edge_constants()?;
    let s = Subs { z1: z1.clone(), z2: z2.clone() };
    let (mults, residual) = derive_sector(l)?;
    if !residual.is_zero() {
        return Err(MellinError::Unsupported(format!("sector {l} multipliers leave a residual")));
    }
    let two_t2 = c_gen(Gen::T).pow(2) * c_int(2);
    let mut multipliers = Vec::new();
    let mut q_values = Vec::new();
    let mut gu = vec![TExpr::zero(); 3];
    for (ll, n) in Q_INDEX {
        if ll != l {
            continue;
        }
        let m = mults.iter().find(|(k, _)| *k == n).map(|(_, m)| m.clone()).unwrap_or_default();
        let m = [s.apply(&m[0]), s.apply(&m[1]), s.apply(&m[2])];
        let q = q_value(u, l, n, &z1, &z2)?;
        for i in 0..3 {
            gu[i] = gu[i].add(&q.scale(&(&m[i] * &two_t2)));
        }
        multipliers.push((n, m));
        q_values.push((n, q));
    }
    let uu: Vec<TExpr> =
        (0..3).map(|i| Ok(TExpr::basis(Basis::Exp, u.coeff(i)?))).collect::<Result<_, MellinError>>()?;
    let residual = gu.iter().zip(&uu).map(|(a, b)| a.add(b)).collect();
    Ok(GreenActionReport {
        l,
        z: u.z.clone(),
        energy: u.energy.clone(),
        z1,
        z2,
        multipliers,
        q_values,
        gu,
        u: uu,
        residual,
    })
}
