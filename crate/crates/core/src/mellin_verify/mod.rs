//! Mellin boundary functionals on concrete wavefunctions, the covariable to
//! differential operator contraction, and end-to-end checks of the Green
//! operator expansion: noninteracting eigenfunctions, cusp constants, the
//! two-center edge and the one-electron limit.
//!
//! Functionals are exact: a value is a combination of boundary data of u at
//! r = 0 and of cutoff-dependent finite parts of its Mellin transform, kept
//! as formal symbols. An identity holds cutoff-independently when the finite
//! parts cancel.

mod cases;
mod functional;
mod green_action;
mod limits;
mod texpr;

pub use cases::{case_energy, noninteracting_u, u_series, CaseWavefunction, CutoffSpec, CASE_ORDER};
pub use functional::{
    boundary_functional, check_integrable, mellin_texpr, mellin_value, numeric_value, quadrature_finite_part,
    quadrature_functional, MellinValue, QuadratureResult,
};
pub use green_action::{green_action, q_value, verify_green_action, GreenActionReport};
pub use limits::{
    cusp_coefficient, hydrogen_limit, kato_cusp, molecule_z2, single_center_limit, HydrogenLimit, MoleculeConstants,
};
pub use texpr::{contract_covariables, Basis, DiffOp, TExpr, Target};

use crate::exact_algebra::AlgebraError;
use crate::green_assembly::GreenError;
use crate::series_engine::SeriesError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MellinError {
    #[error("functional depends on the cutoff or diverges: {0}")]
    Cancellation(String),
    #[error("quadrature error estimate {error:e} exceeds tolerance {tol:e}")]
    ToleranceNotMet { error: f64, tol: f64 },
    #[error("series known through r^{order}, r^{needed} required")]
    SeriesTooShort { needed: i64, order: i32 },
    #[error("no closed-form case for sector {0}")]
    UnsupportedSector(u32),
    #[error("invalid cutoff: {0}")]
    InvalidCutoff(String),
    #[error("not numerically evaluable: {0}")]
    NotNumeric(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Green(#[from] GreenError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[cfg(test)]
mod tests;
