//! Exact Mellin symbol calculus near two-particle coalescence edges of a
//! two-electron Hamiltonian: Taylor data of the edge operator, the
//! asymptotic parametrix symbols, residue-driven Green operator assembly and
//! verification against closed-form wavefunctions.

pub mod exact_algebra;
pub mod series_engine;
pub mod symbol_model;
pub mod parametrix_engine;
pub mod green_assembly;
pub mod mellin_verify;
pub mod cli;
