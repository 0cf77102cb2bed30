//! Residue-driven assembly of the Green operator symbols through second
//! order, their angular projections and the leading-order coefficient table.
//!
//! Every term has the form `-2t^2 r^e Res(T^m d, w0) M(X sigma~ u)(w0)`,
//! where covariable-dependent residues act through the contraction
//! `sum_alpha (1/alpha!) d_eta^alpha(.) D_y^alpha X`. Terms are unfolded into
//! a small set of base functionals (`atoms`) so that different groupings of
//! the same expansion can be compared exactly.

mod atoms;
mod residues;
mod terms;
mod theorem1;

pub use atoms::{h_poly, AtomKey, AtomSum, Base};
pub use residues::{
    compare_fixture, generic_residue, load_fixture, m_row_consistency, parse_factor, required_residues,
    residue_of, residue_table, residue_table_for, GenericRecord, ResidueCheck, ResidueFixture, ResidueRecord,
    RESIDUE_FIXTURE,
};
pub use terms::{extra_residues, templates, CutoffTag, Expr, GreenId, GreenTerm, SymRef, TemplateTerm};
pub use theorem1::{
    derive_sector, printed_multipliers, q_descriptor, sector_sum, theorem1_table, EdgeKind, MultiplierRow,
    QDescriptor, QPiece, Theorem1Table, Q_INDEX, THEOREM1_FIXTURE,
};

use crate::exact_algebra::{c_gen, c_int, AlgebraError, Gen};
use crate::parametrix_engine::ParametrixError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GreenError {
    #[error("unknown Green symbol {0:?}; expected one of ga, g02, g03, g12, g13, g22, g23")]
    UnknownGreenId(String),
    #[error("no Q functional with l = {l}, n = {n}")]
    UnknownQ { l: u32, n: u32 },
    #[error("no sector-generic closed form for {0}")]
    NoGenericForm(String),
    #[error("fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Parametrix(#[from] ParametrixError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Turn residue records into Green terms for one symbol.
pub fn assemble_from(records: &[ResidueRecord], id: GreenId) -> Vec<GreenTerm> {
    let m2t2 = c_gen(Gen::T).pow(2) * c_int(-2);
    let mut out = Vec::new();
    for t in templates(id) {
        for r in records.iter().filter(|r| r.green == id && r.sym == t.sym && r.pole == t.pole) {
            out.push(GreenTerm {
                green: id,
                l: r.l,
                rpow: t.rpow + t.sym.j,
                scalar: &r.value * &m2t2,
                expr: t.expr.clone(),
                point: t.pole,
                kernel: r.eta,
                source: Some((t.sym, t.pole)),
            });
        }
    }
    out
}

/// b-type Green symbol `id` on sectors 0..=l_max.
pub fn assemble_btype(id: GreenId, l_max: u32) -> Result<Vec<GreenTerm>, GreenError> {
    if id == GreenId::Ga {
        return Err(GreenError::UnknownGreenId(format!("{id} is not b-type")));
    }
    Ok(assemble_from(&residue_table_for(&[id], l_max)?, id))
}

/// Same as `assemble_btype` but with a textual id.
pub fn assemble_btype_named(id: &str, l_max: u32) -> Result<Vec<GreenTerm>, GreenError> {
    assemble_btype(GreenId::parse(id)?, l_max)
}

/// The sum of all a-type symbols on sectors 0..=l_max.
pub fn assemble_atype(l_max: u32) -> Result<Vec<GreenTerm>, GreenError> {
    Ok(assemble_from(&residue_table_for(&[GreenId::Ga], l_max)?, GreenId::Ga))
}

/// Flatness order of the Hamiltonian data an expression needs: s_k vanishes
/// below order k.
fn data_order(x: &Expr) -> u32 {
    match x {
        Expr::S1 => 1,
        Expr::S2 => 2,
        Expr::S3 => 3,
        _ => 0,
    }
}

/// Terms that survive when the edge operator is truncated at `order`.
pub fn truncate_terms(terms: &[GreenTerm], order: u32) -> Vec<GreenTerm> {
    terms.iter().filter(|t| t.rpow <= order && data_order(&t.expr) <= order).cloned().collect()
}

/// All Green terms (a-type and b-type) on sector l only.
pub fn assemble_all(l: u32) -> Result<Vec<GreenTerm>, GreenError> {
    let recs: Vec<ResidueRecord> =
        residue_table_for(&GreenId::ALL, l)?.into_iter().filter(|r| r.l == l).collect();
    Ok(GreenId::ALL.iter().flat_map(|id| assemble_from(&recs, *id)).collect())
}

/// P_l applied to a term list: the sector-l terms with equal functionals
/// merged, zero terms dropped, in a fixed order. Display points follow
/// M(r^k v)(w) = M(v)(w + k).
pub fn project_sector(terms: &[GreenTerm], l: u32) -> Vec<GreenTerm> {
    let mut out: Vec<GreenTerm> = Vec::new();
    for t in terms.iter().filter(|t| t.l == l) {
        match out.iter_mut().find(|o| {
            o.green == t.green && o.rpow == t.rpow && o.expr == t.expr && o.point == t.point && o.kernel == t.kernel
        }) {
            Some(o) => {
                o.scalar = &o.scalar + &t.scalar;
                o.source = None;
            }
            None => out.push(t.clone()),
        }
    }
    out.retain(|t| !t.scalar.is_zero());
    out.sort_by(|a, b| {
        (a.green, a.rpow, a.display_point(), a.expr.label(), a.kernel).cmp(&(
            b.green,
            b.rpow,
            b.display_point(),
            b.expr.label(),
            b.kernel,
        ))
    });
    out
}

#[cfg(test)]
mod tests;
