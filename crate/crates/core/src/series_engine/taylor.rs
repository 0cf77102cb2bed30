use super::{expand_h, expand_potential, expand_r2_over_sin2, expand_sec2, Edge, MoleculeParams, RSeries, SeriesError};
use crate::exact_algebra::{parse_coefficient, Coefficient};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;

/// Named expansions exposed on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaylorTarget {
    /// 1 + 2 r tan r - 2 r cot r
    H,
    /// r^2 / sin^2 r
    Sin2,
    /// 1 / cos^2 r
    Cos2,
    Ven,
    Vee,
    VenNoEe,
    Molecule(MoleculeParams),
}

impl TaylorTarget {
    pub const NAMES: [&'static str; 7] = ["h", "sin2", "cos2", "ven", "vee", "ven-no-ee", "molecule"];

    pub fn name(&self) -> &'static str {
        match self {
            TaylorTarget::H => "h",
            TaylorTarget::Sin2 => "sin2",
            TaylorTarget::Cos2 => "cos2",
            TaylorTarget::Ven => "ven",
            TaylorTarget::Vee => "vee",
            TaylorTarget::VenNoEe => "ven-no-ee",
            TaylorTarget::Molecule(_) => "molecule",
        }
    }

    /// Parses a target name; the molecule target takes symbolic charges.
    pub fn parse(s: &str) -> Option<TaylorTarget> {
        Some(match s {
            "h" => TaylorTarget::H,
            "sin2" => TaylorTarget::Sin2,
            "cos2" => TaylorTarget::Cos2,
            "ven" => TaylorTarget::Ven,
            "vee" => TaylorTarget::Vee,
            "ven-no-ee" => TaylorTarget::VenNoEe,
            "molecule" => TaylorTarget::Molecule(MoleculeParams::symbolic()),
            _ => return None,
        })
    }

    pub fn expand(&self, order: usize) -> Result<RSeries, SeriesError> {
        match self {
            TaylorTarget::H => expand_h(order),
            TaylorTarget::Sin2 => expand_r2_over_sin2(order),
            TaylorTarget::Cos2 => expand_sec2(order),
            TaylorTarget::Ven => expand_potential(&Edge::En, order),
            TaylorTarget::Vee => expand_potential(&Edge::Ee, order),
            TaylorTarget::VenNoEe => expand_potential(&Edge::EnNoEe, order),
            TaylorTarget::Molecule(p) => expand_potential(&Edge::Molecule(p.clone()), order),
        }
    }
}

impl fmt::Display for TaylorTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const TAYLOR_FIXTURE: &str = include_str!("../../fixtures/taylor.json");

#[derive(Deserialize)]
struct TaylorFixture {
    series: BTreeMap<String, Vec<String>>,
}

/// Transcribed coefficients keyed by target name, lowest power first.
pub fn printed_taylor() -> Result<BTreeMap<String, Vec<Coefficient>>, SeriesError> {
    let fx: TaylorFixture = serde_json::from_str(TAYLOR_FIXTURE).map_err(|e| SeriesError::Fixture(e.to_string()))?;
    fx.series
        .into_iter()
        .map(|(k, v)| {
            let c = v
                .iter()
                .map(|s| parse_coefficient(s).map_err(|e| SeriesError::Fixture(format!("{k}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((k, c))
        })
        .collect()
}
