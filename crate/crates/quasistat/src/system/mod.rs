//! Quantum particle systems: a pure collection of particles `P`, a family
//! `𝒫` of its sub-collections, quantum states `S`, and a quasi-relation `R`
//! pairing sub-collections with states. The quasi-cardinal of the
//! sub-collection paired with a state is that state's occupation number.
//!
//! [`ParticleSystem::validate`] checks the ten structural axioms `Q1`–`Q10`
//! independently and reports a verdict with a witness for each, instead of
//! failing fast: a model that overfills a fermionic state should say "Q10"
//! even when its bookkeeping is otherwise sound.

mod binning;
mod presets;
mod relation;
mod state;
#[allow(clippy::module_inception)]
mod system;

pub use binning::{EnergyBin, EnergyBinning};
pub use presets::{preset_helium, preset_sodium};
pub use relation::{QuasiRelation, RelationPair};
pub use state::{State, StateId, StateSet};
pub use system::{CoarsePair, CoarseRelation, ParticleSystem};

use serde::Serialize;
use std::fmt;
use thiserror::Error;

use crate::qset::QsetError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SystemError {
    /// The description is malformed (unknown state ids, duplicate
    /// declarations, inconsistent shapes). Distinct from an axiom failure:
    /// a structurally sound system can still violate axioms.
    #[error("malformed system structure: {0}")]
    Structure(String),

    /// A state carrying occupation is not covered by any energy bin.
    #[error("state {0} is not covered by any energy bin")]
    BinningIncomplete(StateId),

    #[error(transparent)]
    Qset(#[from] QsetError),
}

/// The ten axioms a quantum particle system must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
    Q6,
    Q7,
    Q8,
    Q9,
    Q10,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Q1,
        Axiom::Q2,
        Axiom::Q3,
        Axiom::Q4,
        Axiom::Q5,
        Axiom::Q6,
        Axiom::Q7,
        Axiom::Q8,
        Axiom::Q9,
        Axiom::Q10,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Axiom::Q1 => "Q1",
            Axiom::Q2 => "Q2",
            Axiom::Q3 => "Q3",
            Axiom::Q4 => "Q4",
            Axiom::Q5 => "Q5",
            Axiom::Q6 => "Q6",
            Axiom::Q7 => "Q7",
            Axiom::Q8 => "Q8",
            Axiom::Q9 => "Q9",
            Axiom::Q10 => "Q10",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Axiom::Q1 => "the particle collection is finite",
            Axiom::Q2 => "every particle is an m-atom (P is pure)",
            Axiom::Q3 => "every family is a sub-collection of P",
            Axiom::Q4 => "fermion-hood is closed under indistinguishability",
            Axiom::Q5 => "quantum states form an ordered classical set",
            Axiom::Q6 => "the relation pairs exactly the declared families with states",
            Axiom::Q7 => "the families jointly account for every particle",
            Axiom::Q8 => "each paired family is as large as its state's remaining supply allows",
            Axiom::Q9 => "distinct states draw on disjoint particle supplies",
            Axiom::Q10 => "a state holds at most one fermion (exclusion principle)",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Outcome of checking one axiom, with a human-readable witness on failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Verdict {
    pub(crate) fn pass(axiom: Axiom) -> Self {
        Verdict {
            axiom,
            passed: true,
            witness: None,
        }
    }

    pub(crate) fn fail(axiom: Axiom, witness: String) -> Self {
        Verdict {
            axiom,
            passed: false,
            witness: Some(witness),
        }
    }
}
