use std::collections::BTreeSet;

use super::state::StateId;
use super::SystemError;

/// A group of quantum states sharing one energy: a macrostate. `k = |states|`
/// is the bin's capacity unit in the occupation statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyBin {
    pub label: String,
    pub energy: f64,
    pub states: Vec<StateId>,
}

impl EnergyBin {
    pub fn new(label: impl Into<String>, energy: f64, states: Vec<StateId>) -> Self {
        EnergyBin {
            label: label.into(),
            energy,
            states,
        }
    }

    pub fn k(&self) -> u64 {
        self.states.len() as u64
    }
}

/// Pairwise-disjoint energy bins with strictly increasing energies. Energies
/// are supplied, not derived: the mapping from states to energies is a
/// modelling input.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyBinning {
    bins: Vec<EnergyBin>,
}

impl EnergyBinning {
    pub fn new(bins: Vec<EnergyBin>) -> Result<Self, SystemError> {
        let mut seen: BTreeSet<&StateId> = BTreeSet::new();
        for bin in &bins {
            if bin.states.is_empty() {
                return Err(SystemError::Structure(format!(
                    "energy bin {} has no states",
                    bin.label
                )));
            }
            if !bin.energy.is_finite() {
                return Err(SystemError::Structure(format!(
                    "energy bin {} has non-finite energy",
                    bin.label
                )));
            }
            for state in &bin.states {
                if !seen.insert(state) {
                    return Err(SystemError::Structure(format!(
                        "state {state} appears in more than one energy bin"
                    )));
                }
            }
        }
        for pair in bins.windows(2) {
            if pair[0].energy >= pair[1].energy {
                return Err(SystemError::Structure(format!(
                    "bin energies must increase strictly: {} ({}) then {} ({})",
                    pair[0].label, pair[0].energy, pair[1].label, pair[1].energy
                )));
            }
        }
        Ok(EnergyBinning { bins })
    }

    pub fn bins(&self) -> &[EnergyBin] {
        &self.bins
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn bin_of(&self, state: &StateId) -> Option<usize> {
        self.bins.iter().position(|b| b.states.contains(state))
    }
}
