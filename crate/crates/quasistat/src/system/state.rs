use std::fmt;

use serde::Serialize;

use super::SystemError;
use crate::qset::validate_identifier;

/// Name of a quantum state. States are classical: they have ordinary
/// identity and can be ordered, which is what lets them individuate the
/// particle families paired with them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct StateId(pub(crate) String);

impl StateId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl<T: Into<String>> From<T> for StateId {
    fn from(value: T) -> Self {
        StateId(value.into())
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct State {
    pub id: StateId,
    pub rank: u32,
}

impl State {
    pub fn new(id: impl Into<StateId>, rank: u32) -> Self {
        State {
            id: id.into(),
            rank,
        }
    }
}

/// A finite, totally ordered set of quantum states. Ranks and ids are unique;
/// states are kept sorted by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSet {
    states: Vec<State>,
}

impl StateSet {
    pub fn new(mut states: Vec<State>) -> Result<Self, SystemError> {
        for state in &states {
            validate_identifier(state.id.as_str())
                .map_err(|e| SystemError::Structure(e.to_string()))?;
        }
        states.sort_by_key(|s| s.rank);
        for pair in states.windows(2) {
            if pair[0].rank == pair[1].rank {
                return Err(SystemError::Structure(format!(
                    "states {} and {} share rank {}",
                    pair[0].id, pair[1].id, pair[0].rank
                )));
            }
        }
        let mut ids: Vec<&StateId> = states.iter().map(|s| &s.id).collect();
        ids.sort();
        for pair in ids.windows(2) {
            if pair[0] == pair[1] {
                return Err(SystemError::Structure(format!(
                    "duplicate state id {}",
                    pair[0]
                )));
            }
        }
        Ok(StateSet { states })
    }

    /// Convenience: states named `<prefix>1..=<prefix>n` with ranks `1..=n`.
    pub fn numbered(prefix: &str, n: u32) -> Result<Self, SystemError> {
        StateSet::new(
            (1..=n)
                .map(|i| State::new(format!("{prefix}{i}"), i))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &State> {
        self.states.iter()
    }

    pub fn index_of(&self, id: &StateId) -> Option<usize> {
        self.states.iter().position(|s| &s.id == id)
    }

    pub fn contains(&self, id: &StateId) -> bool {
        self.index_of(id).is_some()
    }

    pub fn get(&self, index: usize) -> Option<&State> {
        self.states.get(index)
    }
}
