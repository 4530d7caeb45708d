use super::state::StateId;
use crate::qset::Qset;

/// One pairing of a particle family with a quantum state. The family's
/// quasi-cardinal is the state's occupation number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationPair {
    pub family: Qset,
    pub state: StateId,
}

impl RelationPair {
    pub fn new(family: Qset, state: impl Into<StateId>) -> Self {
        RelationPair {
            family,
            state: state.into(),
        }
    }

    pub fn occupation(&self) -> u64 {
        self.family.qc()
    }
}

/// The quasi-relation `R`: a list of family/state pairs. States absent from
/// the list are read as occupation zero; normalization into one pair per
/// state happens when a [`super::ParticleSystem`] is assembled.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuasiRelation {
    pairs: Vec<RelationPair>,
}

impl QuasiRelation {
    pub fn new(pairs: Vec<RelationPair>) -> Self {
        QuasiRelation { pairs }
    }

    pub fn empty() -> Self {
        QuasiRelation::default()
    }

    pub fn pairs(&self) -> &[RelationPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Occupation number of a state: the quasi-cardinal of its family, zero
    /// if the state is unpaired.
    pub fn occupation(&self, state: &StateId) -> u64 {
        self.pairs
            .iter()
            .filter(|p| &p.state == state)
            .map(RelationPair::occupation)
            .sum()
    }

    pub fn family_of(&self, state: &StateId) -> Option<&Qset> {
        self.pairs.iter().find(|p| &p.state == state).map(|p| &p.family)
    }
}

impl FromIterator<RelationPair> for QuasiRelation {
    fn from_iter<I: IntoIterator<Item = RelationPair>>(iter: I) -> Self {
        QuasiRelation::new(iter.into_iter().collect())
    }
}
