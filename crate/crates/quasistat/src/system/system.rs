use std::collections::BTreeMap;

use super::binning::EnergyBinning;
use super::relation::{QuasiRelation, RelationPair};
use super::state::StateSet;
use super::{Axiom, SystemError, Verdict};
use crate::qset::{Kind, Qset, SpeciesId, Universe};

/// The structure `⟨P, 𝒫, F, S, R⟩`: a pure particle collection, a family of
/// its sub-collections, the per-species fermion predicate (carried by the
/// universe), quantum states, and the pairing relation.
///
/// Construction validates shape only (declared species, known states, at
/// most one pairing per state); the axioms are checked by [`validate`],
/// which never fails fast — every axiom gets an independent verdict.
///
/// [`validate`]: ParticleSystem::validate
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleSystem {
    universe: Universe,
    particles: Qset,
    states: StateSet,
    relation: QuasiRelation,
    families: Vec<Qset>,
}

impl ParticleSystem {
    /// Assembles a system, normalizing the relation to exactly one pair per
    /// state in rank order (unpaired states get an explicit empty family).
    /// The family collection `𝒫` defaults to the normalized relation's
    /// families; override it with [`with_families`] to model a family list
    /// that disagrees with the relation.
    ///
    /// [`with_families`]: ParticleSystem::with_families
    pub fn new(
        universe: Universe,
        particles: Qset,
        states: StateSet,
        relation: QuasiRelation,
    ) -> Result<Self, SystemError> {
        universe.check_qset(&particles)?;
        let mut per_state: BTreeMap<usize, Qset> = BTreeMap::new();
        for pair in relation.pairs() {
            universe.check_qset(&pair.family)?;
            let Some(index) = states.index_of(&pair.state) else {
                return Err(SystemError::Structure(format!(
                    "relation refers to unknown state {}",
                    pair.state
                )));
            };
            match per_state.get(&index) {
                None => {
                    per_state.insert(index, pair.family.clone());
                }
                Some(existing) if existing.weak_ext_equiv(&pair.family) => {
                    // Indistinguishable duplicate: the same pair stated twice.
                }
                Some(existing) => {
                    return Err(SystemError::Structure(format!(
                        "state {} is paired with two distinguishable families {} and {}",
                        pair.state, existing, pair.family
                    )));
                }
            }
        }
        let normalized: QuasiRelation = states
            .iter()
            .enumerate()
            .map(|(index, state)| {
                RelationPair::new(
                    per_state.get(&index).cloned().unwrap_or_else(Qset::empty),
                    state.id.clone(),
                )
            })
            .collect();
        let families = normalized.pairs().iter().map(|p| p.family.clone()).collect();
        Ok(ParticleSystem {
            universe,
            particles,
            states,
            relation: normalized,
            families,
        })
    }

    /// Builds a single-species system straight from per-state occupation
    /// numbers (in state rank order).
    pub fn from_occupations(
        universe: Universe,
        species: impl Into<SpeciesId>,
        states: StateSet,
        occupations: &[u64],
    ) -> Result<Self, SystemError> {
        if occupations.len() != states.len() {
            return Err(SystemError::Structure(format!(
                "{} occupation numbers for {} states",
                occupations.len(),
                states.len()
            )));
        }
        let species = species.into();
        let mut total: u64 = 0;
        let pairs: Vec<RelationPair> = states
            .iter()
            .zip(occupations)
            .map(|(state, &n)| {
                total += n;
                let family = Qset::builder().particles(species.clone(), n).build()?;
                Ok(RelationPair::new(family, state.id.clone()))
            })
            .collect::<Result<_, SystemError>>()?;
        let particles = Qset::builder().particles(species, total).build()?;
        ParticleSystem::new(universe, particles, states, QuasiRelation::new(pairs))
    }

    /// Replaces the derived family collection `𝒫`.
    pub fn with_families(mut self, families: Vec<Qset>) -> Result<Self, SystemError> {
        for family in &families {
            self.universe.check_qset(family)?;
        }
        self.families = families;
        Ok(self)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn particles(&self) -> &Qset {
        &self.particles
    }

    pub fn states(&self) -> &StateSet {
        &self.states
    }

    pub fn relation(&self) -> &QuasiRelation {
        &self.relation
    }

    pub fn families(&self) -> &[Qset] {
        &self.families
    }

    /// Per-state occupation numbers in state rank order.
    pub fn occupations(&self) -> Vec<u64> {
        self.relation.pairs().iter().map(RelationPair::occupation).collect()
    }

    /// Checks every axiom and returns the ten verdicts in order. Validation
    /// is deterministic and side-effect-free.
    pub fn validate(&self) -> Vec<Verdict> {
        Axiom::ALL.iter().map(|&axiom| self.check(axiom)).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.validate().iter().all(|v| v.passed)
    }

    fn check(&self, axiom: Axiom) -> Verdict {
        match axiom {
            Axiom::Q1 => self.check_q1(),
            Axiom::Q2 => self.check_q2(),
            Axiom::Q3 => self.check_q3(),
            Axiom::Q4 => self.check_q4(),
            Axiom::Q5 => self.check_q5(),
            Axiom::Q6 => self.check_q6(),
            Axiom::Q7 => self.check_q7(),
            Axiom::Q8 => self.check_q8(),
            Axiom::Q9 => self.check_q9(),
            Axiom::Q10 => self.check_q10(),
        }
    }

    fn check_q1(&self) -> Verdict {
        // Finiteness is structural here: the representation only holds
        // finite populations with machine-checked totals.
        Verdict::pass(Axiom::Q1)
    }

    fn check_q2(&self) -> Verdict {
        if self.particles.is_pure() {
            Verdict::pass(Axiom::Q2)
        } else {
            let mut intruders: Vec<String> =
                self.particles.label_elements().map(|l| l.to_string()).collect();
            intruders.extend(self.particles.sub_elements().map(|q| q.to_string()));
            Verdict::fail(
                Axiom::Q2,
                format!("P contains classical elements: {}", intruders.join(", ")),
            )
        }
    }

    fn check_q3(&self) -> Verdict {
        for (i, family) in self.families.iter().enumerate() {
            if !family.is_sub_of(&self.particles) {
                return Verdict::fail(
                    Axiom::Q3,
                    format!("family #{i} {family} is not a sub-collection of P {}", self.particles),
                );
            }
        }
        Verdict::pass(Axiom::Q3)
    }

    fn check_q4(&self) -> Verdict {
        // The fermion predicate lives on species, and indistinguishability
        // implies equal species, so closure under ≡ holds by representation.
        Verdict::pass(Axiom::Q4)
    }

    fn check_q5(&self) -> Verdict {
        // Rank uniqueness is enforced when the StateSet is built; re-verify.
        let mut ranks: Vec<u32> = self.states.iter().map(|s| s.rank).collect();
        let n = ranks.len();
        ranks.dedup();
        if ranks.len() == n {
            Verdict::pass(Axiom::Q5)
        } else {
            Verdict::fail(Axiom::Q5, "duplicate state ranks".into())
        }
    }

    fn check_q6(&self) -> Verdict {
        // R must pair exactly the declared families with states: the
        // multiset of paired families equals 𝒫 (so R is total on 𝒫), and
        // every pair's state is a declared one (structural).
        let mut from_relation: Vec<&Qset> = self.relation.pairs().iter().map(|p| &p.family).collect();
        let mut declared: Vec<&Qset> = self.families.iter().collect();
        from_relation.sort();
        declared.sort();
        if from_relation == declared {
            Verdict::pass(Axiom::Q6)
        } else {
            Verdict::fail(
                Axiom::Q6,
                format!(
                    "relation pairs {} families, 𝒫 declares {}, or their contents differ",
                    from_relation.len(),
                    declared.len()
                ),
            )
        }
    }

    fn check_q7(&self) -> Verdict {
        let mut totals: BTreeMap<&SpeciesId, u64> = BTreeMap::new();
        for family in &self.families {
            for (id, count) in family.species_counts() {
                *totals.entry(id).or_insert(0) += count;
            }
        }
        for (id, supply) in self.particles.species_counts() {
            let used = totals.get(id).copied().unwrap_or(0);
            if used != supply {
                return Verdict::fail(
                    Axiom::Q7,
                    format!("species {id}: families hold {used} of {supply} particles"),
                );
            }
        }
        for (id, used) in &totals {
            if self.particles.species_count(id) == 0 {
                return Verdict::fail(
                    Axiom::Q7,
                    format!("families hold {used} particles of species {id} absent from P"),
                );
            }
        }
        Verdict::pass(Axiom::Q7)
    }

    /// Maximality: for each state, no strictly larger family could replace
    /// the paired one while respecting the remaining supply (what the other
    /// states have not used) and the exclusion principle.
    fn check_q8(&self) -> Verdict {
        let pairs = self.relation.pairs();
        for (i, pair) in pairs.iter().enumerate() {
            let mut bosonic_room: u64 = 0;
            let mut fermionic_room: u64 = 0;
            for (id, supply) in self.particles.species_counts() {
                let used_elsewhere: u64 = pairs
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, other)| other.family.species_count(id))
                    .sum();
                let room = supply.saturating_sub(used_elsewhere);
                match self.universe.kind_of(id) {
                    Some(Kind::Boson) => bosonic_room += room,
                    _ => fermionic_room += room,
                }
            }
            let max_admissible = if bosonic_room > 0 {
                bosonic_room
            } else {
                fermionic_room.min(1)
            };
            let qc = pair.family.qc();
            if max_admissible > qc {
                return Verdict::fail(
                    Axiom::Q8,
                    format!(
                        "state {}: paired family has quasi-cardinal {qc} but {max_admissible} \
                         particles are admissible",
                        pair.state
                    ),
                );
            }
        }
        Verdict::pass(Axiom::Q8)
    }

    /// Disjointness across states, checked as supply accounting: particle
    /// identity is unobservable, so overlapping families show up as the
    /// states jointly claiming more particles than exist.
    fn check_q9(&self) -> Verdict {
        let mut totals: BTreeMap<&SpeciesId, u64> = BTreeMap::new();
        for pair in self.relation.pairs() {
            for (id, count) in pair.family.species_counts() {
                *totals.entry(id).or_insert(0) += count;
            }
        }
        for (id, used) in totals {
            let supply = self.particles.species_count(id);
            if used > supply {
                return Verdict::fail(
                    Axiom::Q9,
                    format!(
                        "species {id}: states jointly claim {used} particles, only {supply} exist"
                    ),
                );
            }
        }
        Verdict::pass(Axiom::Q9)
    }

    fn check_q10(&self) -> Verdict {
        for pair in self.relation.pairs() {
            let holds_fermions = pair
                .family
                .species_present()
                .any(|id| self.universe.kind_of(id) == Some(Kind::Fermion));
            let qc = pair.family.qc();
            if holds_fermions && qc > 1 {
                return Verdict::fail(
                    Axiom::Q10,
                    format!(
                        "state {}: fermionic family has quasi-cardinal {qc} > 1",
                        pair.state
                    ),
                );
            }
        }
        Verdict::pass(Axiom::Q10)
    }

    /// Coarse-grains the relation over energy bins: each bin is paired with
    /// the union of the families of its states, so bin occupation is the sum
    /// of state occupations. The bins must cover every state.
    pub fn coarse_relation(&self, bins: &EnergyBinning) -> Result<CoarseRelation, SystemError> {
        for bin in bins.bins() {
            for state in &bin.states {
                if !self.states.contains(state) {
                    return Err(SystemError::Structure(format!(
                        "energy bin {} refers to unknown state {state}",
                        bin.label
                    )));
                }
            }
        }
        for state in self.states.iter() {
            if bins.bin_of(&state.id).is_none() {
                return Err(SystemError::BinningIncomplete(state.id.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(bins.len());
        for bin in bins.bins() {
            let mut occupancy = Qset::empty();
            for state in &bin.states {
                if let Some(family) = self.relation.family_of(state) {
                    occupancy = occupancy.merge(family)?;
                }
            }
            pairs.push(CoarsePair {
                label: bin.label.clone(),
                energy: bin.energy,
                states: bin.k(),
                occupancy,
            });
        }
        Ok(CoarseRelation { pairs })
    }
}

/// One bin of a coarse-grained relation: the union family over the bin's
/// states.
#[derive(Debug, Clone, PartialEq)]
pub struct CoarsePair {
    pub label: String,
    pub energy: f64,
    /// Number of states in the bin.
    pub states: u64,
    pub occupancy: Qset,
}

impl CoarsePair {
    pub fn occupation(&self) -> u64 {
        self.occupancy.qc()
    }
}

/// The relation induced over energy bins.
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseRelation {
    pairs: Vec<CoarsePair>,
}

impl CoarseRelation {
    pub fn pairs(&self) -> &[CoarsePair] {
        &self.pairs
    }

    pub fn occupations(&self) -> Vec<u64> {
        self.pairs.iter().map(CoarsePair::occupation).collect()
    }
}
