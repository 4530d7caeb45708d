use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::collection::Qset;
use super::{validate_identifier, QsetError};

/// Statistics obeyed by a species: fermions are subject to the exclusion
/// principle, bosons are not. Every m-atom species is exactly one of the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Fermion,
    Boson,
}

impl Kind {
    pub fn is_fermion(self) -> bool {
        matches!(self, Kind::Fermion)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Fermion => "fermion",
            Kind::Boson => "boson",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fermion" | "fermionic" => Ok(Kind::Fermion),
            "boson" | "bosonic" => Ok(Kind::Boson),
            other => Err(format!("unknown kind {other:?} (expected fermion or boson)")),
        }
    }
}

/// Tag naming one indistinguishability class of m-atoms ("electron",
/// "photon", ...). Two m-atom occurrences are indistinguishable exactly when
/// their species ids are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpeciesId(pub(crate) String);

impl SpeciesId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl<T: Into<String>> From<T> for SpeciesId {
    fn from(value: T) -> Self {
        SpeciesId(value.into())
    }
}

impl fmt::Display for SpeciesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Name of an M-atom: a classical urelement with ordinary identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub(crate) String);

impl Label {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl<T: Into<String>> From<T> for Label {
    fn from(value: T) -> Self {
        Label(value.into())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SpeciesDecl {
    pub kind: Kind,
    pub count: u64,
}

/// The declared, finite population every qset draws from: how many m-atoms of
/// each species exist, plus the available M-atom labels.
///
/// Every qset in scope is a sub-collection of exactly one universe; the
/// kernel operations that need ambient context take the universe explicitly
/// and reject references to undeclared content with
/// [`QsetError::UniverseMismatch`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    species: BTreeMap<SpeciesId, SpeciesDecl>,
    labels: BTreeSet<Label>,
}

/// Accumulates species and label declarations for a [`Universe`].
#[derive(Debug, Default)]
pub struct UniverseBuilder {
    species: Vec<(SpeciesId, Kind, u64)>,
    labels: Vec<Label>,
}

impl UniverseBuilder {
    pub fn species(mut self, id: impl Into<SpeciesId>, kind: Kind, count: u64) -> Self {
        self.species.push((id.into(), kind, count));
        self
    }

    pub fn label(mut self, label: impl Into<Label>) -> Self {
        self.labels.push(label.into());
        self
    }

    pub fn build(self) -> Result<Universe, QsetError> {
        let mut species = BTreeMap::new();
        for (id, kind, count) in self.species {
            validate_identifier(id.as_str())?;
            if species.insert(id.clone(), SpeciesDecl { kind, count }).is_some() {
                return Err(QsetError::DuplicateDeclaration(id.0));
            }
        }
        let mut labels = BTreeSet::new();
        for label in self.labels {
            validate_identifier(label.as_str())?;
            if !labels.insert(label.clone()) {
                return Err(QsetError::DuplicateDeclaration(label.0));
            }
        }
        let mut total: u64 = 0;
        for decl in species.values() {
            total = total.checked_add(decl.count).ok_or(QsetError::Overflow)?;
        }
        Ok(Universe { species, labels })
    }
}

impl Universe {
    pub fn builder() -> UniverseBuilder {
        UniverseBuilder::default()
    }

    /// Number of m-atoms of `id` declared in this universe, if declared.
    pub fn species_count(&self, id: &SpeciesId) -> Option<u64> {
        self.species.get(id).map(|d| d.count)
    }

    pub fn kind_of(&self, id: &SpeciesId) -> Option<Kind> {
        self.species.get(id).map(|d| d.kind)
    }

    /// Every species is exactly one of fermion or boson, and the verdict is
    /// shared by all occurrences of the species, so indistinguishable
    /// m-atoms always classify alike.
    pub fn classify(&self, id: &SpeciesId) -> Result<Kind, QsetError> {
        self.kind_of(id)
            .ok_or_else(|| QsetError::UniverseMismatch(format!("species {id} not declared")))
    }

    pub fn has_label(&self, label: &Label) -> bool {
        self.labels.contains(label)
    }

    pub fn species_ids(&self) -> impl Iterator<Item = &SpeciesId> {
        self.species.keys()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.labels.iter()
    }

    /// Total number of m-atoms across all species.
    pub fn total_m_atoms(&self) -> u64 {
        self.species.values().map(|d| d.count).sum()
    }

    /// The qset holding the whole declared population: every m-atom of every
    /// species and every M-atom label.
    pub fn full_qset(&self) -> Qset {
        let mut b = Qset::builder();
        for (id, decl) in &self.species {
            if decl.count > 0 {
                b = b.particles(id.clone(), decl.count);
            }
        }
        for label in &self.labels {
            b = b.label(label.clone());
        }
        b.build().expect("universe content is always a valid qset")
    }

    /// The pure qset of every declared m-atom, labels excluded.
    pub fn population(&self) -> Qset {
        let mut b = Qset::builder();
        for (id, decl) in &self.species {
            if decl.count > 0 {
                b = b.particles(id.clone(), decl.count);
            }
        }
        b.build().expect("universe content is always a valid qset")
    }

    /// Checks that a reference points at declared content. For m-atom
    /// occurrences the species must be declared with at least one atom.
    pub fn check_ref(&self, r: &ExtRef) -> Result<(), QsetError> {
        match r {
            ExtRef::Particle(id) => match self.species_count(id) {
                None => Err(QsetError::UniverseMismatch(format!(
                    "species {id} not declared"
                ))),
                Some(0) => Err(QsetError::UniverseMismatch(format!(
                    "species {id} has no occurrences"
                ))),
                Some(_) => Ok(()),
            },
            ExtRef::Atom(label) => {
                if self.has_label(label) {
                    Ok(())
                } else {
                    Err(QsetError::UniverseMismatch(format!(
                        "label {label} not declared"
                    )))
                }
            }
            ExtRef::Collection(q) => self.check_qset(q),
        }
    }

    /// Checks that a qset is a sub-collection of this universe, recursively:
    /// per-species counts within the declared population and every label
    /// declared.
    pub fn check_qset(&self, q: &Qset) -> Result<(), QsetError> {
        for (id, count) in q.species_counts() {
            match self.species_count(id) {
                None => {
                    return Err(QsetError::UniverseMismatch(format!(
                        "species {id} not declared"
                    )))
                }
                Some(available) if count > available => {
                    return Err(QsetError::UniverseMismatch(format!(
                        "species {id}: count {count} exceeds declared {available}"
                    )))
                }
                Some(_) => {}
            }
        }
        for label in q.label_elements() {
            if !self.has_label(label) {
                return Err(QsetError::UniverseMismatch(format!(
                    "label {label} not declared"
                )));
            }
        }
        for sub in q.sub_elements() {
            self.check_qset(sub)?;
        }
        Ok(())
    }

    /// The indistinguishability relation `≡`. Two m-atom occurrences are
    /// indistinguishable iff they share a species; M-atoms iff they are the
    /// same label; qsets iff they are weak-extensionally equivalent. Across
    /// sorts the relation is false. It is an equivalence relation.
    pub fn indist(&self, a: &ExtRef, b: &ExtRef) -> Result<bool, QsetError> {
        self.check_ref(a)?;
        self.check_ref(b)?;
        Ok(match (a, b) {
            (ExtRef::Particle(x), ExtRef::Particle(y)) => x == y,
            (ExtRef::Atom(x), ExtRef::Atom(y)) => x == y,
            (ExtRef::Collection(x), ExtRef::Collection(y)) => x.weak_ext_equiv(y),
            _ => false,
        })
    }

    /// The weak pair `[a, b]`: every element of the universe
    /// indistinguishable from `a` or from `b`. For an m-atom occurrence this
    /// pulls in the whole species class, so the quasi-cardinal of the result
    /// can exceed two; for M-atoms the classical pair is recovered.
    pub fn weak_pair(&self, a: &ExtRef, b: &ExtRef) -> Result<Qset, QsetError> {
        self.check_ref(a)?;
        self.check_ref(b)?;
        let mut builder = Qset::builder();
        for r in [a, b] {
            builder = match r {
                ExtRef::Particle(id) => {
                    let count = self.species_count(id).unwrap_or(0);
                    builder.particles_class(id.clone(), count)
                }
                ExtRef::Atom(label) => builder.label(label.clone()),
                ExtRef::Collection(q) => builder.nested(q.clone()),
            };
        }
        builder.build()
    }

    /// A strong singleton of the m-atom occurrence `a`: a sub-qset of the
    /// class `[a]` with quasi-cardinal one. One exists for every occurrence;
    /// whether two strong singletons of indistinguishable atoms are
    /// "distinct" is not answerable here, and asking for identity between
    /// them raises [`QsetError::IdentityUndefined`].
    pub fn strong_singleton(&self, a: &ExtRef) -> Result<Qset, QsetError> {
        let ExtRef::Particle(id) = a else {
            return Err(QsetError::MAtomRequired);
        };
        self.check_ref(a)?;
        Qset::builder().particles(id.clone(), 1).build()
    }

    /// Exchange an m-atom of `x` for an indistinguishable one: removes a
    /// strong singleton of `z` and unions a strong singleton of `w`. The
    /// result is always weak-extensionally equivalent to `x` — nothing
    /// observable has happened.
    pub fn ip_exchange(&self, x: &Qset, z: &ExtRef, w: &ExtRef) -> Result<Qset, QsetError> {
        self.check_qset(x)?;
        let (ExtRef::Particle(zs), ExtRef::Particle(ws)) = (z, w) else {
            return Err(QsetError::MAtomRequired);
        };
        self.check_ref(z)?;
        self.check_ref(w)?;
        if zs != ws {
            return Err(QsetError::NotIndistinguishable);
        }
        if x.species_count(zs) == 0 {
            return Err(QsetError::NotMember);
        }
        let removed = self.strong_singleton(z)?;
        let added = self.strong_singleton(w)?;
        x.minus(&removed)?.merge(&added)
    }
}

/// A reference to one element of the ambient domain: an m-atom occurrence
/// (species only — deliberately no index), an M-atom label, or a qset.
#[derive(Debug, Clone)]
pub enum ExtRef {
    Particle(SpeciesId),
    Atom(Label),
    Collection(Qset),
}

impl ExtRef {
    pub fn particle(id: impl Into<SpeciesId>) -> Self {
        ExtRef::Particle(id.into())
    }

    pub fn label(label: impl Into<Label>) -> Self {
        ExtRef::Atom(label.into())
    }

    pub fn collection(q: Qset) -> Self {
        ExtRef::Collection(q)
    }

    pub fn is_particle(&self) -> bool {
        matches!(self, ExtRef::Particle(_))
    }

    pub fn is_label(&self) -> bool {
        matches!(self, ExtRef::Atom(_))
    }

    /// Extensional equality, the partial identity of the kernel. It is
    /// defined for M-atoms and for qsets free of m-atom content; anything
    /// touching an m-atom occurrence raises
    /// [`QsetError::IdentityUndefined`].
    pub fn identical(&self, other: &ExtRef) -> Result<bool, QsetError> {
        if self.involves_m_atoms() || other.involves_m_atoms() {
            return Err(QsetError::IdentityUndefined);
        }
        Ok(match (self, other) {
            (ExtRef::Atom(a), ExtRef::Atom(b)) => a == b,
            (ExtRef::Collection(a), ExtRef::Collection(b)) => a == b,
            _ => false,
        })
    }

    fn involves_m_atoms(&self) -> bool {
        match self {
            ExtRef::Particle(_) => true,
            ExtRef::Atom(_) => false,
            ExtRef::Collection(q) => q.has_m_atoms_transitively(),
        }
    }
}
