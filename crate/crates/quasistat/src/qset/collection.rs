use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::universe::{ExtRef, Label, SpeciesId};
use super::{
    validate_identifier, QsetError, DEFAULT_CATALOG_LIMIT, DEFAULT_EXPONENT_LIMIT,
    MAX_NESTING_DEPTH,
};

/// An element of the classical part of a qset: an M-atom label or a nested
/// qset. Nested qsets that are weak-extensionally equivalent are the same
/// element, which the canonical representation makes structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum MElement {
    Label(Label),
    Sub(Qset),
}

/// An extensional, identity-free collection over a declared universe.
///
/// The micro part is stored as species → multiplicity (no per-atom identity
/// exists to store); the classical part is a set of labels and nested qsets.
/// Zero multiplicities are normalized away, so structural equality of two
/// `Qset` values coincides with weak-extensional equivalence and the
/// canonical serialization is injective on equivalence classes.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Qset {
    m_part: BTreeMap<SpeciesId, u64>,
    m_elements: BTreeSet<MElement>,
}

/// Result of [`Qset::power_qc`]: what the power-qset axiom declares versus
/// how many observationally distinct sub-qset descriptors exist. The two
/// differ as soon as some species count is at least two, because the theory
/// cannot tell "which" atoms a sub-collection took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerQc {
    /// `2^qc(x)`, the declared quasi-cardinal of the power qset.
    pub declared_qc: u128,
    /// Number of distinct sub-qset descriptors: the product over species of
    /// `count + 1`, times `2^|M-part|`.
    pub distinct_descriptors: u128,
}

/// Accumulates content for a [`Qset`]. Counts added via [`particles`] are
/// additive; [`particles_class`] takes the maximum instead, which is the
/// right union semantics when inserting whole indistinguishability classes.
///
/// [`particles`]: QsetBuilder::particles
/// [`particles_class`]: QsetBuilder::particles_class
#[derive(Debug, Default)]
pub struct QsetBuilder {
    m_part: BTreeMap<SpeciesId, u64>,
    m_elements: BTreeSet<MElement>,
    error: Option<QsetError>,
}

impl QsetBuilder {
    pub fn particles(mut self, id: impl Into<SpeciesId>, count: u64) -> Self {
        if self.error.is_some() {
            return self;
        }
        let entry = self.m_part.entry(id.into()).or_insert(0);
        match entry.checked_add(count) {
            Some(v) => *entry = v,
            None => self.error = Some(QsetError::Overflow),
        }
        self
    }

    pub fn particles_class(mut self, id: impl Into<SpeciesId>, count: u64) -> Self {
        if self.error.is_some() {
            return self;
        }
        let entry = self.m_part.entry(id.into()).or_insert(0);
        *entry = (*entry).max(count);
        self
    }

    pub fn label(mut self, label: impl Into<Label>) -> Self {
        self.m_elements.insert(MElement::Label(label.into()));
        self
    }

    pub fn nested(mut self, q: Qset) -> Self {
        self.m_elements.insert(MElement::Sub(q));
        self
    }

    pub fn build(self) -> Result<Qset, QsetError> {
        if let Some(e) = self.error {
            return Err(e);
        }
        let mut m_part = self.m_part;
        m_part.retain(|_, count| *count > 0);
        for id in m_part.keys() {
            validate_identifier(id.as_str())?;
        }
        for element in &self.m_elements {
            if let MElement::Label(label) = element {
                validate_identifier(label.as_str())?;
            }
        }
        let q = Qset {
            m_part,
            m_elements: self.m_elements,
        };
        let depth = q.depth();
        if depth > MAX_NESTING_DEPTH {
            return Err(QsetError::DepthExceeded(depth));
        }
        q.qc_checked()?;
        Ok(q)
    }
}

impl Qset {
    pub fn builder() -> QsetBuilder {
        QsetBuilder::default()
    }

    /// The empty qset; its quasi-cardinal is zero.
    pub fn empty() -> Self {
        Qset::default()
    }

    pub fn is_empty(&self) -> bool {
        self.m_part.is_empty() && self.m_elements.is_empty()
    }

    /// A qset is pure when it holds m-atoms only.
    pub fn is_pure(&self) -> bool {
        self.m_elements.is_empty()
    }

    /// The quasi-cardinal: total m-atom multiplicity plus the number of
    /// classical elements. For qsets free of m-atoms this is the ordinary
    /// cardinality.
    pub fn qc(&self) -> u64 {
        self.qc_checked().expect("quasi-cardinal overflow")
    }

    fn qc_checked(&self) -> Result<u64, QsetError> {
        let mut total: u64 = self.m_elements.len() as u64;
        for count in self.m_part.values() {
            total = total.checked_add(*count).ok_or(QsetError::Overflow)?;
        }
        Ok(total)
    }

    pub fn species_count(&self, id: &SpeciesId) -> u64 {
        self.m_part.get(id).copied().unwrap_or(0)
    }

    pub fn species_counts(&self) -> impl Iterator<Item = (&SpeciesId, u64)> {
        self.m_part.iter().map(|(id, count)| (id, *count))
    }

    /// Species present with non-zero multiplicity.
    pub fn species_present(&self) -> impl Iterator<Item = &SpeciesId> {
        self.m_part.keys()
    }

    pub fn m_elements(&self) -> impl Iterator<Item = &MElement> {
        self.m_elements.iter()
    }

    pub fn label_elements(&self) -> impl Iterator<Item = &Label> {
        self.m_elements.iter().filter_map(|e| match e {
            MElement::Label(l) => Some(l),
            MElement::Sub(_) => None,
        })
    }

    pub fn sub_elements(&self) -> impl Iterator<Item = &Qset> {
        self.m_elements.iter().filter_map(|e| match e {
            MElement::Sub(q) => Some(q),
            MElement::Label(_) => None,
        })
    }

    pub fn has_label(&self, label: &Label) -> bool {
        self.m_elements.contains(&MElement::Label(label.clone()))
    }

    /// True if any m-atom occurs in this qset or in any nested qset.
    pub fn has_m_atoms_transitively(&self) -> bool {
        !self.m_part.is_empty() || self.sub_elements().any(Qset::has_m_atoms_transitively)
    }

    /// Nesting depth: one for a flat qset, growing with each level of nested
    /// collections.
    pub fn depth(&self) -> usize {
        1 + self
            .sub_elements()
            .map(Qset::depth)
            .max()
            .unwrap_or(0)
    }

    /// Sub-qset test: per-species multiplicities bounded by `other`'s and
    /// classical elements contained in `other`'s.
    pub fn is_sub_of(&self, other: &Qset) -> bool {
        self.m_part
            .iter()
            .all(|(id, count)| *count <= other.species_count(id))
            && self.m_elements.is_subset(&other.m_elements)
    }

    /// Count-wise disjoint union: multiplicities add, classical elements
    /// union. This is the qset union under the reading that the operands
    /// draw on disjoint parts of the population.
    pub fn merge(&self, other: &Qset) -> Result<Qset, QsetError> {
        let mut m_part = self.m_part.clone();
        for (id, count) in &other.m_part {
            let entry = m_part.entry(id.clone()).or_insert(0);
            *entry = entry.checked_add(*count).ok_or(QsetError::Overflow)?;
        }
        let mut m_elements = self.m_elements.clone();
        m_elements.extend(other.m_elements.iter().cloned());
        let q = Qset { m_part, m_elements };
        q.qc_checked()?;
        let depth = q.depth();
        if depth > MAX_NESTING_DEPTH {
            return Err(QsetError::DepthExceeded(depth));
        }
        Ok(q)
    }

    /// Qset difference; `other` must be a sub-qset of `self`.
    pub fn minus(&self, other: &Qset) -> Result<Qset, QsetError> {
        if !other.is_sub_of(self) {
            return Err(QsetError::NotMember);
        }
        let mut m_part = self.m_part.clone();
        for (id, count) in &other.m_part {
            let entry = m_part.get_mut(id).expect("subset checked");
            *entry -= count;
        }
        m_part.retain(|_, count| *count > 0);
        let m_elements = self
            .m_elements
            .difference(&other.m_elements)
            .cloned()
            .collect();
        Ok(Qset { m_part, m_elements })
    }

    /// The separation schema: the sub-qset of elements satisfying `pred`.
    ///
    /// The predicate sees only what the theory can observe: an m-atom
    /// occurrence exposes its species alone, so selection is by whole
    /// species class. A predicate that asks for identity on m-atom content
    /// (via [`ExtRef::identical`]) propagates
    /// [`QsetError::IdentityUndefined`].
    pub fn separate<F>(&self, mut pred: F) -> Result<Qset, QsetError>
    where
        F: FnMut(&ExtRef) -> Result<bool, QsetError>,
    {
        let mut m_part = BTreeMap::new();
        for (id, count) in &self.m_part {
            if pred(&ExtRef::Particle(id.clone()))? {
                m_part.insert(id.clone(), *count);
            }
        }
        let mut m_elements = BTreeSet::new();
        for element in &self.m_elements {
            let r = match element {
                MElement::Label(l) => ExtRef::Atom(l.clone()),
                MElement::Sub(q) => ExtRef::Collection(q.clone()),
            };
            if pred(&r)? {
                m_elements.insert(element.clone());
            }
        }
        Ok(Qset { m_part, m_elements })
    }

    /// Similarity: every element of `self` is indistinguishable from every
    /// element of `other`. For pure qsets that means a single shared species
    /// (or an empty side). Applied literally, a pure qset with two species
    /// is not similar even to itself.
    pub fn similar(&self, other: &Qset) -> Result<bool, QsetError> {
        if !self.is_pure() || !other.is_pure() {
            return Err(QsetError::PurityRequired);
        }
        if self.m_part.is_empty() || other.m_part.is_empty() {
            return Ok(true);
        }
        Ok(self.m_part.len() == 1
            && other.m_part.len() == 1
            && self.m_part.keys().eq(other.m_part.keys()))
    }

    /// Q-similarity: similar with equal quasi-cardinals.
    pub fn qsimilar(&self, other: &Qset) -> Result<bool, QsetError> {
        Ok(self.similar(other)? && self.qc() == other.qc())
    }

    /// Weak extensionality: same quantity of elements of the same sort.
    /// In the canonical representation this is structural equality, and it
    /// is an equivalence relation by construction.
    pub fn weak_ext_equiv(&self, other: &Qset) -> bool {
        self == other
    }

    /// All sub-qset descriptors with quasi-cardinal `beta`, distinct up to
    /// weak extensionality, in a fixed order (species counts descending
    /// lexicographically, then classical subsets). The catalog is non-empty
    /// for every `beta ≤ qc`.
    pub fn sub_qsets_of_card(&self, beta: u64) -> Result<Vec<Qset>, QsetError> {
        self.sub_qsets_of_card_limited(beta, DEFAULT_CATALOG_LIMIT)
    }

    pub fn sub_qsets_of_card_limited(
        &self,
        beta: u64,
        limit: u64,
    ) -> Result<Vec<Qset>, QsetError> {
        let qc = self.qc();
        if beta > qc {
            return Err(QsetError::CardinalOutOfRange {
                requested: beta,
                available: qc,
            });
        }
        let species: Vec<(SpeciesId, u64)> = self
            .m_part
            .iter()
            .map(|(id, count)| (id.clone(), *count))
            .collect();
        let classical: Vec<MElement> = self.m_elements.iter().cloned().collect();
        // Suffix capacities let the recursion prune branches that can no
        // longer reach the target cardinal.
        let mut suffix_cap = vec![0u64; species.len() + 1];
        for i in (0..species.len()).rev() {
            suffix_cap[i] = suffix_cap[i + 1] + species[i].1;
        }
        let mut walk = CatalogWalk {
            species,
            suffix_cap,
            classical,
            limit,
            counts: Vec::new(),
            chosen: Vec::new(),
            out: Vec::new(),
        };
        walk.counts = vec![0u64; walk.species.len()];
        walk.pick_species(0, beta)?;
        Ok(walk.out)
    }

    /// Power-qset bookkeeping with the default exponent cap.
    pub fn power_qc(&self) -> Result<PowerQc, QsetError> {
        self.power_qc_with_limit(DEFAULT_EXPONENT_LIMIT)
    }

    /// Both the declared quasi-cardinal of the power qset (`2^qc`) and the
    /// number of observationally distinct sub-qset descriptors. The kernel
    /// never materializes the declared, possibly indistinguishable copies.
    pub fn power_qc_with_limit(&self, limit: u32) -> Result<PowerQc, QsetError> {
        let qc = self.qc();
        let limit = limit.min(127);
        if qc > u64::from(limit) {
            return Err(QsetError::LimitExceeded(format!(
                "quasi-cardinal {qc} exceeds exponent limit {limit}"
            )));
        }
        let declared_qc = 1u128 << qc;
        let mut distinct: u128 = 1u128
            .checked_shl(self.m_elements.len() as u32)
            .ok_or_else(|| QsetError::LimitExceeded("classical part too large".into()))?;
        for count in self.m_part.values() {
            distinct = distinct
                .checked_mul(u128::from(*count) + 1)
                .ok_or_else(|| QsetError::LimitExceeded("descriptor count overflow".into()))?;
        }
        Ok(PowerQc {
            declared_qc,
            distinct_descriptors: distinct,
        })
    }

    /// Canonical serialization: sorted species counts, then sorted labels,
    /// then nested qsets in canonical order. Two qsets serialize to the same
    /// bytes exactly when they are weak-extensionally equivalent.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        self.to_string().into_bytes()
    }
}

/// Depth-first enumeration state for [`Qset::sub_qsets_of_card`]: species
/// counts are chosen descending (keeping the catalog in descending-lex
/// order), then classical elements combination-wise.
struct CatalogWalk {
    species: Vec<(SpeciesId, u64)>,
    suffix_cap: Vec<u64>,
    classical: Vec<MElement>,
    limit: u64,
    counts: Vec<u64>,
    chosen: Vec<usize>,
    out: Vec<Qset>,
}

impl CatalogWalk {
    fn pick_species(&mut self, idx: usize, remaining: u64) -> Result<(), QsetError> {
        if idx == self.species.len() {
            if remaining > self.classical.len() as u64 {
                return Ok(());
            }
            return self.pick_classical(0, remaining);
        }
        let cap = self.species[idx].1.min(remaining);
        let rest = self.suffix_cap[idx + 1] + self.classical.len() as u64;
        // The invariant remaining <= suffix_cap[idx] + classical capacity
        // holds from the root's beta <= qc check, so lo <= cap.
        let lo = remaining.saturating_sub(rest);
        let mut take = cap;
        loop {
            self.counts[idx] = take;
            self.pick_species(idx + 1, remaining - take)?;
            if take == lo {
                break;
            }
            take -= 1;
        }
        self.counts[idx] = 0;
        Ok(())
    }

    fn pick_classical(&mut self, start: usize, remaining: u64) -> Result<(), QsetError> {
        if remaining == 0 {
            if self.out.len() as u64 >= self.limit {
                return Err(QsetError::LimitExceeded(format!(
                    "sub-qset catalog exceeds {} descriptors",
                    self.limit
                )));
            }
            let m_part: BTreeMap<SpeciesId, u64> = self
                .species
                .iter()
                .zip(&self.counts)
                .filter(|(_, c)| **c > 0)
                .map(|((id, _), c)| (id.clone(), *c))
                .collect();
            let m_elements: BTreeSet<MElement> = self
                .chosen
                .iter()
                .map(|&i| self.classical[i].clone())
                .collect();
            self.out.push(Qset { m_part, m_elements });
            return Ok(());
        }
        if remaining > (self.classical.len() - start) as u64 {
            return Ok(());
        }
        for i in start..self.classical.len() {
            // Enough elements must remain after choosing position i.
            if remaining - 1 > (self.classical.len() - i - 1) as u64 {
                break;
            }
            self.chosen.push(i);
            self.pick_classical(i + 1, remaining - 1)?;
            self.chosen.pop();
        }
        Ok(())
    }
}

impl fmt::Display for Qset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (id, count)) in self.m_part.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}:{count}")?;
        }
        f.write_str(";")?;
        let mut first = true;
        for label in self.label_elements() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            f.write_str(label.as_str())?;
        }
        f.write_str(";")?;
        let mut first = true;
        for sub in self.sub_elements() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{sub}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Qset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
