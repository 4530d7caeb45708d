//! Finite quasi-set kernel: collections whose micro-level members carry no identity.
//!
//! The kernel distinguishes two sorts of atoms. *m-atoms* model elementary
//! particles: the equality predicate is not defined for them, only the
//! indistinguishability relation `≡` (same species). *M-atoms* are ordinary
//! labelled urelements with classical identity. A [`Qset`] may contain both,
//! plus nested qsets, and carries a quasi-cardinal `qc` that counts members
//! without ever naming them.
//!
//! Because the only observable facts about m-atom content are species tags
//! and counts, the kernel stores the micro part of a qset as a map from
//! species to multiplicity — the quotient under `≡`, with multiplicities.
//! Permutation invariance is therefore structural: exchanging an m-atom for
//! an indistinguishable one yields the very same value, and two qsets related
//! by weak extensionality serialize to identical bytes.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here is safe to share across threads.

mod collection;
#[cfg(test)]
mod tests;
mod universe;

pub use collection::{MElement, PowerQc, Qset, QsetBuilder};
pub use universe::{ExtRef, Kind, Label, SpeciesId, Universe, UniverseBuilder};

use thiserror::Error;

/// Maximum nesting depth of qsets inside qsets. Deep towers of collections
/// are not needed by any supported model and a hard cap keeps structural
/// recursion trivially total.
pub const MAX_NESTING_DEPTH: usize = 8;

/// Default exponent cap for [`Qset::power_qc`], so that `2^qc` stays inside
/// machine integers.
pub const DEFAULT_EXPONENT_LIMIT: u32 = 62;

/// Default cap on the number of descriptors materialized by
/// [`Qset::sub_qsets_of_card`].
pub const DEFAULT_CATALOG_LIMIT: u64 = 1_000_000;

/// Errors raised by kernel operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QsetError {
    /// A reference or qset does not belong to the universe it was used with.
    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    /// Equality was requested for m-atom content, where it is not defined.
    #[error("identity is not defined for m-atom content")]
    IdentityUndefined,

    /// A requested sub-qset cardinal exceeds the quasi-cardinal available.
    #[error("cardinal {requested} out of range: quasi-cardinal is {available}")]
    CardinalOutOfRange { requested: u64, available: u64 },

    /// A configured size or exponent limit would be exceeded.
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    /// The operation is only defined for pure qsets (m-atoms only).
    #[error("operation requires pure qsets")]
    PurityRequired,

    /// The two elements are not indistinguishable.
    #[error("elements are not indistinguishable")]
    NotIndistinguishable,

    /// The element does not occur in the qset.
    #[error("element is not a member of the qset")]
    NotMember,

    /// The operation requires an m-atom occurrence.
    #[error("operation requires an m-atom occurrence")]
    MAtomRequired,

    /// Qset nesting exceeded [`MAX_NESTING_DEPTH`].
    #[error("qset nesting depth {0} exceeds the supported maximum")]
    DepthExceeded(usize),

    /// An identifier contains characters outside `[A-Za-z0-9_+-]`.
    #[error("invalid identifier {0:?}")]
    InvalidIdentifier(String),

    /// A species or label was declared twice in one universe.
    #[error("duplicate declaration of {0:?}")]
    DuplicateDeclaration(String),

    /// A count or quasi-cardinal overflowed machine integers.
    #[error("count arithmetic overflowed")]
    Overflow,
}

/// Checks the identifier charset shared by species ids, M-atom labels and
/// state ids: non-empty, `[A-Za-z0-9_+-]` only. Keeping identifiers free of
/// separator characters makes the canonical serialization injective.
pub(crate) fn validate_identifier(s: &str) -> Result<(), QsetError> {
    if s.is_empty()
        || !s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '+' | '-'))
    {
        return Err(QsetError::InvalidIdentifier(s.to_string()));
    }
    Ok(())
}
