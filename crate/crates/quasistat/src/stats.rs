//! Exact occupation combinatorics for indistinguishable particles.
//!
//! A configuration of `nu` particles over `k` quantum states is an
//! occupation vector: `k` non-negative counts summing to `nu`, restricted to
//! zeros and ones for fermions. Because collections of indistinguishable
//! particles with equal quasi-cardinality are equivalent, the vector of
//! per-state counts is the whole configuration — there is nothing else to
//! enumerate. Counts are computed exactly with big integers; the closed
//! forms are evaluated as products of binomial steps, never as raw
//! factorials.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::qset::Kind;

/// Default cap on the number of vectors [`enumerate`] will materialize.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CountError {
    /// The enumeration would produce more vectors than the configured limit.
    #[error("enumeration of {expected} vectors exceeds limit {limit}")]
    LimitExceeded { expected: BigUint, limit: u64 },

    /// Occupation problems need at least one state.
    #[error("at least one quantum state is required")]
    NoStates,
}

/// An exact configuration count together with the statistics that produced
/// it. Displays as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountResult {
    #[serde(with = "biguint_decimal")]
    pub value: BigUint,
    pub formula: Kind,
}

mod biguint_decimal {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }
}

impl fmt::Display for CountResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Exact binomial coefficient, multiplicative form: each partial product
/// `C(n-r+i, i)` is an integer, so the division is always exact.
fn binomial(n: u128, r: u128) -> BigUint {
    if r > n {
        return BigUint::ZERO;
    }
    let r = r.min(n - r);
    let mut acc = BigUint::from(1u32);
    for i in 1..=r {
        acc = acc * BigUint::from(n - r + i) / BigUint::from(i);
    }
    acc
}

/// Number of ways to distribute `nu` indistinguishable bosons over `k`
/// states: `(k + nu - 1)! / ((k - 1)! nu!)`.
pub fn count_bosons(nu: u64, k: u64) -> Result<CountResult, CountError> {
    if k == 0 {
        return Err(CountError::NoStates);
    }
    Ok(CountResult {
        value: binomial(u128::from(k) + u128::from(nu) - 1, u128::from(nu)),
        formula: Kind::Boson,
    })
}

/// Number of ways to distribute `nu` indistinguishable fermions over `k`
/// states: `k! / ((k - nu)! nu!)`, which is zero once `nu > k` because no
/// state may hold more than one fermion.
pub fn count_fermions(nu: u64, k: u64) -> Result<CountResult, CountError> {
    if k == 0 {
        return Err(CountError::NoStates);
    }
    Ok(CountResult {
        value: binomial(u128::from(k), u128::from(nu)),
        formula: Kind::Fermion,
    })
}

pub fn count(nu: u64, k: u64, kind: Kind) -> Result<CountResult, CountError> {
    match kind {
        Kind::Boson => count_bosons(nu, k),
        Kind::Fermion => count_fermions(nu, k),
    }
}

/// Total number of microstates across energy bins: the product of per-bin
/// counts over `(nu_i, k_i)` pairs. The empty product is one.
pub fn total_microstates(bins: &[(u64, u64)], kind: Kind) -> Result<CountResult, CountError> {
    let mut value = BigUint::from(1u32);
    for &(nu, k) in bins {
        value *= count(nu, k, kind)?.value;
    }
    Ok(CountResult { value, formula: kind })
}

/// Streaming enumeration of occupation vectors in descending lexicographic
/// order: `(nu, 0, …, 0)` first (or the left-packed 0/1 vector for
/// fermions), `(0, …, 0, nu)` last. A fermion request with `nu > k` yields
/// nothing.
pub fn enumerate_iter(nu: u64, k: u64, kind: Kind) -> Result<OccupationIter, CountError> {
    if k == 0 {
        return Err(CountError::NoStates);
    }
    Ok(OccupationIter::new(nu, k, kind))
}

/// Collecting wrapper around [`enumerate_iter`] guarded by
/// [`DEFAULT_ENUMERATION_LIMIT`].
pub fn enumerate(nu: u64, k: u64, kind: Kind) -> Result<Vec<Vec<u64>>, CountError> {
    enumerate_with_limit(nu, k, kind, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_with_limit(
    nu: u64,
    k: u64,
    kind: Kind,
    limit: u64,
) -> Result<Vec<Vec<u64>>, CountError> {
    let expected = count(nu, k, kind)?.value;
    enumeration_fits(&expected, k, limit)?;
    Ok(enumerate_iter(nu, k, kind)?.collect())
}

/// The limit bounds emitted cells, not just rows: a single row of a billion
/// states is as unreasonable as a billion rows.
pub fn enumeration_fits(expected_rows: &BigUint, k: u64, limit: u64) -> Result<(), CountError> {
    let cells = expected_rows * BigUint::from(k);
    if expected_rows > &BigUint::from(limit) || cells > BigUint::from(limit) {
        return Err(CountError::LimitExceeded {
            expected: expected_rows.clone(),
            limit,
        });
    }
    Ok(())
}

/// Iterator over occupation vectors in descending lexicographic order.
#[derive(Debug)]
pub struct OccupationIter {
    next: Option<Vec<u64>>,
    cap: u64,
}

impl OccupationIter {
    fn new(nu: u64, k: u64, kind: Kind) -> Self {
        let cap = match kind {
            Kind::Fermion => 1,
            Kind::Boson => u64::MAX,
        };
        // Largest vector: greedy left packing. Infeasible when nu exceeds
        // the total capacity (fermions with nu > k).
        let next = if nu <= cap.saturating_mul(k) {
            let mut first = vec![0u64; k as usize];
            let mut rest = nu;
            for slot in first.iter_mut() {
                let put = rest.min(cap);
                *slot = put;
                rest -= put;
            }
            Some(first)
        } else {
            None
        };
        OccupationIter { next, cap }
    }
}

impl Iterator for OccupationIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if successor(&mut succ, self.cap) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Advances `c` to the next vector in descending lexicographic order among
/// the vectors with the same sum and per-slot cap. Returns false at the end.
fn successor(c: &mut [u64], cap: u64) -> bool {
    let k = c.len();
    let mut suffix: u64 = 0;
    for j in (0..k.saturating_sub(1)).rev() {
        suffix += c[j + 1];
        if c[j] > 0 {
            let load = suffix + 1;
            let slots = (k - 1 - j) as u64;
            if load <= slots.saturating_mul(cap) {
                c[j] -= 1;
                let mut rest = load;
                for slot in c.iter_mut().skip(j + 1) {
                    let put = rest.min(cap);
                    *slot = put;
                    rest -= put;
                }
                return true;
            }
        }
    }
    false
}
