//! Executable models of collections of indistinguishable particles, and the
//! quantum statistics they generate.
//!
//! The crate has four layers:
//!
//! - [`qset`] — a finite kernel of quasi-set theory: collections whose
//!   micro-level members are counted but never named, with
//!   indistinguishability in place of identity, quasi-cardinals, weak pairs,
//!   separation, power-qset bookkeeping and the exchange theorem.
//! - [`system`] — quantum particle systems `⟨P, 𝒫, F, S, R⟩`: particles
//!   paired with quantum states through a quasi-relation, validated against
//!   ten structural axioms (finiteness, purity, supply accounting, state
//!   disjointness, the exclusion principle, ...), with sodium and helium
//!   presets and energy-bin coarse-graining.
//! - [`stats`] — exact occupation combinatorics: enumerate and count the
//!   ways of distributing indistinguishable bosons or fermions over quantum
//!   states, with arbitrary-precision counts.
//! - [`maxent`] — the entropy-maximization route from those counts to the
//!   Fermi-Dirac and Bose-Einstein distributions: Stirling objective,
//!   stationarity conditions, and a Lagrange-parameter solver for particle
//!   number and energy constraints.
//!
//! [`format`], [`report`] and [`cli`] provide the text file formats and the
//! command-line front end; see the `examples/` directory for runnable tours
//! of each capability.

pub mod cli;
pub mod format;
pub mod maxent;
pub mod qset;
pub mod report;
pub mod stats;
pub mod system;

pub use qset::{ExtRef, Kind, Label, PowerQc, Qset, QsetError, SpeciesId, Universe};
pub use system::{
    Axiom, EnergyBin, EnergyBinning, ParticleSystem, QuasiRelation, RelationPair, State, StateId,
    StateSet, SystemError, Verdict,
};
pub use maxent::{
    be_occupation, fd_occupation, solve, MaxEntProblem, MaxEntSolution, SolveError, SolveOptions,
};
pub use stats::{count_bosons, count_fermions, enumerate, total_microstates, CountError, CountResult};
