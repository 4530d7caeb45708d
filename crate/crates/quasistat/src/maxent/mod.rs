//! From exact microstate counts to the quantum distributions.
//!
//! For bin occupations `ν = (ν_1, …, ν_n)` over bins of `k_i` states at
//! energy `ε_i`, the most probable macrostate maximizes
//! `log I(ν) − α Σ ν_i − β Σ ν_i ε_i`, where `I` is the exact microstate
//! count of the statistics in play and `α`, `β` are Lagrange parameters
//! fixing total particle number and total energy. With Stirling's
//! approximation `log K! ≈ K (log K − 1)` applied to the bin occupation
//! factorials, the fermion objective per bin is
//!
//! ```text
//! k(log k − 1) − (k − ν)(log(k − ν) − 1) − ν(log ν − 1) − αν − βεν
//! ```
//!
//! and its stationarity condition is `log[(k − ν)/ν] = α + βε`, giving
//! `ν = k / (e^{α+βε} + 1)`.
//!
//! For bosons the count is `(k + ν − 1)! / ((k − 1)! ν!)`; expanding with
//! Stirling and absorbing the `k − 1` into `k` (valid for `k ≫ 1`, the same
//! slack the fermion form takes) gives the per-bin objective
//!
//! ```text
//! (k + ν)(log(k + ν) − 1) − k(log k − 1) − ν(log ν − 1) − αν − βεν
//! ```
//!
//! with stationarity `log[(k + ν)/ν] = α + βε` and
//! `ν = k / (e^{α+βε} − 1)`. The average per-state occupancies `ν/k` are the
//! Fermi-Dirac and Bose-Einstein distribution functions evaluated at the
//! bin energy; [`fd_occupation`] and [`be_occupation`] expose them directly.
//!
//! [`solve`] finds the Lagrange parameters meeting the constraints: damped
//! Newton iteration on the constraint residuals with closed-form Jacobian,
//! falling back to nested bisection (outer over `β`, inner over `α`, both
//! coordinates strictly monotone).

mod solver;

pub use solver::{solve, solve_with};

use serde::Serialize;
use thiserror::Error;

use crate::qset::Kind;

/// Occupancies below this make Stirling's approximation questionable; the
/// objective flags them instead of refusing to evaluate.
pub const STIRLING_OCCUPANCY_FLOOR: f64 = 10.0;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SolveError {
    /// The problem statement itself is malformed (empty bins, non-finite
    /// energies, non-positive targets, ...).
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// An occupation vector sits outside the objective's domain.
    #[error("occupation outside the objective domain: {0}")]
    DomainError(String),

    /// The Bose-Einstein form was evaluated at or past its pole
    /// (`α + βε ≤ 0`): the condensation regime, outside this model.
    #[error("bose-einstein pole at bin {bin}: exponent {offset} is not positive")]
    PoleError { bin: usize, offset: f64 },

    /// No Lagrange parameters can meet the targets.
    #[error("infeasible targets: {0}")]
    Infeasible(String),

    /// Iteration budget exhausted; carries the best iterate found.
    #[error("no convergence after {} iterations", .0.iterations)]
    NoConvergence(Box<MaxEntSolution>),
}

/// One energy bin for the occupation problem: `k` states at energy `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bin {
    pub states: u64,
    pub energy: f64,
}

impl Bin {
    pub fn new(states: u64, energy: f64) -> Self {
        Bin { states, energy }
    }
}

/// The constraint paired with the particle-number target: either a fixed
/// inverse-temperature parameter `β`, or a total-energy target that `β`
/// must be solved for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Constraint {
    Beta(f64),
    TotalEnergy(f64),
}

/// A constrained entropy-maximization problem over energy bins.
///
/// Bins are sorted by energy at construction; bins with equal energies are
/// merged (their state counts added), restoring strictly increasing
/// energies.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxEntProblem {
    kind: Kind,
    bins: Vec<Bin>,
    n_target: f64,
    constraint: Constraint,
}

impl MaxEntProblem {
    pub fn new(
        kind: Kind,
        bins: Vec<Bin>,
        n_target: f64,
        constraint: Constraint,
    ) -> Result<Self, SolveError> {
        if bins.is_empty() {
            return Err(SolveError::InvalidProblem("no energy bins".into()));
        }
        for bin in &bins {
            if bin.states == 0 {
                return Err(SolveError::InvalidProblem(
                    "every bin needs at least one state".into(),
                ));
            }
            if !bin.energy.is_finite() {
                return Err(SolveError::InvalidProblem("non-finite bin energy".into()));
            }
        }
        if !(n_target.is_finite() && n_target > 0.0) {
            return Err(SolveError::InvalidProblem(format!(
                "particle-number target must be positive, got {n_target}"
            )));
        }
        match constraint {
            Constraint::Beta(beta) if !beta.is_finite() => {
                return Err(SolveError::InvalidProblem("non-finite beta".into()))
            }
            Constraint::TotalEnergy(e) if !e.is_finite() => {
                return Err(SolveError::InvalidProblem("non-finite energy target".into()))
            }
            _ => {}
        }
        let mut sorted = bins;
        sorted.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        let mut merged: Vec<Bin> = Vec::with_capacity(sorted.len());
        for bin in sorted {
            match merged.last_mut() {
                Some(last) if last.energy == bin.energy => last.states += bin.states,
                _ => merged.push(bin),
            }
        }
        if kind == Kind::Fermion {
            let capacity: u64 = merged.iter().map(|b| b.states).sum();
            if n_target >= capacity as f64 {
                return Err(SolveError::InvalidProblem(format!(
                    "fermion target {n_target} does not fit below the {capacity} available states"
                )));
            }
        }
        Ok(MaxEntProblem {
            kind,
            bins: merged,
            n_target,
            constraint,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn bins(&self) -> &[Bin] {
        &self.bins
    }

    pub fn n_target(&self) -> f64 {
        self.n_target
    }

    pub fn constraint(&self) -> Constraint {
        self.constraint
    }
}

/// Numerical controls for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Relative tolerance on the constraint residuals.
    pub rel_tol: f64,
    /// Absolute tolerance floor.
    pub abs_floor: f64,
    pub max_iterations: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            rel_tol: 1e-8,
            abs_floor: 1e-12,
            max_iterations: 200,
        }
    }
}

/// Fitted Lagrange parameters with the bin occupations they induce.
///
/// `occupancies[i]` is the average per-state occupation of bin `i`,
/// computed directly by [`fd_occupation`]/[`be_occupation`] at the fitted
/// parameters; `occupations[i]` is `k_i` times that value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxEntSolution {
    pub alpha: f64,
    pub beta: f64,
    pub occupations: Vec<f64>,
    pub occupancies: Vec<f64>,
    /// Signed constraint misses: `Σν − N` and `Σνε − E` (zero when no
    /// energy target was posed).
    pub residual_n: f64,
    pub residual_e: f64,
    pub iterations: u32,
    pub converged: bool,
}

impl MaxEntSolution {
    pub fn total_particles(&self) -> f64 {
        self.occupations.iter().sum()
    }

    pub fn total_energy(&self, problem: &MaxEntProblem) -> f64 {
        self.occupations
            .iter()
            .zip(problem.bins())
            .map(|(nu, bin)| nu * bin.energy)
            .sum()
    }
}

/// The Fermi-Dirac distribution: average occupancy `1/(e^{α+βε} + 1)` of a
/// state at energy `ε`. Always strictly inside `(0, 1)` and strictly
/// decreasing in `ε` for `β > 0`.
pub fn fd_occupation(alpha: f64, beta: f64, energy: f64) -> f64 {
    1.0 / ((alpha + beta * energy).exp() + 1.0)
}

/// The Bose-Einstein distribution: average occupancy `1/(e^{α+βε} − 1)`,
/// defined only for positive exponent `α + βε`.
pub fn be_occupation(alpha: f64, beta: f64, energy: f64) -> Result<f64, SolveError> {
    let offset = alpha + beta * energy;
    if offset <= 0.0 {
        return Err(SolveError::PoleError { bin: 0, offset });
    }
    Ok(1.0 / offset.exp_m1())
}

/// Per-state occupancy for either statistics; boson exponents must be
/// positive.
pub(crate) fn occupancy(kind: Kind, offset: f64) -> f64 {
    match kind {
        Kind::Fermion => 1.0 / (offset.exp() + 1.0),
        Kind::Boson => 1.0 / offset.exp_m1(),
    }
}

/// `−d(occupancy)/d(offset)`, always positive: `f(1−f)` for fermions,
/// `f(1+f)` for bosons.
pub(crate) fn occupancy_slope(kind: Kind, offset: f64) -> f64 {
    let f = occupancy(kind, offset);
    match kind {
        Kind::Fermion => f * (1.0 - f),
        Kind::Boson => f * (1.0 + f),
    }
}

/// Value of the Stirling-approximated objective at a given occupation
/// vector and Lagrange parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveValue {
    pub value: f64,
    /// Set when some occupation is below [`STIRLING_OCCUPANCY_FLOOR`]:
    /// the approximation only targets large bin occupations.
    pub stirling_warning: bool,
}

fn check_domain(problem: &MaxEntProblem, nu: &[f64]) -> Result<(), SolveError> {
    if nu.len() != problem.bins.len() {
        return Err(SolveError::DomainError(format!(
            "{} occupations for {} bins",
            nu.len(),
            problem.bins.len()
        )));
    }
    for (i, (&v, bin)) in nu.iter().zip(&problem.bins).enumerate() {
        if !v.is_finite() || v <= 0.0 {
            return Err(SolveError::DomainError(format!(
                "bin {i}: occupation {v} must be positive"
            )));
        }
        if problem.kind == Kind::Fermion && v >= bin.states as f64 {
            return Err(SolveError::DomainError(format!(
                "bin {i}: fermion occupation {v} must stay below the {} states",
                bin.states
            )));
        }
    }
    Ok(())
}

/// Evaluates the entropy-with-constraints objective at interior `nu`.
pub fn objective(
    problem: &MaxEntProblem,
    nu: &[f64],
    alpha: f64,
    beta: f64,
) -> Result<ObjectiveValue, SolveError> {
    check_domain(problem, nu)?;
    let mut value = 0.0;
    let mut warning = false;
    for (&v, bin) in nu.iter().zip(&problem.bins) {
        let k = bin.states as f64;
        let entropy = match problem.kind {
            Kind::Fermion => {
                k * (k.ln() - 1.0) - (k - v) * ((k - v).ln() - 1.0) - v * (v.ln() - 1.0)
            }
            Kind::Boson => {
                (k + v) * ((k + v).ln() - 1.0) - k * (k.ln() - 1.0) - v * (v.ln() - 1.0)
            }
        };
        value += entropy - alpha * v - beta * bin.energy * v;
        if v < STIRLING_OCCUPANCY_FLOOR {
            warning = true;
        }
    }
    Ok(ObjectiveValue {
        value,
        stirling_warning: warning,
    })
}

/// Per-bin gradient of the objective: `log[(k∓ν)/ν] − (α + βε)` with the
/// upper sign for fermions. Zero exactly at the distribution-function
/// occupations.
pub fn stationarity_residual(
    problem: &MaxEntProblem,
    nu: &[f64],
    alpha: f64,
    beta: f64,
) -> Result<Vec<f64>, SolveError> {
    check_domain(problem, nu)?;
    Ok(nu
        .iter()
        .zip(&problem.bins)
        .map(|(&v, bin)| {
            let k = bin.states as f64;
            let ratio = match problem.kind {
                Kind::Fermion => (k - v) / v,
                Kind::Boson => (k + v) / v,
            };
            ratio.ln() - (alpha + beta * bin.energy)
        })
        .collect())
}
