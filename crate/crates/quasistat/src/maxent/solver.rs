use super::{
    be_occupation, fd_occupation, occupancy, occupancy_slope, Constraint, MaxEntProblem,
    MaxEntSolution, SolveError, SolveOptions,
};
use crate::qset::Kind;

/// Solves for the Lagrange parameters with default tolerances.
pub fn solve(problem: &MaxEntProblem) -> Result<MaxEntSolution, SolveError> {
    solve_with(problem, &SolveOptions::default())
}

/// Solves for the Lagrange parameters meeting the particle-number target
/// and, when posed, the total-energy target.
///
/// With `β` given, the particle count is strictly decreasing in `α`, so a
/// bracketed Newton/bisection hybrid on `α` suffices. With an energy target,
/// a damped Newton iteration runs on the two constraint residuals with the
/// closed-form Jacobian; if it stalls, the solver falls back to nested
/// bisection (outer on `β`, inner on `α`), which the same monotonicities
/// make unconditionally convergent on feasible problems.
pub fn solve_with(
    problem: &MaxEntProblem,
    opts: &SolveOptions,
) -> Result<MaxEntSolution, SolveError> {
    match problem.constraint() {
        Constraint::Beta(beta) => {
            let inner = solve_alpha(problem, beta, opts)?;
            let solution = build_solution(problem, inner.alpha, beta, inner.iterations, inner.converged, None)?;
            if solution.converged {
                Ok(solution)
            } else {
                Err(SolveError::NoConvergence(Box::new(solution)))
            }
        }
        Constraint::TotalEnergy(e_target) => solve_energy_target(problem, e_target, opts),
    }
}

struct AlphaSolve {
    alpha: f64,
    iterations: u32,
    converged: bool,
}

fn tol_n(problem: &MaxEntProblem, opts: &SolveOptions) -> f64 {
    (opts.rel_tol * problem.n_target()).max(opts.abs_floor)
}

fn tol_e(e_target: f64, opts: &SolveOptions) -> f64 {
    (opts.rel_tol * e_target.abs().max(1.0)).max(opts.abs_floor)
}

/// Smallest admissible `α` for the statistics: bosons need every exponent
/// `α + βε_i` positive, fermions have no pole.
fn pole_alpha(problem: &MaxEntProblem, beta: f64) -> Option<f64> {
    match problem.kind() {
        Kind::Fermion => None,
        Kind::Boson => problem
            .bins()
            .iter()
            .map(|b| -beta * b.energy)
            .fold(None, |acc: Option<f64>, v| {
                Some(acc.map_or(v, |a| a.max(v)))
            }),
    }
}

fn totals(problem: &MaxEntProblem, alpha: f64, beta: f64) -> (f64, f64) {
    let mut n = 0.0;
    let mut e = 0.0;
    for bin in problem.bins() {
        let nu = bin.states as f64 * occupancy(problem.kind(), alpha + beta * bin.energy);
        n += nu;
        e += nu * bin.energy;
    }
    (n, e)
}

/// Jacobian building blocks: `Σ k g`, `Σ k g ε`, `Σ k g ε²` with
/// `g = −d(occupancy)/d(offset) > 0`.
fn slope_sums(problem: &MaxEntProblem, alpha: f64, beta: f64) -> (f64, f64, f64) {
    let mut s = 0.0;
    let mut se = 0.0;
    let mut see = 0.0;
    for bin in problem.bins() {
        let g = bin.states as f64 * occupancy_slope(problem.kind(), alpha + beta * bin.energy);
        s += g;
        se += g * bin.energy;
        see += g * bin.energy * bin.energy;
    }
    (s, se, see)
}

/// Monotone solve of `N(α, β) = N_target` at fixed `β`: bracket, then
/// Newton steps safeguarded by bisection.
fn solve_alpha(
    problem: &MaxEntProblem,
    beta: f64,
    opts: &SolveOptions,
) -> Result<AlphaSolve, SolveError> {
    let n_target = problem.n_target();
    let tol = tol_n(problem, opts);
    let n_at = |alpha: f64| totals(problem, alpha, beta).0;

    let (mut lo, mut hi) = match pole_alpha(problem, beta) {
        // Bosons: the particle count blows up at the pole and vanishes far
        // from it, so a bracket always exists.
        Some(pole) => {
            let mut delta = 1.0f64;
            let mut guard = 0;
            while n_at(pole + delta) <= n_target {
                delta *= 0.5;
                guard += 1;
                if guard > 1100 {
                    return Err(SolveError::Infeasible(format!(
                        "particle target {n_target} cannot be reached before the pole"
                    )));
                }
            }
            let lo = pole + delta;
            let mut step = delta.max(1.0);
            let mut hi = pole + step;
            let mut guard = 0;
            while n_at(hi) >= n_target {
                step *= 2.0;
                hi = pole + step;
                guard += 1;
                if guard > 200 {
                    return Err(SolveError::Infeasible(format!(
                        "particle target {n_target} cannot be reached at beta {beta}"
                    )));
                }
            }
            (lo, hi)
        }
        // Fermions: counts sweep (0, Σk) over the whole real line.
        None => {
            let mut lo = -1.0f64;
            let mut step = 1.0f64;
            let mut guard = 0;
            while n_at(lo) <= n_target {
                step *= 2.0;
                lo -= step;
                guard += 1;
                if guard > 200 {
                    return Err(SolveError::Infeasible(format!(
                        "particle target {n_target} out of reach (low side)"
                    )));
                }
            }
            let mut hi = 1.0f64;
            let mut step = 1.0f64;
            let mut guard = 0;
            while n_at(hi) >= n_target {
                step *= 2.0;
                hi += step;
                guard += 1;
                if guard > 200 {
                    return Err(SolveError::Infeasible(format!(
                        "particle target {n_target} out of reach (high side)"
                    )));
                }
            }
            (lo, hi)
        }
    };

    let mut alpha = 0.5 * (lo + hi);
    for iteration in 0..opts.max_iterations {
        let n = n_at(alpha);
        let residual = n - n_target;
        if residual.abs() <= tol {
            return Ok(AlphaSolve {
                alpha,
                iterations: iteration,
                converged: true,
            });
        }
        // N decreases in alpha: too many particles means alpha is too low.
        if residual > 0.0 {
            lo = alpha;
        } else {
            hi = alpha;
        }
        let slope = -slope_sums(problem, alpha, beta).0;
        let newton = alpha - residual / slope;
        alpha = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(AlphaSolve {
        alpha,
        iterations: opts.max_iterations,
        converged: false,
    })
}

/// Continuous greedy bounds on the reachable total energy for fermions at a
/// fixed particle number: filling bins from the bottom (top) is the zero-
/// temperature limit from above (below), never attained at finite `β`.
fn fermion_energy_bounds(problem: &MaxEntProblem) -> (f64, f64) {
    let fill = |bins: &mut dyn Iterator<Item = &super::Bin>| {
        let mut remaining = problem.n_target();
        let mut energy = 0.0;
        for bin in bins {
            let take = remaining.min(bin.states as f64);
            energy += take * bin.energy;
            remaining -= take;
            if remaining <= 0.0 {
                break;
            }
        }
        energy
    };
    let low = fill(&mut problem.bins().iter());
    let high = fill(&mut problem.bins().iter().rev());
    (low, high)
}

fn solve_energy_target(
    problem: &MaxEntProblem,
    e_target: f64,
    opts: &SolveOptions,
) -> Result<MaxEntSolution, SolveError> {
    let n_target = problem.n_target();
    if problem.bins().len() < 2 {
        return Err(SolveError::Infeasible(
            "an energy target needs at least two distinct bin energies".into(),
        ));
    }
    match problem.kind() {
        Kind::Fermion => {
            let (low, high) = fermion_energy_bounds(problem);
            if e_target <= low || e_target >= high {
                return Err(SolveError::Infeasible(format!(
                    "energy target {e_target} outside the reachable open interval ({low}, {high})"
                )));
            }
        }
        Kind::Boson => {
            let per_particle = e_target / n_target;
            let bottom = problem.bins().first().expect("non-empty").energy;
            let top = problem.bins().last().expect("non-empty").energy;
            if per_particle <= bottom {
                // Forcing the whole population into the lowest bin drives
                // the exponent there to zero and past it: the condensation
                // regime, reported as the distribution's pole.
                return Err(SolveError::PoleError {
                    bin: 0,
                    offset: per_particle - bottom,
                });
            }
            if per_particle >= top {
                return Err(SolveError::Infeasible(format!(
                    "energy per particle {per_particle} at or above the highest bin energy {top}"
                )));
            }
        }
    }

    let tol_num = tol_n(problem, opts);
    let tol_en = tol_e(e_target, opts);
    let norm = |rn: f64, re: f64| (rn / tol_num).hypot(re / tol_en);

    let seed = solve_alpha(problem, 0.0, opts)?;
    let mut alpha = seed.alpha;
    let mut beta = 0.0f64;
    let mut iterations = seed.iterations;

    let mut newton_ok = true;
    for _ in 0..opts.max_iterations {
        iterations += 1;
        let (n, e) = totals(problem, alpha, beta);
        let (rn, re) = (n - n_target, e - e_target);
        if rn.abs() <= tol_num && re.abs() <= tol_en {
            return build_solution(problem, alpha, beta, iterations, true, Some(e_target));
        }
        let (s, se, see) = slope_sums(problem, alpha, beta);
        let det = s * see - se * se;
        if !det.is_finite() || det.abs() < f64::MIN_POSITIVE * 1e16 {
            newton_ok = false;
            break;
        }
        let d_alpha = (rn * see - re * se) / det;
        let d_beta = (s * re - se * rn) / det;
        let base = norm(rn, re);
        let mut lambda = 1.0f64;
        let mut accepted = false;
        while lambda >= 1e-10 {
            let (ta, tb) = (alpha + lambda * d_alpha, beta + lambda * d_beta);
            let pole_clear = pole_alpha(problem, tb).is_none_or(|pole| ta > pole);
            if pole_clear {
                let (tn, te) = totals(problem, ta, tb);
                if norm(tn - n_target, te - e_target) < base {
                    alpha = ta;
                    beta = tb;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            newton_ok = false;
            break;
        }
    }

    if !newton_ok || iterations >= opts.max_iterations {
        if let Some(solution) = nested_bisection(problem, e_target, opts)? {
            return Ok(solution);
        }
    }
    let best = build_solution(problem, alpha, beta, iterations, false, Some(e_target))?;
    Err(SolveError::NoConvergence(Box::new(best)))
}

/// Outer bisection on `β` (total energy at the matched particle number is
/// strictly decreasing in `β`), inner monotone solve on `α`.
fn nested_bisection(
    problem: &MaxEntProblem,
    e_target: f64,
    opts: &SolveOptions,
) -> Result<Option<MaxEntSolution>, SolveError> {
    let tol_en = tol_e(e_target, opts);
    let mut iterations = 0u32;
    let mut energy_gap = |beta: f64| -> Result<(f64, f64), SolveError> {
        let inner = solve_alpha(problem, beta, opts)?;
        iterations += inner.iterations + 1;
        let (_, e) = totals(problem, inner.alpha, beta);
        Ok((e - e_target, inner.alpha))
    };

    let mut lo = -1.0f64;
    let mut gap_lo = energy_gap(lo)?.0;
    let mut guard = 0;
    while gap_lo <= 0.0 {
        lo *= 2.0;
        gap_lo = energy_gap(lo)?.0;
        guard += 1;
        if guard > 60 {
            return Ok(None);
        }
    }
    let mut hi = 1.0f64;
    let mut gap_hi = energy_gap(hi)?.0;
    let mut guard = 0;
    while gap_hi >= 0.0 {
        hi *= 2.0;
        gap_hi = energy_gap(hi)?.0;
        guard += 1;
        if guard > 60 {
            return Ok(None);
        }
    }

    for _ in 0..4096 {
        let mid = 0.5 * (lo + hi);
        let (gap, alpha) = energy_gap(mid)?;
        if gap.abs() <= tol_en {
            return Ok(Some(build_solution(
                problem,
                alpha,
                mid,
                iterations,
                true,
                Some(e_target),
            )?));
        }
        if gap > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() <= f64::EPSILON * hi.abs().max(lo.abs()).max(1.0) {
            break;
        }
    }
    Ok(None)
}

fn build_solution(
    problem: &MaxEntProblem,
    alpha: f64,
    beta: f64,
    iterations: u32,
    converged: bool,
    e_target: Option<f64>,
) -> Result<MaxEntSolution, SolveError> {
    let mut occupancies = Vec::with_capacity(problem.bins().len());
    for (i, bin) in problem.bins().iter().enumerate() {
        let value = match problem.kind() {
            Kind::Fermion => fd_occupation(alpha, beta, bin.energy),
            Kind::Boson => be_occupation(alpha, beta, bin.energy).map_err(|_| {
                SolveError::PoleError {
                    bin: i,
                    offset: alpha + beta * bin.energy,
                }
            })?,
        };
        occupancies.push(value);
    }
    let occupations: Vec<f64> = occupancies
        .iter()
        .zip(problem.bins())
        .map(|(f, bin)| bin.states as f64 * f)
        .collect();
    let n: f64 = occupations.iter().sum();
    let e: f64 = occupations
        .iter()
        .zip(problem.bins())
        .map(|(nu, bin)| nu * bin.energy)
        .sum();
    Ok(MaxEntSolution {
        alpha,
        beta,
        occupations,
        occupancies,
        residual_n: n - problem.n_target(),
        residual_e: e_target.map_or(0.0, |t| e - t),
        iterations,
        converged,
    })
}
