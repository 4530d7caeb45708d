//! From counting to the quantum distributions: fit Lagrange parameters to
//! particle-number and energy constraints and read off the average
//! occupancies.
//!
//! ```sh
//! cargo run --example distributions
//! ```

use quasistat::maxent::{solve, Bin, Constraint, MaxEntProblem};
use quasistat::qset::Kind;
use quasistat::{be_occupation, fd_occupation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Fermions over four bins, fixed inverse temperature: solve for the
    // affinity alpha that places twelve particles.
    let problem = MaxEntProblem::new(
        Kind::Fermion,
        vec![
            Bin::new(6, 0.0),
            Bin::new(6, 1.0),
            Bin::new(6, 2.0),
            Bin::new(6, 3.0),
        ],
        12.0,
        Constraint::Beta(1.5),
    )?;
    let solution = solve(&problem)?;
    println!("fermions, beta = 1.5, N = 12:");
    println!("  alpha = {:.6}", solution.alpha);
    println!("  bin energy occupation occupancy");
    for (i, bin) in problem.bins().iter().enumerate() {
        println!(
            "  {:<3} {:<6} {:<10.6} {:.6}",
            i, bin.energy, solution.occupations[i], solution.occupancies[i]
        );
    }

    // Same bins, but posing a total-energy target instead: now beta is
    // solved for as well.
    let problem = MaxEntProblem::new(
        Kind::Boson,
        vec![Bin::new(4, 0.5), Bin::new(4, 1.0), Bin::new(4, 2.0)],
        6.0,
        Constraint::TotalEnergy(6.5),
    )?;
    let solution = solve(&problem)?;
    println!("\nbosons, N = 6, E = 6.5:");
    println!(
        "  alpha = {:.6}, beta = {:.6} (residuals {:.2e}, {:.2e})",
        solution.alpha, solution.beta, solution.residual_n, solution.residual_e
    );
    for (i, bin) in problem.bins().iter().enumerate() {
        println!(
            "  bin {} at energy {}: occupation {:.6}",
            i, bin.energy, solution.occupations[i]
        );
    }

    // The fitted occupancies are the distribution functions themselves.
    let (alpha, beta) = (solution.alpha, solution.beta);
    println!("\noccupancy vs energy at the fitted parameters:");
    println!("  energy  bose-einstein  fermi-dirac");
    for i in 0..8 {
        let eps = 0.5 + i as f64 * 0.5;
        println!(
            "  {:<7} {:<14.6} {:.6}",
            eps,
            be_occupation(alpha, beta, eps)?,
            fd_occupation(alpha, beta, eps)
        );
    }
    Ok(())
}
