//! The eleven electrons of a sodium atom as a quantum particle system:
//! validation against the ten axioms and coarse-graining into shells.
//!
//! ```sh
//! cargo run --example sodium
//! ```

use quasistat::system::preset_sodium;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (system, bins) = preset_sodium();

    println!(
        "P = {} with qc(P) = {}",
        system.particles(),
        system.particles().qc()
    );
    for (state, occupation) in system.states().iter().zip(system.occupations()) {
        println!("  {} (rank {:>2}) holds {}", state.id, state.rank, occupation);
    }

    println!("\naxiom verdicts:");
    for verdict in system.validate() {
        match verdict.witness {
            Some(w) => println!("  {:<4} FAIL {w}", verdict.axiom.code()),
            None => println!("  {:<4} pass — {}", verdict.axiom.code(), verdict.axiom.summary()),
        }
    }

    // Grouping states into shells induces the relation over energy bins;
    // the shell occupations recover the 1s2 2s2 2p6 3s1 configuration.
    let coarse = system.coarse_relation(&bins)?;
    println!("\nshell structure:");
    for pair in coarse.pairs() {
        println!(
            "  {:<3} energy {:<3} states {:<2} occupation {}",
            pair.label,
            pair.energy,
            pair.states,
            pair.occupation()
        );
    }
    let occupations: Vec<String> = coarse
        .occupations()
        .iter()
        .map(u64::to_string)
        .collect();
    println!("coarse occupations: {}", occupations.join(","));
    Ok(())
}
