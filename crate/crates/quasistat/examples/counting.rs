//! Exact configuration counts for both statistics, and the product rule
//! across energy bins. Counts are big integers; nothing overflows.
//!
//! ```sh
//! cargo run --example counting
//! ```

use quasistat::qset::Kind;
use quasistat::stats::{count_bosons, count_fermions, total_microstates};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("nu particles over k states:");
    println!("  nu  k   bosons     fermions");
    for (nu, k) in [(2, 2), (5, 3), (3, 6), (5, 10)] {
        println!(
            "  {:<3} {:<3} {:<10} {}",
            nu,
            k,
            count_bosons(nu, k)?,
            count_fermions(nu, k)?
        );
    }

    // The additive recurrences tie neighbouring counts together exactly.
    let lhs = count_bosons(5, 3)?.value;
    let rhs = count_bosons(4, 3)?.value + count_bosons(5, 2)?.value;
    println!("\nboson recurrence at (5,3): {lhs} = 15 + 6 = {rhs}");

    // Independent bins multiply: the total microstate count for a
    // macrostate is the product over its bins.
    let bins = [(5u64, 3u64), (2, 4)];
    println!(
        "bins (nu=5,k=3) and (nu=2,k=4): {} x {} = {}",
        count_bosons(5, 3)?,
        count_bosons(2, 4)?,
        total_microstates(&bins, Kind::Boson)?
    );
    println!(
        "same bins for fermions: {}",
        total_microstates(&bins, Kind::Fermion)?
    );

    // Counts stay exact far beyond machine integers.
    println!(
        "\n1000 bosons over 500 states: {}",
        count_bosons(1000, 500)?
    );
    Ok(())
}
