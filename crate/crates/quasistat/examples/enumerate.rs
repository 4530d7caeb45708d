//! Every way of distributing five indistinguishable bosons over three
//! states — the configurations are exactly the per-state counts, so there
//! are twenty-one of them, not 3^5.
//!
//! ```sh
//! cargo run --example enumerate
//! ```

use quasistat::qset::Kind;
use quasistat::stats;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("five bosons over three states:");
    let vectors = stats::enumerate(5, 3, Kind::Boson)?;
    println!("  #   s1 s2 s3");
    for (i, v) in vectors.iter().enumerate() {
        println!("  {:<3} {:>2} {:>2} {:>2}", i + 1, v[0], v[1], v[2]);
    }
    println!("total {}", vectors.len());

    // Fermions obey the exclusion principle: two particles over two states
    // leave a single configuration.
    println!("\ntwo fermions over two states:");
    for v in stats::enumerate(2, 2, Kind::Fermion)? {
        println!("  {v:?}");
    }

    // Three fermions cannot fit into two states at all.
    let none = stats::enumerate(3, 2, Kind::Fermion)?;
    println!("three fermions over two states: {} configurations", none.len());

    // Enumeration streams in descending lexicographic order, so huge cases
    // can be consumed without materializing anything.
    let head: Vec<Vec<u64>> = stats::enumerate_iter(40, 5, Kind::Boson)?.take(3).collect();
    println!("\nfirst rows for 40 bosons over 5 states: {head:?}");
    println!(
        "…of {} configurations in total",
        stats::count_bosons(40, 5)?
    );
    Ok(())
}
