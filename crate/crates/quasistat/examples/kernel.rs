//! Tour of the quasi-set kernel: collections of particles that can be
//! counted but never named.
//!
//! ```sh
//! cargo run --example kernel
//! ```

use quasistat::qset::{ExtRef, Kind, Qset, Universe};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Five electrons, one muon, and two classical labels.
    let universe = Universe::builder()
        .species("e", Kind::Fermion, 5)
        .species("mu", Kind::Fermion, 1)
        .label("A")
        .label("B")
        .build()?;

    // Two electron references: indistinguishable, yet asking whether they
    // are *the same one* is not even a well-formed question.
    let x = ExtRef::particle("e");
    let y = ExtRef::particle("e");
    println!("indist(e, e)   = {}", universe.indist(&x, &y)?);
    println!("indist(e, mu)  = {}", universe.indist(&x, &ExtRef::particle("mu"))?);
    println!("identical(e,e) = {:?}", x.identical(&y));

    // The weak pair [x, y] holds everything indistinguishable from either
    // side, so for one electron it is the whole electron class.
    let pair = universe.weak_pair(&x, &y)?;
    println!("weak pair [e,e]   = {pair}  qc = {}", pair.qc());
    let ab = universe.weak_pair(&ExtRef::label("A"), &ExtRef::label("B"))?;
    println!("weak pair [A,B]   = {ab}  qc = {}", ab.qc());

    // Separation selects by what is observable: species, never index.
    let mixed = Qset::builder().particles("e", 3).particles("mu", 1).label("A").build()?;
    let electrons_only = mixed.separate(|r| {
        Ok(matches!(r, ExtRef::Particle(id) if id.as_str() == "e"))
    })?;
    println!("separate electrons from {mixed} -> {electrons_only}");

    // The power-qset axiom declares 2^qc sub-collections, but only the
    // count vectors are observationally distinct.
    let three = Qset::builder().particles("e", 3).build()?;
    let power = three.power_qc()?;
    println!(
        "power of {three}: declared 2^qc = {}, distinct descriptors = {}",
        power.declared_qc, power.distinct_descriptors
    );
    for beta in 0..=three.qc() {
        let catalog = three.sub_qsets_of_card(beta)?;
        println!("  sub-qsets of cardinal {beta}: {}", catalog.len());
    }

    // Exchanging an electron for an indistinguishable one changes nothing:
    // the result is weak-extensionally equivalent to the original.
    let swapped = universe.ip_exchange(&three, &x, &y)?;
    println!(
        "exchange e for e in {three}: result {swapped}, equivalent = {}",
        swapped.weak_ext_equiv(&three)
    );

    // Equivalence is exactly sameness of canonical serialization.
    let built_once = Qset::builder().particles("e", 2).build()?;
    let built_twice = Qset::builder().particles("e", 1).build()?
        .merge(&Qset::builder().particles("e", 1).build()?)?;
    println!(
        "{built_once} vs {built_twice}: equivalent = {}, same bytes = {}",
        built_once.weak_ext_equiv(&built_twice),
        built_once.canonical_bytes() == built_twice.canonical_bytes()
    );
    Ok(())
}
