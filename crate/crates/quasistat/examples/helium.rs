//! A helium atom with one electron excited: the system says "one of the two
//! is in the ground state" without there being a fact about which one.
//!
//! ```sh
//! cargo run --example helium
//! ```

use quasistat::qset::ExtRef;
use quasistat::system::preset_helium;

fn main() {
    let system = preset_helium();
    println!(
        "P = {} with qc(P) = {}",
        system.particles(),
        system.particles().qc()
    );

    let p1 = system.relation().family_of(&"g1".into()).unwrap();
    let p2 = system.relation().family_of(&"g2".into()).unwrap();
    println!("ground family  p1 = {p1} (qc {})", p1.qc());
    println!("excited family p2 = {p2} (qc {})", p2.qc());
    println!("p1 equivalent to p2: {}", p1.weak_ext_equiv(p2));

    // Which electron is excited? The question has no answer: identity is
    // not defined for the electron content.
    let q = ExtRef::collection(p1.clone()).identical(&ExtRef::collection(p2.clone()));
    println!("p1 identical to p2? {q:?}");

    let all_pass = system.validate().iter().all(|v| v.passed);
    println!("axioms (including exclusion) all pass: {all_pass}");
}
