//! Cross-module invariants: the counting layer, the particle-system axioms
//! and the text formats have to agree with each other.

use num_bigint::BigUint;

use quasistat::format::{parse_system, write_system};
use quasistat::qset::{Kind, Universe};
use quasistat::stats;
use quasistat::system::{preset_helium, preset_sodium, ParticleSystem, StateSet};

/// Every enumerated fermion configuration, materialized as a quasi-relation,
/// satisfies the exclusion principle — and in fact the whole axiom list.
#[test]
fn enumerated_fermion_vectors_materialize_into_valid_systems() {
    for nu in 0..=5u64 {
        for k in 1..=5u64 {
            for vector in stats::enumerate(nu, k, Kind::Fermion).unwrap() {
                let universe = Universe::builder()
                    .species("f", Kind::Fermion, nu)
                    .build()
                    .unwrap();
                let states = StateSet::numbered("s", k as u32).unwrap();
                let system =
                    ParticleSystem::from_occupations(universe, "f", states, &vector).unwrap();
                let verdicts = system.validate();
                assert!(
                    verdicts.iter().all(|v| v.passed),
                    "nu={nu} k={k} vector={vector:?}: {verdicts:?}"
                );
            }
        }
    }
}

/// Boson configurations satisfy every axiom except that exclusion is simply
/// not triggered; a multiply-occupied state materialized as fermionic must
/// fail exactly the exclusion verdict.
#[test]
fn multiply_occupied_states_are_fermion_violations_only() {
    let universe = Universe::builder()
        .species("f", Kind::Fermion, 3)
        .build()
        .unwrap();
    let states = StateSet::numbered("s", 2).unwrap();
    let system = ParticleSystem::from_occupations(universe, "f", states, &[3, 0]).unwrap();
    let failed: Vec<&str> = system
        .validate()
        .iter()
        .filter(|v| !v.passed)
        .map(|v| v.axiom.code())
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    assert_eq!(failed, vec!["Q10"]);
}

/// Re-validation after a canonical serialization round-trip returns the
/// identical verdict list.
#[test]
fn verdicts_survive_serialization_roundtrip() {
    let (system, bins) = preset_sodium();
    let text = write_system(&system, Some(&bins));
    let (reparsed, _) = parse_system(&text).unwrap();
    assert_eq!(reparsed.validate(), system.validate());

    let helium = preset_helium();
    let text = write_system(&helium, None);
    let (reparsed, _) = parse_system(&text).unwrap();
    assert_eq!(reparsed.validate(), helium.validate());
}

/// With the family-coverage and disjointness verdicts green, the per-species
/// totals across states equal the population exactly.
#[test]
fn green_systems_account_for_every_particle() {
    let (system, _) = preset_sodium();
    let total: u64 = system.occupations().iter().sum();
    assert_eq!(total, system.particles().qc());
}

/// The classical arrangement count dominates the quantum ones; for the
/// textbook two-particles-two-states case: 4 distinguishable arrangements,
/// 3 boson configurations, 1 fermion configuration.
#[test]
fn counting_gap_between_classical_and_quantum() {
    let mb = BigUint::from(2u64).pow(2);
    let be = stats::count_bosons(2, 2).unwrap().value;
    let fd = stats::count_fermions(2, 2).unwrap().value;
    assert_eq!(mb, BigUint::from(4u32));
    assert_eq!(be, BigUint::from(3u32));
    assert_eq!(fd, BigUint::from(1u32));
    assert!(fd < be && be < mb);

    for nu in 1..=6u64 {
        for k in 2..=6u64 {
            let mb = BigUint::from(k).pow(nu as u32);
            let be = stats::count_bosons(nu, k).unwrap().value;
            assert!(be <= mb, "nu={nu} k={k}");
        }
    }
}
