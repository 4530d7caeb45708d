use super::binning::{EnergyBin, EnergyBinning};
use super::state::StateSet;
use super::system::ParticleSystem;
use crate::qset::{Kind, Universe};

/// The electrons of a sodium atom: eleven indistinguishable fermions over
/// twelve states, one electron per state and the last state empty. The
/// accompanying binning groups the states into the four occupied shells, so
/// the coarse occupations come out as 2, 2, 6, 1. Bin energies are
/// dimensionless placeholders ordered by shell.
pub fn preset_sodium() -> (ParticleSystem, EnergyBinning) {
    let universe = Universe::builder()
        .species("e", Kind::Fermion, 11)
        .build()
        .expect("static preset");
    let states = StateSet::numbered("s", 12).expect("static preset");
    let occupations = [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0];
    let system = ParticleSystem::from_occupations(universe, "e", states, &occupations)
        .expect("static preset");
    let bins = EnergyBinning::new(vec![
        EnergyBin::new("1s", 1.0, vec!["s1".into(), "s2".into()]),
        EnergyBin::new("2s", 2.0, vec!["s3".into(), "s4".into()]),
        EnergyBin::new(
            "2p",
            3.0,
            vec![
                "s5".into(),
                "s6".into(),
                "s7".into(),
                "s8".into(),
                "s9".into(),
                "s10".into(),
            ],
        ),
        EnergyBin::new("3s", 4.0, vec!["s11".into(), "s12".into()]),
    ])
    .expect("static preset");
    (system, bins)
}

/// A helium atom with one electron excited: two indistinguishable fermions,
/// one paired with the ground state `g1` and one with the excited state
/// `g2`. The two singleton families are weak-extensionally equivalent —
/// the model says one electron is excited without saying which.
pub fn preset_helium() -> ParticleSystem {
    let universe = Universe::builder()
        .species("e", Kind::Fermion, 2)
        .build()
        .expect("static preset");
    let states = StateSet::numbered("g", 2).expect("static preset");
    ParticleSystem::from_occupations(universe, "e", states, &[1, 1]).expect("static preset")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qset::ExtRef;
    use crate::qset::QsetError;

    #[test]
    fn sodium_occupations_and_verdicts() {
        let (system, bins) = preset_sodium();
        assert_eq!(system.particles().qc(), 11);
        assert_eq!(system.occupations(), vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0]);
        assert!(system.validate().iter().all(|v| v.passed));
        let coarse = system.coarse_relation(&bins).unwrap();
        assert_eq!(coarse.occupations(), vec![2, 2, 6, 1]);
    }

    #[test]
    fn sodium_families_are_equivalent_singletons() {
        let (system, _) = preset_sodium();
        let families = system.families();
        for i in 0..11 {
            assert_eq!(families[i].qc(), 1);
            for j in 0..11 {
                assert!(families[i].weak_ext_equiv(&families[j]));
                assert!(families[i].similar(&families[j]).unwrap());
            }
        }
        assert_eq!(families[11].qc(), 0);
    }

    #[test]
    fn sodium_single_bin_covers_everything() {
        let (system, _) = preset_sodium();
        let all = EnergyBinning::new(vec![EnergyBin::new(
            "all",
            1.0,
            system.states().iter().map(|s| s.id.clone()).collect(),
        )])
        .unwrap();
        let coarse = system.coarse_relation(&all).unwrap();
        assert_eq!(coarse.occupations(), vec![11]);
    }

    #[test]
    fn helium_splits_into_equivalent_singletons() {
        let system = preset_helium();
        assert_eq!(system.particles().qc(), 2);
        let p1 = system.relation().family_of(&"g1".into()).unwrap();
        let p2 = system.relation().family_of(&"g2".into()).unwrap();
        assert_eq!(p1.qc(), 1);
        assert_eq!(p2.qc(), 1);
        assert!(p1.weak_ext_equiv(p2));
        assert!(system.validate().iter().all(|v| v.passed));
        // Asking which electron went where is not answerable.
        let err = ExtRef::collection(p1.clone()).identical(&ExtRef::collection(p2.clone()));
        assert_eq!(err, Err(QsetError::IdentityUndefined));
    }

    #[test]
    fn helium_parts_recoverable_by_difference() {
        let system = preset_helium();
        let p1 = system.relation().family_of(&"g1".into()).unwrap();
        let p2 = system.particles().minus(p1).unwrap();
        assert!(p2.weak_ext_equiv(system.relation().family_of(&"g2".into()).unwrap()));
    }
}
