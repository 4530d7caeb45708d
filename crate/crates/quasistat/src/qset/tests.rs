use super::*;

fn electrons(n: u64) -> Universe {
    Universe::builder()
        .species("e", Kind::Fermion, n)
        .build()
        .unwrap()
}

fn pure(id: &str, n: u64) -> Qset {
    Qset::builder().particles(id, n).build().unwrap()
}

#[test]
fn indist_same_species_occurrences() {
    let u = electrons(5);
    let a = ExtRef::particle("e");
    let b = ExtRef::particle("e");
    assert!(u.indist(&a, &b).unwrap());
}

#[test]
fn indist_distinct_species() {
    let u = Universe::builder()
        .species("e", Kind::Fermion, 2)
        .species("mu", Kind::Fermion, 1)
        .build()
        .unwrap();
    assert!(!u
        .indist(&ExtRef::particle("e"), &ExtRef::particle("mu"))
        .unwrap());
}

#[test]
fn indist_equal_count_qsets() {
    let u = electrons(5);
    let a = ExtRef::collection(pure("e", 3));
    let b = ExtRef::collection(pure("e", 3));
    assert!(u.indist(&a, &b).unwrap());
}

#[test]
fn indist_rejects_undeclared_species() {
    let u = electrons(5);
    let err = u
        .indist(&ExtRef::particle("e"), &ExtRef::particle("p"))
        .unwrap_err();
    assert!(matches!(err, QsetError::UniverseMismatch(_)));
}

#[test]
fn weak_pair_pulls_in_the_whole_class() {
    let u = electrons(5);
    let pair = u
        .weak_pair(&ExtRef::particle("e"), &ExtRef::particle("e"))
        .unwrap();
    assert_eq!(pair, pure("e", 5));
    assert_eq!(pair.qc(), 5);
}

#[test]
fn weak_pair_across_species() {
    let u = Universe::builder()
        .species("e", Kind::Fermion, 2)
        .species("p", Kind::Fermion, 1)
        .build()
        .unwrap();
    let pair = u
        .weak_pair(&ExtRef::particle("e"), &ExtRef::particle("p"))
        .unwrap();
    assert_eq!(pair.qc(), 3);
    assert_eq!(pair.species_count(&"e".into()), 2);
    assert_eq!(pair.species_count(&"p".into()), 1);
}

#[test]
fn weak_pair_recovers_classical_pair() {
    let u = Universe::builder().label("A").label("B").build().unwrap();
    let pair = u.weak_pair(&ExtRef::label("A"), &ExtRef::label("B")).unwrap();
    assert_eq!(pair.qc(), 2);
    assert!(pair.has_label(&"A".into()));
    assert!(pair.has_label(&"B".into()));
}

#[test]
fn separate_selects_by_species() {
    let x = Qset::builder()
        .particles("e", 3)
        .particles("p", 2)
        .build()
        .unwrap();
    let selected = x
        .separate(|r| Ok(matches!(r, ExtRef::Particle(id) if id.as_str() == "e")))
        .unwrap();
    assert_eq!(selected, pure("e", 3));
}

#[test]
fn separate_always_false_gives_empty() {
    let x = pure("e", 3);
    let selected = x.separate(|_| Ok(false)).unwrap();
    assert!(selected.is_empty());
    assert_eq!(selected.qc(), 0);
}

#[test]
fn separate_picks_classical_elements() {
    let x = Qset::builder().particles("e", 2).label("A").build().unwrap();
    let selected = x.separate(|r| Ok(r.is_label())).unwrap();
    assert_eq!(selected.qc(), 1);
    assert!(selected.has_label(&"A".into()));
}

#[test]
fn separate_propagates_identity_errors() {
    let x = pure("e", 2);
    let probe = ExtRef::particle("e");
    let err = x.separate(|r| r.identical(&probe)).unwrap_err();
    assert_eq!(err, QsetError::IdentityUndefined);
}

#[test]
fn qc_of_empty_is_zero() {
    assert_eq!(Qset::empty().qc(), 0);
}

#[test]
fn qc_counts_all_sorts() {
    let x = Qset::builder().particles("e", 2).label("A").build().unwrap();
    assert_eq!(x.qc(), 3);
    assert_eq!(pure("e", 11).qc(), 11);
}

#[test]
fn sub_qsets_single_species() {
    let x = pure("e", 5);
    let singletons = x.sub_qsets_of_card(1).unwrap();
    assert_eq!(singletons, vec![pure("e", 1)]);
    for beta in 0..=5 {
        assert_eq!(x.sub_qsets_of_card(beta).unwrap().len(), 1);
    }
}

#[test]
fn sub_qsets_two_species() {
    let x = Qset::builder()
        .particles("e", 2)
        .particles("p", 1)
        .build()
        .unwrap();
    let twos = x.sub_qsets_of_card(2).unwrap();
    let ep = Qset::builder()
        .particles("e", 1)
        .particles("p", 1)
        .build()
        .unwrap();
    assert_eq!(twos, vec![pure("e", 2), ep]);
}

#[test]
fn sub_qsets_rejects_excess_cardinal() {
    let err = pure("e", 3).sub_qsets_of_card(4).unwrap_err();
    assert_eq!(
        err,
        QsetError::CardinalOutOfRange {
            requested: 4,
            available: 3
        }
    );
}

#[test]
fn power_qc_single_species() {
    let p = pure("e", 3).power_qc().unwrap();
    assert_eq!(p.declared_qc, 8);
    assert_eq!(p.distinct_descriptors, 4);
}

#[test]
fn power_qc_classical_collapse() {
    let x = Qset::builder()
        .label("A")
        .label("B")
        .label("C")
        .build()
        .unwrap();
    let p = x.power_qc().unwrap();
    assert_eq!(p.declared_qc, 8);
    assert_eq!(p.distinct_descriptors, 8);
}

#[test]
fn power_qc_empty() {
    let p = Qset::empty().power_qc().unwrap();
    assert_eq!(p.declared_qc, 1);
    assert_eq!(p.distinct_descriptors, 1);
}

#[test]
fn power_qc_respects_limit() {
    let x = pure("e", 100);
    assert!(matches!(x.power_qc(), Err(QsetError::LimitExceeded(_))));
    assert!(x.power_qc_with_limit(110).is_ok());
}

#[test]
fn strong_singleton_shape() {
    let u = electrons(5);
    let s = u.strong_singleton(&ExtRef::particle("e")).unwrap();
    assert_eq!(s, pure("e", 1));
    assert_eq!(s.qc(), 1);
}

#[test]
fn strong_singletons_of_indistinguishables() {
    let u = electrons(5);
    let s1 = u.strong_singleton(&ExtRef::particle("e")).unwrap();
    let s2 = u.strong_singleton(&ExtRef::particle("e")).unwrap();
    assert!(u
        .indist(&ExtRef::collection(s1.clone()), &ExtRef::collection(s2.clone()))
        .unwrap());
    // Whether the two singletons are "the same one" is not a question the
    // kernel answers.
    let err = ExtRef::collection(s1).identical(&ExtRef::collection(s2));
    assert_eq!(err, Err(QsetError::IdentityUndefined));
}

#[test]
fn strong_singleton_requires_m_atom() {
    let u = Universe::builder().label("A").build().unwrap();
    let err = u.strong_singleton(&ExtRef::label("A")).unwrap_err();
    assert_eq!(err, QsetError::MAtomRequired);
}

#[test]
fn similar_and_qsimilar() {
    assert!(pure("e", 2).similar(&pure("e", 7)).unwrap());
    assert!(!pure("e", 2).qsimilar(&pure("e", 7)).unwrap());
    assert!(pure("e", 3).qsimilar(&pure("e", 3)).unwrap());
    assert!(!pure("e", 2).similar(&pure("p", 2)).unwrap());
}

#[test]
fn similar_requires_purity() {
    let mixed = Qset::builder().particles("e", 1).label("A").build().unwrap();
    assert_eq!(mixed.similar(&pure("e", 1)), Err(QsetError::PurityRequired));
}

#[test]
fn mixed_species_qset_not_similar_to_itself() {
    let x = Qset::builder()
        .particles("e", 2)
        .particles("p", 1)
        .build()
        .unwrap();
    assert!(!x.similar(&x).unwrap());
}

#[test]
fn weak_ext_equiv_ignores_construction_history() {
    let once = pure("e", 2);
    let twice = pure("e", 1).merge(&pure("e", 1)).unwrap();
    assert!(once.weak_ext_equiv(&twice));
    assert_eq!(once.canonical_bytes(), twice.canonical_bytes());
}

#[test]
fn weak_ext_equiv_distinguishes_sorts() {
    let ep = Qset::builder()
        .particles("e", 1)
        .particles("p", 1)
        .build()
        .unwrap();
    assert!(!pure("e", 2).weak_ext_equiv(&ep));
}

#[test]
fn ip_exchange_changes_nothing_observable() {
    let u = electrons(5);
    let x = pure("e", 5);
    let swapped = u
        .ip_exchange(&x, &ExtRef::particle("e"), &ExtRef::particle("e"))
        .unwrap();
    assert!(swapped.weak_ext_equiv(&x));
}

#[test]
fn ip_exchange_on_singleton() {
    let u = electrons(1);
    let x = pure("e", 1);
    let swapped = u
        .ip_exchange(&x, &ExtRef::particle("e"), &ExtRef::particle("e"))
        .unwrap();
    assert_eq!(swapped, x);
}

#[test]
fn ip_exchange_rejects_distinguishable_replacement() {
    let u = Universe::builder()
        .species("e", Kind::Fermion, 2)
        .species("p", Kind::Fermion, 1)
        .build()
        .unwrap();
    let err = u
        .ip_exchange(&pure("e", 2), &ExtRef::particle("e"), &ExtRef::particle("p"))
        .unwrap_err();
    assert_eq!(err, QsetError::NotIndistinguishable);
}

#[test]
fn ip_exchange_rejects_non_member() {
    let u = Universe::builder()
        .species("e", Kind::Fermion, 2)
        .species("p", Kind::Fermion, 1)
        .build()
        .unwrap();
    let err = u
        .ip_exchange(&pure("e", 2), &ExtRef::particle("p"), &ExtRef::particle("p"))
        .unwrap_err();
    assert_eq!(err, QsetError::NotMember);
}

#[test]
fn identity_defined_for_classical_content() {
    let a = ExtRef::label("A");
    let b = ExtRef::label("B");
    assert_eq!(a.identical(&a), Ok(true));
    assert_eq!(a.identical(&b), Ok(false));
    let qa = Qset::builder().label("A").build().unwrap();
    let qb = Qset::builder().label("A").build().unwrap();
    assert_eq!(
        ExtRef::collection(qa).identical(&ExtRef::collection(qb)),
        Ok(true)
    );
}

#[test]
fn identity_undefined_reaches_through_nesting() {
    let inner = pure("e", 1);
    let outer = Qset::builder().nested(inner).build().unwrap();
    let err = ExtRef::collection(outer.clone()).identical(&ExtRef::collection(outer));
    assert_eq!(err, Err(QsetError::IdentityUndefined));
}

#[test]
fn nesting_depth_is_capped() {
    let mut q = Qset::empty();
    for _ in 0..(MAX_NESTING_DEPTH - 1) {
        q = Qset::builder().nested(q).build().unwrap();
    }
    assert_eq!(q.depth(), MAX_NESTING_DEPTH);
    let err = Qset::builder().nested(q).build().unwrap_err();
    assert!(matches!(err, QsetError::DepthExceeded(_)));
}

#[test]
fn zero_counts_are_normalized_away() {
    let explicit = Qset::builder().particles("e", 0).build().unwrap();
    assert_eq!(explicit, Qset::empty());
    assert_eq!(explicit.to_string(), Qset::empty().to_string());
}

#[test]
fn canonical_form_orders_species_and_labels() {
    let q = Qset::builder()
        .particles("p", 1)
        .particles("e", 2)
        .label("B")
        .label("A")
        .build()
        .unwrap();
    assert_eq!(q.to_string(), "{e:2,p:1;A,B;}");
}

#[test]
fn invalid_identifiers_are_rejected() {
    assert!(matches!(
        Qset::builder().particles("e;1", 1).build(),
        Err(QsetError::InvalidIdentifier(_))
    ));
    assert!(matches!(
        Universe::builder().label("bad label").build(),
        Err(QsetError::InvalidIdentifier(_))
    ));
}

#[test]
fn minus_requires_subset() {
    let err = pure("e", 1).minus(&pure("e", 2)).unwrap_err();
    assert_eq!(err, QsetError::NotMember);
}

#[test]
fn classify_is_per_species() {
    let u = Universe::builder()
        .species("e", Kind::Fermion, 2)
        .species("gamma", Kind::Boson, 3)
        .build()
        .unwrap();
    assert_eq!(u.classify(&"e".into()), Ok(Kind::Fermion));
    assert_eq!(u.classify(&"gamma".into()), Ok(Kind::Boson));
    assert!(u.classify(&"nu".into()).is_err());
}
