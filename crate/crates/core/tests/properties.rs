//! Property tests over randomized stores: store set semantics, snapshot
//! structure and the Sub/Super duality.

mod common;

use common::random_store;
use owlkb::{
    Axiom, EntityKind, EntityRef, EntitySetElement, ExpressionKind, Ontology,
};
use proptest::prelude::*;

fn snapshot_of(seed: u64) -> (Ontology, std::sync::Arc<owlkb::InferenceSnapshot>) {
    let mut store = random_store(seed);
    let snapshot = store.synchronise_reasoner();
    (store, snapshot)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Enumeration equals the membership filter over all legal rows.
    #[test]
    fn enumeration_is_membership_filter(seed in 0u64..5_000) {
        let store = random_store(seed);
        for subject in store.declarations().iter() {
            for kind in ExpressionKind::ALL {
                if !kind.legal_for(subject.kind) {
                    prop_assert!(store.enumerate_axioms(subject, kind).is_err());
                    continue;
                }
                let enumerated = store.enumerate_axioms(subject, kind).unwrap();
                for element in &enumerated {
                    let axiom = Axiom::new(subject.clone(), kind, element.clone());
                    prop_assert!(store.contains_axiom(&axiom), "{axiom} enumerated but not contained");
                }
            }
        }
    }

    /// Assert then retract leaves the axiom set exactly as before.
    #[test]
    fn assert_retract_is_identity(seed in 0u64..5_000) {
        let mut store = random_store(seed);
        let before = store.axioms().clone();
        let extra = Axiom::new(
            EntityRef::class(owlkb::Iri::local("Xprop")),
            ExpressionKind::Super,
            EntitySetElement::entity(EntityRef::class(owlkb::Iri::local("C0"))),
        );
        let fresh = !store.contains_axiom(&extra);
        store.assert_axiom(&extra).unwrap();
        prop_assert!(store.contains_axiom(&extra));
        if fresh {
            store.retract_axiom(&extra);
        }
        prop_assert_eq!(store.axioms(), &before);
    }

    /// Snapshots contain every asserted axiom, scaffold every class under
    /// the top and above the bottom, and keep hierarchy sets strict.
    ///
    /// One refinement: a Super axiom whose endpoints were merged into a
    /// single equivalence group is reported as Equivalent, since hierarchy
    /// sets stay strict.
    #[test]
    fn snapshot_structure(seed in 0u64..2_000) {
        let (store, snapshot) = snapshot_of(seed);
        for axiom in store.axioms() {
            if snapshot.is_entailed(axiom) {
                continue;
            }
            let merged = match (&axiom.expression, &axiom.object) {
                (ExpressionKind::Super, EntitySetElement::Entity(other)) => {
                    snapshot.is_entailed(&Axiom::new(
                        axiom.subject.clone(),
                        ExpressionKind::Equivalent,
                        EntitySetElement::entity(other.clone()),
                    ))
                }
                _ => false,
            };
            prop_assert!(merged, "asserted {axiom} neither entailed nor merged");
        }
        let thing = EntityRef::thing();
        let nothing = EntityRef::nothing();
        for class in store.declared_of_kind(EntityKind::Class) {
            if class.is_thing() || class.is_nothing() {
                continue;
            }
            let own_group = snapshot
                .class_groups
                .iter()
                .find(|g| g.contains(&class.iri))
                .unwrap();
            // scaffolding holds unless the class merged into a pole group
            // (then the pole shows up under Equivalent instead)
            if !own_group.contains(&thing.iri) {
                prop_assert!(snapshot.is_entailed(&Axiom::new(
                    class.clone(),
                    ExpressionKind::Super,
                    EntitySetElement::entity(thing.clone()),
                )));
            }
            if !own_group.contains(&nothing.iri) {
                prop_assert!(snapshot.is_entailed(&Axiom::new(
                    class.clone(),
                    ExpressionKind::Sub,
                    EntitySetElement::entity(nothing.clone()),
                )));
            }
            // strictness: no class sits in its own hierarchy sets, nor do
            // its equivalents
            let supers = snapshot.entity_set(class, ExpressionKind::Super);
            let subs = snapshot.entity_set(class, ExpressionKind::Sub);
            for member in own_group {
                let as_element = EntitySetElement::entity(EntityRef::class(member.clone()));
                prop_assert!(!supers.contains(&as_element), "{member} in Super of {class}");
                prop_assert!(!subs.contains(&as_element), "{member} in Sub of {class}");
            }
        }
    }

    /// Sub and Super are mutually inverse over the entailed set, for classes
    /// and both property kinds.
    #[test]
    fn sub_super_inversion(seed in 0u64..2_000) {
        let (_, snapshot) = snapshot_of(seed);
        for axiom in &snapshot.entailed {
            match axiom.expression {
                ExpressionKind::Sub => {
                    if let EntitySetElement::Entity(other) = &axiom.object {
                        let dual = Axiom::new(
                            other.clone(),
                            ExpressionKind::Super,
                            EntitySetElement::entity(axiom.subject.clone()),
                        );
                        prop_assert!(snapshot.is_entailed(&dual), "missing dual of {axiom}");
                    }
                }
                ExpressionKind::Super => {
                    if let EntitySetElement::Entity(other) = &axiom.object {
                        let dual = Axiom::new(
                            other.clone(),
                            ExpressionKind::Sub,
                            EntitySetElement::entity(axiom.subject.clone()),
                        );
                        prop_assert!(snapshot.is_entailed(&dual), "missing dual of {axiom}");
                    }
                }
                _ => {}
            }
        }
    }

    /// Synchronising twice without mutation yields the same content.
    #[test]
    fn fixpoint_is_stable(seed in 0u64..2_000) {
        let mut store = random_store(seed);
        let first = store.synchronise_reasoner();
        let second = store.synchronise_reasoner();
        prop_assert!(first.same_content(&second));
    }

    /// The consistency verdict matches the violation list.
    #[test]
    fn verdict_matches_violations(seed in 0u64..2_000) {
        let (_, snapshot) = snapshot_of(seed);
        prop_assert_eq!(
            snapshot.consistency.consistent,
            snapshot.consistency.violations.is_empty()
        );
    }
}
