//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured bound. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::{class, dprop, indiv, oprop, random_store, random_store_with_pools};
use owlkb::model::datatypes;
use owlkb::scenario;
use owlkb::syntax::{parse_document, serialize_store};
use owlkb::{
    naive_fixpoint_oracle, Axiom, Cardinality, Descriptor, EntityKind, EntityRef,
    EntitySetElement, ExpressionKind, LiteralValue, Locus, Ontology, ProfileRegistry,
    Restriction,
};

fn fixture_text() -> String {
    std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../fixtures/robot_at_home.ofn"
    ))
    .expect("fixture file")
}

fn fixture_store() -> Ontology {
    parse_document(&fixture_text()).expect("fixture parses")
}

fn entity_names(set: &BTreeSet<EntitySetElement>) -> BTreeSet<String> {
    set.iter().map(|e| e.to_string()).collect()
}

/// Criterion 1: the demo fixture reproduces the reference entity sets after
/// one synchronisation.
#[test]
fn criterion_1_reference_entity_sets() {
    let start = Instant::now();
    let mut store = fixture_store();
    store.synchronise_reasoner();

    let supers = store
        .entailed_entity_set(&class("ROOM"), ExpressionKind::Super)
        .unwrap();
    assert_eq!(
        entity_names(&supers),
        BTreeSet::from([":LOCATION".to_string(), "owl:Thing".to_string()])
    );

    let instances = store
        .entailed_entity_set(&class("ROOM"), ExpressionKind::Instance)
        .unwrap();
    assert_eq!(
        entity_names(&instances),
        BTreeSet::from([":Room1".to_string(), ":Room2".to_string()])
    );

    let links = store
        .entailed_entity_set(&indiv("Room1"), ExpressionKind::ObjectLink)
        .unwrap();
    assert!(links.contains(&EntitySetElement::object_pair(
        oprop("isLinkedTo"),
        indiv("Corridor1")
    )));

    let data = store
        .entailed_entity_set(&indiv("Room1"), ExpressionKind::DataLink)
        .unwrap();
    assert_eq!(
        data,
        BTreeSet::from([EntitySetElement::data_pair(
            dprop("hasTemperature"),
            LiteralValue::integer(24)
        )])
    );

    let definition = store
        .entailed_entity_set(&class("CORRIDOR"), ExpressionKind::EquivalentRestriction)
        .unwrap();
    assert_eq!(
        definition,
        BTreeSet::from([
            EntitySetElement::restriction(Restriction::bare_class(class("LOCATION")).unwrap()),
            EntitySetElement::restriction(
                Restriction::object(Cardinality::Min(2), oprop("hasDoor"), class("DOOR")).unwrap()
            ),
        ])
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("PASS criterion 1: reference entity sets reproduced in {elapsed:?}");
}

/// Criterion 3: the write/read walkthrough leaves the expected end state.
#[test]
fn criterion_3_write_cycle_end_state() {
    let output = scenario::write_read_cycle(fixture_store()).expect("scenario runs");

    // entailments at the scenario's synchronisation point
    let snapshot = &output.snapshot;
    for (subject, expr, element) in [
        (
            class("ROBOT"),
            ExpressionKind::Disjoint,
            EntitySetElement::entity(class("LOCATION")),
        ),
        (
            class("ROBOT"),
            ExpressionKind::Disjoint,
            EntitySetElement::entity(class("DOOR")),
        ),
        (
            oprop("hasDoor"),
            ExpressionKind::Domain,
            EntitySetElement::restriction(Restriction::bare_class(class("LOCATION")).unwrap()),
        ),
        (
            oprop("hasDoor"),
            ExpressionKind::Range,
            EntitySetElement::restriction(Restriction::bare_class(class("DOOR")).unwrap()),
        ),
        (
            indiv("Corridor1"),
            ExpressionKind::ObjectLink,
            EntitySetElement::object_pair(oprop("isLinkedTo"), indiv("Room1")),
        ),
        (
            indiv("Corridor1"),
            ExpressionKind::ObjectLink,
            EntitySetElement::object_pair(oprop("isLinkedTo"), indiv("Room2")),
        ),
    ] {
        let axiom = Axiom::new(subject, expr, element);
        assert!(snapshot.is_entailed(&axiom), "missing entailment {axiom}");
    }

    // after the final removal and write, no link assertion from the corridor
    let remaining = output
        .store
        .enumerate_axioms(&indiv("Corridor1"), ExpressionKind::ObjectLink)
        .unwrap();
    let linked: Vec<_> = remaining
        .iter()
        .filter(|e| e.pair_property() == Some(&oprop("isLinkedTo")))
        .collect();
    assert!(linked.is_empty(), "left-over assertions: {linked:?}");

    println!("PASS criterion 3: write cycle end state verified");
}

/// The shipped fixture itself gets the same treatment as the random
/// corpus: engine and oracle must agree on it exactly.
#[test]
fn fixture_agrees_with_oracle() {
    let mut store = fixture_store();
    let oracle = naive_fixpoint_oracle(&store);
    let engine = store.synchronise_reasoner();
    assert_eq!(engine.entailed, oracle.entailed);
    assert_eq!(engine.class_groups, oracle.class_groups);
    assert_eq!(engine.consistency, oracle.consistency);
    assert!(engine.consistency.consistent);
    println!("PASS fixture oracle agreement");
}

/// Criterion 4: engine and oracle agree over 500 random stores.
#[test]
fn criterion_4_oracle_equivalence() {
    let start = Instant::now();
    let runs = 500u64;
    for seed in 0..runs {
        let mut store = random_store(seed);
        let oracle = naive_fixpoint_oracle(&store);
        let engine = store.synchronise_reasoner();

        if engine.entailed != oracle.entailed {
            let engine_only: Vec<_> = engine.entailed.difference(&oracle.entailed).collect();
            let oracle_only: Vec<_> = oracle.entailed.difference(&engine.entailed).collect();
            panic!(
                "seed {seed}: entailed sets differ\n  engine only: {engine_only:?}\n  oracle only: {oracle_only:?}"
            );
        }
        assert_eq!(engine.class_groups, oracle.class_groups, "seed {seed}");
        assert_eq!(
            engine.object_property_groups, oracle.object_property_groups,
            "seed {seed}"
        );
        assert_eq!(
            engine.data_property_groups, oracle.data_property_groups,
            "seed {seed}"
        );
        assert_eq!(
            engine.individual_groups, oracle.individual_groups,
            "seed {seed}"
        );
        assert_eq!(
            engine.consistency, oracle.consistency,
            "seed {seed}: consistency reports differ"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("PASS criterion 4: {runs} stores, zero mismatches, {elapsed:?}");
}

/// Criterion 5: descriptor round-trip properties over random consistent
/// stores.
#[test]
fn criterion_5_descriptor_round_trips() {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    let registry = ProfileRegistry::builtin();
    let mut checked = 0usize;
    let mut seed = 10_000u64;
    while checked < 200 {
        seed += 1;
        let (mut store, pools) = random_store_with_pools(seed);
        store.synchronise_reasoner();
        if !store.snapshot().unwrap().consistency.consistent {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdead_beef);

        let (profile_name, ground) = match rng.gen_range(0..4) {
            0 => ("FullClass", pools.classes[rng.gen_range(0..pools.classes.len())].clone()),
            1 => (
                "FullIndividual",
                pools.individuals[rng.gen_range(0..pools.individuals.len())].clone(),
            ),
            2 => (
                "FullObjectProperty",
                pools.obj_props[rng.gen_range(0..pools.obj_props.len())].clone(),
            ),
            _ if !pools.data_props.is_empty() => (
                "FullDataProperty",
                pools.data_props[rng.gen_range(0..pools.data_props.len())].clone(),
            ),
            _ => continue,
        };
        let profile = registry.get(profile_name).unwrap();
        let mut descriptor = Descriptor::new(profile.clone(), ground.clone(), &mut store).unwrap();

        // (a) read twice: the second intent list is empty
        descriptor.read_axioms(&store).unwrap();
        let second = descriptor.read_axioms(&store).unwrap();
        assert!(second.is_empty(), "seed {seed}: second read not empty: {second:?}");

        // (b) local = asserted slice writes nothing
        let mut mirror = Descriptor::new(profile.clone(), ground.clone(), &mut store).unwrap();
        for kind in profile.expressions.clone() {
            for element in store.enumerate_axioms(&ground, kind).unwrap() {
                mirror.add_entity(kind, element).unwrap();
            }
        }
        let intents = mirror.write_axioms(&mut store).unwrap();
        assert!(intents.is_empty(), "seed {seed}: mirror write not empty: {intents:?}");

        // (c) undo restores the mutated locus bit-exactly
        let kinds: Vec<ExpressionKind> = profile.expressions.iter().copied().collect();
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let edit_target = random_element(&mut rng, &pools, ground.kind, kind);
        if let Some(element) = edit_target {
            let before_store = store.clone();
            let mut editor = Descriptor::new(profile.clone(), ground.clone(), &mut store).unwrap();
            editor.add_entity(kind, element).unwrap();
            let intents = editor.write_axioms(&mut store).unwrap();
            editor.undo_intents(&intents, &mut store).unwrap();
            assert_eq!(store.axioms(), before_store.axioms(), "seed {seed}");
            assert_eq!(store.same_pairs(), before_store.same_pairs(), "seed {seed}");
            assert_eq!(
                store.different_pairs(),
                before_store.different_pairs(),
                "seed {seed}"
            );

            // descriptor-side undo of a read
            let mut reader = Descriptor::new(profile.clone(), ground.clone(), &mut store).unwrap();
            reader.add_entity(kind, random_element(&mut rng, &pools, ground.kind, kind).unwrap())
                .ok();
            let before_sets: Vec<_> = kinds
                .iter()
                .map(|k| reader.entity_set(*k).unwrap().clone())
                .collect();
            let intents = reader.read_axioms(&store).unwrap();
            reader.undo_intents(&intents, &mut store).unwrap();
            let after_sets: Vec<_> = kinds
                .iter()
                .map(|k| reader.entity_set(*k).unwrap().clone())
                .collect();
            assert_eq!(before_sets, after_sets, "seed {seed}");
        }

        // (d) build grounding invariant on every buildable expression
        for (kind, target) in profile.build_targets.clone() {
            let built = descriptor.build(kind, &registry, &mut store).unwrap();
            for b in &built {
                let elements = descriptor.entity_set(kind).unwrap();
                let grounded_from = elements.iter().any(|e| match e {
                    EntitySetElement::Entity(entity) => entity == b.ground(),
                    EntitySetElement::ObjectPair(p, Some(filler)) => {
                        match target.grounding {
                            owlkb::LinkGrounding::Filler => filler == b.ground(),
                            owlkb::LinkGrounding::Property => p == b.ground(),
                        }
                    }
                    EntitySetElement::DataPair(p, Some(_)) => p == b.ground(),
                    _ => false,
                });
                assert!(grounded_from, "seed {seed}: {} not in {kind} set", b.ground());
                // projection: built descriptors reflect the store
                for built_kind in b.profile().expressions.clone() {
                    let expected = b.query(&store, built_kind).unwrap().elements;
                    assert_eq!(
                        b.entity_set(built_kind).unwrap(),
                        &expected,
                        "seed {seed}: projection of {built_kind}"
                    );
                }
            }
        }

        checked += 1;
    }
    println!("PASS criterion 5: {checked} descriptors, zero failures");
}

fn random_element(
    rng: &mut rand_chacha::ChaCha8Rng,
    pools: &common::Pools,
    ground_kind: EntityKind,
    kind: ExpressionKind,
) -> Option<EntitySetElement> {
    use rand::prelude::*;
    let pick_class = |rng: &mut rand_chacha::ChaCha8Rng| {
        pools.classes[rng.gen_range(0..pools.classes.len())].clone()
    };
    let pick_ind = |rng: &mut rand_chacha::ChaCha8Rng| {
        pools.individuals[rng.gen_range(0..pools.individuals.len())].clone()
    };
    let pick_oprop = |rng: &mut rand_chacha::ChaCha8Rng| {
        pools.obj_props[rng.gen_range(0..pools.obj_props.len())].clone()
    };
    let pick_dprop = |rng: &mut rand_chacha::ChaCha8Rng| {
        if pools.data_props.is_empty() {
            None
        } else {
            Some(pools.data_props[rng.gen_range(0..pools.data_props.len())].clone())
        }
    };
    use ExpressionKind::*;
    Some(match (ground_kind, kind) {
        (EntityKind::Class, Instance) => EntitySetElement::entity(pick_ind(rng)),
        (EntityKind::Class, EquivalentRestriction) => {
            EntitySetElement::restriction(Restriction::bare_class(pick_class(rng)).unwrap())
        }
        (EntityKind::Class, _) => EntitySetElement::entity(pick_class(rng)),
        (EntityKind::NamedIndividual, Type) => EntitySetElement::entity(pick_class(rng)),
        (EntityKind::NamedIndividual, ObjectLink) => {
            EntitySetElement::object_pair(pick_oprop(rng), pick_ind(rng))
        }
        (EntityKind::NamedIndividual, DataLink) => {
            EntitySetElement::data_pair(pick_dprop(rng)?, LiteralValue::integer(7))
        }
        (EntityKind::NamedIndividual, _) => EntitySetElement::entity(pick_ind(rng)),
        (EntityKind::ObjectProperty, Domain | Range) => {
            EntitySetElement::restriction(Restriction::bare_class(pick_class(rng)).unwrap())
        }
        (EntityKind::ObjectProperty, _) => EntitySetElement::entity(pick_oprop(rng)),
        (EntityKind::DataProperty, Domain) => {
            EntitySetElement::restriction(Restriction::bare_class(pick_class(rng)).unwrap())
        }
        (EntityKind::DataProperty, Range) => {
            EntitySetElement::restriction(Restriction::BareClass(datatypes::integer()))
        }
        (EntityKind::DataProperty, _) => EntitySetElement::entity(pick_dprop(rng)?),
        (EntityKind::Datatype, _) => return None,
    })
}

/// Criterion 6: exactly the classes without entailed strict subclasses have
/// a Sub entity set of size one holding the bottom class.
#[test]
fn criterion_6_leaf_rule() {
    let mut store = fixture_store();
    store.synchronise_reasoner();
    let strict_below = common::graph_strict_subclasses(&store);
    let nothing = EntityRef::nothing();

    let mut leaves = Vec::new();
    for class_ref in store
        .declared_of_kind(EntityKind::Class)
        .cloned()
        .collect::<Vec<_>>()
    {
        if class_ref.is_nothing() {
            continue;
        }
        let subs = store
            .entailed_entity_set(&class_ref, ExpressionKind::Sub)
            .unwrap();
        let leaf_by_set =
            subs.len() == 1 && subs.contains(&EntitySetElement::entity(nothing.clone()));
        let below = &strict_below[&class_ref.iri];
        let leaf_by_graph = below.iter().all(|iri| *iri == nothing.iri);
        assert_eq!(
            leaf_by_set, leaf_by_graph,
            "disagreement on {class_ref}: Sub set {subs:?}, graph below {below:?}"
        );
        if leaf_by_set {
            leaves.push(class_ref.iri.to_string());
        }
    }
    leaves.sort();
    assert_eq!(leaves, [":CORRIDOR", ":DOOR", ":ROBOT", ":ROOM"]);
    println!("PASS criterion 6: leaf rule verified against graph oracle");
}

/// Criterion 7: parse/serialize round trips for the fixture and the random
/// stores, plus a crash-free fuzz run over random byte strings.
#[test]
fn criterion_7_syntax_round_trip_and_fuzz() {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    let fixture = fixture_store();
    let reparsed = parse_document(&serialize_store(&fixture)).expect("fixture round trip");
    assert!(fixture.same_asserted_state(&reparsed));

    for seed in 0..500u64 {
        let store = random_store(seed);
        let text = serialize_store(&store);
        let reparsed = parse_document(&text)
            .unwrap_or_else(|e| panic!("seed {seed}: reparse failed: {e}\n{text}"));
        assert!(
            store.same_asserted_state(&reparsed),
            "seed {seed}: round trip diverged"
        );
        // canonical idempotence
        assert_eq!(text, serialize_store(&reparsed), "seed {seed}");
    }

    // fuzz: arbitrary byte soup and token soup must only produce positioned
    // errors, never panics
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xf0220f);
    let tokens = [
        "Prefix", "Ontology", "SubClassOf", "EquivalentClasses", "Declaration", "Class",
        "ObjectIntersectionOf", "ObjectMinCardinality", "DataPropertyAssertion", "(", ")", ":",
        ":A", "xsd:integer", "\"24\"", "^^", "=", "<http://x#>", "2", "\n",
    ];
    for round in 0..100_000u32 {
        let text: String = if round % 2 == 0 {
            let len = rng.gen_range(0..120);
            let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            String::from_utf8_lossy(&bytes).into_owned()
        } else {
            let len = rng.gen_range(0..24);
            (0..len)
                .map(|_| tokens[rng.gen_range(0..tokens.len())])
                .collect::<Vec<_>>()
                .join(" ")
        };
        let outcome = std::panic::catch_unwind(|| parse_document(&text));
        match outcome {
            Ok(Ok(_)) => {}
            Ok(Err(e)) => {
                assert!(e.line >= 1 && e.col >= 1, "unpositioned error for {text:?}");
            }
            Err(_) => panic!("parser panicked on input {text:?}"),
        }
    }
    let elapsed = start.elapsed();
    println!("PASS criterion 7: round trips exact, 100000 fuzz inputs crash-free in {elapsed:?}");
}

/// Intent soundness: forward replay of ontology-locus intents reproduces the
/// scenario's end state from the original store.
#[test]
fn intent_forward_replay_matches_end_state() {
    let original = fixture_store();
    let output = scenario::write_read_cycle(original.clone()).expect("scenario runs");

    let mut replayed = original;
    for intent in output
        .intents
        .iter()
        .filter(|i| i.locus == Locus::OntologyState)
    {
        let axiom = Axiom::new(intent.ground.clone(), intent.expression, intent.element.clone());
        match intent.change {
            owlkb::ChangeKind::Added => {
                replayed.assert_axiom(&axiom).unwrap();
            }
            owlkb::ChangeKind::Removed => {
                replayed.retract_axiom(&axiom);
            }
            owlkb::ChangeKind::SkippedPin => {}
        }
    }
    assert_eq!(replayed.axioms(), output.store.axioms());
    println!("PASS intent replay: forward application reproduces the end state");
}

/// The random corpus genuinely exercises the reasoner: every consistency
/// rule fires somewhere in the 500 seeds, both verdicts occur, and
/// classification adds types beyond the asserted ones.
#[test]
fn random_corpus_covers_the_rule_surface() {
    use owlkb::RuleId;
    let mut fired: BTreeSet<RuleId> = BTreeSet::new();
    let mut consistent = 0usize;
    let mut inconsistent = 0usize;
    let mut with_unsat = 0usize;
    let mut classified_extra = 0usize;
    for seed in 0..500u64 {
        let mut store = random_store(seed);
        let asserted_types = store
            .axioms()
            .iter()
            .filter(|a| a.expression == ExpressionKind::Type)
            .count();
        let snapshot = store.synchronise_reasoner();
        for violation in &snapshot.consistency.violations {
            fired.insert(violation.rule);
        }
        if snapshot.consistency.consistent {
            consistent += 1;
        } else {
            inconsistent += 1;
        }
        if !snapshot.consistency.unsatisfiable_classes.is_empty() {
            with_unsat += 1;
        }
        let entailed_types = snapshot
            .entailed
            .iter()
            .filter(|a| a.expression == ExpressionKind::Type)
            .count();
        if entailed_types > asserted_types {
            classified_extra += 1;
        }
    }
    assert!(consistent > 0 && inconsistent > 0, "both verdicts must occur");
    assert!(with_unsat > 0, "no unsatisfiable classes generated");
    assert!(classified_extra > 400, "inference rarely added types");
    for rule in [RuleId::V1, RuleId::V2, RuleId::V3, RuleId::V4, RuleId::V5] {
        assert!(fired.contains(&rule), "{rule} never fired across the corpus");
    }
    println!(
        "PASS rule coverage: {consistent} consistent / {inconsistent} inconsistent, all of V1-V5 fired"
    );
}

/// Reasoner monotonicity spot check: entailments of a consistent store are
/// preserved when more axioms are asserted (sampled over random stores).
#[test]
fn monotonicity_over_random_extensions() {
    for seed in 0..40u64 {
        let mut store = random_store(seed);
        let base = store.synchronise_reasoner();
        if !base.consistency.consistent {
            continue;
        }
        let extension = Axiom::new(
            class("Cmono"),
            ExpressionKind::Super,
            EntitySetElement::entity(class("C0")),
        );
        store.assert_axiom(&extension).unwrap();
        let extended = store.synchronise_reasoner();
        if !extended.consistency.consistent {
            continue;
        }
        for axiom in &base.entailed {
            assert!(
                extended.is_entailed(axiom),
                "seed {seed}: lost entailment {axiom}"
            );
        }
    }
    println!("PASS monotonicity: entailments preserved under extension");
}
