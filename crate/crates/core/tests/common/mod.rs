//! Shared test support: seeded random store generation within the oracle
//! bounds (at most 15 classes, 20 individuals, 8 properties).

use owlkb::{
    Axiom, Cardinality, EntityKind, EntityRef, EntitySetElement, ExpressionKind, IdentityPair,
    Iri, LiteralValue, Ontology, Restriction,
};
use owlkb::store::Characteristic;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn class(name: &str) -> EntityRef {
    EntityRef::class(Iri::local(name))
}

pub fn indiv(name: &str) -> EntityRef {
    EntityRef::individual(Iri::local(name))
}

pub fn oprop(name: &str) -> EntityRef {
    EntityRef::object_property(Iri::local(name))
}

pub fn dprop(name: &str) -> EntityRef {
    EntityRef::data_property(Iri::local(name))
}

pub struct Pools {
    pub classes: Vec<EntityRef>,
    pub individuals: Vec<EntityRef>,
    pub obj_props: Vec<EntityRef>,
    pub data_props: Vec<EntityRef>,
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

fn random_literal(rng: &mut ChaCha8Rng) -> LiteralValue {
    match rng.gen_range(0..4) {
        0 => LiteralValue::integer(rng.gen_range(1..=5)),
        1 => LiteralValue::boolean(rng.gen_bool(0.5)),
        2 => LiteralValue::string(["low", "high"][rng.gen_range(0..2)]),
        _ => LiteralValue::typed(format!("{}.5", rng.gen_range(0..3)), owlkb::model::datatypes::decimal())
            .expect("decimal literal"),
    }
}

fn random_cardinality(rng: &mut ChaCha8Rng) -> Cardinality {
    match rng.gen_range(0..5) {
        0 => Cardinality::Some,
        1 => Cardinality::Only,
        2 => Cardinality::Min(rng.gen_range(1..=3)),
        3 => Cardinality::Max(rng.gen_range(1..=2)),
        _ => Cardinality::Exact(rng.gen_range(1..=2)),
    }
}

fn random_restriction(rng: &mut ChaCha8Rng, pools: &Pools) -> Restriction {
    match rng.gen_range(0..100) {
        0..=34 => Restriction::bare_class(pick(rng, &pools.classes).clone()).unwrap(),
        35..=69 => Restriction::object(
            random_cardinality(rng),
            pick(rng, &pools.obj_props).clone(),
            pick(rng, &pools.classes).clone(),
        )
        .unwrap(),
        70..=84 if !pools.data_props.is_empty() => Restriction::data(
            random_cardinality(rng),
            pick(rng, &pools.data_props).clone(),
            owlkb::model::datatypes::integer(),
        )
        .unwrap(),
        _ => Restriction::class_cardinality(
            random_cardinality(rng),
            pick(rng, &pools.classes).clone(),
        )
        .unwrap(),
    }
}

/// A seeded random store with random axioms over every legal row, random
/// characteristics and identity pairs, and a random unique-name setting.
/// Inconsistent stores are legitimate outputs.
pub fn random_store(seed: u64) -> Ontology {
    let (store, _) = random_store_with_pools(seed);
    store
}

pub fn random_store_with_pools(seed: u64) -> (Ontology, Pools) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut store = Ontology::with_default_prefix(
        format!("random{seed}"),
        "http://example.org/random#",
    );
    store.set_unique_name_assumption(rng.gen_bool(0.7));

    let pools = Pools {
        classes: (0..rng.gen_range(2..=13)).map(|i| class(&format!("C{i}"))).collect(),
        individuals: (0..rng.gen_range(1..=20)).map(|i| indiv(&format!("i{i}"))).collect(),
        obj_props: (0..rng.gen_range(1..=5)).map(|i| oprop(&format!("p{i}"))).collect(),
        data_props: (0..rng.gen_range(0..=3)).map(|i| dprop(&format!("d{i}"))).collect(),
    };
    for e in pools
        .classes
        .iter()
        .chain(&pools.individuals)
        .chain(&pools.obj_props)
        .chain(&pools.data_props)
    {
        store.declare(e.clone());
    }

    // class hierarchy, equivalence, disjointness
    for _ in 0..rng.gen_range(0..=12) {
        let a = pick(&mut rng, &pools.classes).clone();
        let b = pick(&mut rng, &pools.classes).clone();
        let expr = *pick(
            &mut rng,
            &[
                ExpressionKind::Super,
                ExpressionKind::Super,
                ExpressionKind::Sub,
                ExpressionKind::Equivalent,
                ExpressionKind::Disjoint,
            ],
        );
        store
            .assert_axiom(&Axiom::new(a, expr, EntitySetElement::entity(b)))
            .unwrap();
    }

    // restriction definitions on a few classes
    for _ in 0..rng.gen_range(0..=3) {
        let defined = pick(&mut rng, &pools.classes).clone();
        for _ in 0..rng.gen_range(1..=2) {
            let r = random_restriction(&mut rng, &pools);
            store
                .assert_axiom(&Axiom::new(
                    defined.clone(),
                    ExpressionKind::EquivalentRestriction,
                    EntitySetElement::restriction(r),
                ))
                .unwrap();
        }
    }

    // object property box
    for _ in 0..rng.gen_range(0..=4) {
        if pools.obj_props.len() < 2 {
            break;
        }
        let a = pick(&mut rng, &pools.obj_props).clone();
        let b = pick(&mut rng, &pools.obj_props).clone();
        let expr = *pick(
            &mut rng,
            &[
                ExpressionKind::Super,
                ExpressionKind::Sub,
                ExpressionKind::Equivalent,
                ExpressionKind::Disjoint,
                ExpressionKind::Inverse,
            ],
        );
        store
            .assert_axiom(&Axiom::new(a, expr, EntitySetElement::entity(b)))
            .unwrap();
    }
    for _ in 0..rng.gen_range(0..=2) {
        let p = pick(&mut rng, &pools.obj_props).clone();
        let expr = *pick(&mut rng, &[ExpressionKind::Domain, ExpressionKind::Range]);
        let r = if rng.gen_bool(0.8) {
            Restriction::bare_class(pick(&mut rng, &pools.classes).clone()).unwrap()
        } else {
            random_restriction(&mut rng, &pools)
        };
        store
            .assert_axiom(&Axiom::new(p, expr, EntitySetElement::restriction(r)))
            .unwrap();
    }
    for p in &pools.obj_props {
        if rng.gen_bool(0.15) {
            store
                .set_characteristic(p, Characteristic::Transitive, true)
                .unwrap();
        }
        if rng.gen_bool(0.25) {
            store
                .set_characteristic(p, Characteristic::Symmetric, true)
                .unwrap();
        }
    }

    // data property box
    if pools.data_props.len() >= 2 {
        for _ in 0..rng.gen_range(0..=2) {
            let a = pick(&mut rng, &pools.data_props).clone();
            let b = pick(&mut rng, &pools.data_props).clone();
            let expr = *pick(
                &mut rng,
                &[
                    ExpressionKind::Super,
                    ExpressionKind::Equivalent,
                    ExpressionKind::Disjoint,
                ],
            );
            store
                .assert_axiom(&Axiom::new(a, expr, EntitySetElement::entity(b)))
                .unwrap();
        }
    }
    for d in &pools.data_props {
        if rng.gen_bool(0.3) {
            store
                .assert_axiom(&Axiom::new(
                    d.clone(),
                    ExpressionKind::Domain,
                    EntitySetElement::restriction(
                        Restriction::bare_class(pick(&mut rng, &pools.classes).clone()).unwrap(),
                    ),
                ))
                .unwrap();
        }
        if rng.gen_bool(0.3) {
            store
                .assert_axiom(&Axiom::new(
                    d.clone(),
                    ExpressionKind::Range,
                    EntitySetElement::restriction(Restriction::BareClass(
                        owlkb::model::datatypes::integer(),
                    )),
                ))
                .unwrap();
        }
    }

    // assertions
    for _ in 0..rng.gen_range(0..=15) {
        let i = pick(&mut rng, &pools.individuals).clone();
        let c = pick(&mut rng, &pools.classes).clone();
        store
            .assert_axiom(&Axiom::new(i, ExpressionKind::Type, EntitySetElement::entity(c)))
            .unwrap();
    }
    for _ in 0..rng.gen_range(0..=25) {
        let s = pick(&mut rng, &pools.individuals).clone();
        let p = pick(&mut rng, &pools.obj_props).clone();
        let o = pick(&mut rng, &pools.individuals).clone();
        store
            .assert_axiom(&Axiom::new(
                s,
                ExpressionKind::ObjectLink,
                EntitySetElement::object_pair(p, o),
            ))
            .unwrap();
    }
    if !pools.data_props.is_empty() {
        for _ in 0..rng.gen_range(0..=10) {
            let s = pick(&mut rng, &pools.individuals).clone();
            let p = pick(&mut rng, &pools.data_props).clone();
            store
                .assert_axiom(&Axiom::new(
                    s,
                    ExpressionKind::DataLink,
                    EntitySetElement::data_pair(p, random_literal(&mut rng)),
                ))
                .unwrap();
        }
    }

    // identity pairs; Different on one individual is rejected, skip those draws
    for _ in 0..rng.gen_range(0..=4) {
        let a = pick(&mut rng, &pools.individuals).clone();
        let b = pick(&mut rng, &pools.individuals).clone();
        let pair = if rng.gen_bool(0.5) {
            IdentityPair::same(a, b)
        } else {
            IdentityPair::different(a, b)
        };
        let _ = store.assert_identity(&pair);
    }

    (store, pools)
}

/// Reachability-based leaf oracle: strict subclass sets computed by plain
/// breadth-first search over the asserted edges plus top/bottom scaffolding,
/// independent of both reasoner implementations.
#[allow(dead_code)] // each integration test target compiles its own copy
pub fn graph_strict_subclasses(store: &Ontology) -> std::collections::BTreeMap<Iri, std::collections::BTreeSet<Iri>> {
    use std::collections::{BTreeMap, BTreeSet, VecDeque};
    let classes: Vec<Iri> = store
        .declared_of_kind(EntityKind::Class)
        .map(|e| e.iri.clone())
        .collect();
    let thing = EntityRef::thing().iri;
    let nothing = EntityRef::nothing().iri;

    // edges sub -> super
    let mut up: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    let mut add = |a: &Iri, b: &Iri| {
        up.entry(a.clone()).or_default().insert(b.clone());
    };
    for c in &classes {
        add(c, &thing);
        add(&nothing, c);
    }
    for axiom in store.axioms() {
        if axiom.subject.kind != EntityKind::Class {
            continue;
        }
        if let EntitySetElement::Entity(other) = &axiom.object {
            match axiom.expression {
                ExpressionKind::Super => add(&axiom.subject.iri, &other.iri),
                ExpressionKind::Equivalent => {
                    add(&axiom.subject.iri, &other.iri);
                    add(&other.iri, &axiom.subject.iri);
                }
                _ => {}
            }
        }
    }

    let reachable = |from: &Iri| -> BTreeSet<Iri> {
        let mut seen = BTreeSet::from([from.clone()]);
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(node) = queue.pop_front() {
            if let Some(nexts) = up.get(&node) {
                for next in nexts {
                    if seen.insert(next.clone()) {
                        queue.push_back(next.clone());
                    }
                }
            }
        }
        seen
    };

    let ups: BTreeMap<Iri, BTreeSet<Iri>> =
        classes.iter().map(|c| (c.clone(), reachable(c))).collect();
    let mut out = BTreeMap::new();
    for c in &classes {
        let mut below = BTreeSet::new();
        for d in &classes {
            if d == c {
                continue;
            }
            let d_le_c = ups[d].contains(c);
            let c_le_d = ups[c].contains(d);
            if d_le_c && !c_le_d {
                below.insert(d.clone());
            }
        }
        out.insert(c.clone(), below);
    }
    out
}
