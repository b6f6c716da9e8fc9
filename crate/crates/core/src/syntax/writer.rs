//! Canonical serializer: the inverse of the parser over asserted content.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{
    datatypes, Axiom, Cardinality, EntityKind, EntityRef, EntitySetElement, ExpressionKind, Iri,
    Restriction,
};
use crate::store::Ontology;

/// Render the asserted store in canonical form: prefixes first, then one
/// statement per line sorted by (form, text). The result parses back to an
/// equal store.
pub fn serialize_store(store: &Ontology) -> String {
    let mut out = String::new();
    let mut prefixes = store.prefixes().clone();
    // a default prefix must exist whenever default-prefixed names occur
    prefixes
        .entry(String::new())
        .or_insert_with(|| "urn:owlkb:default#".to_string());
    for (prefix, base) in &prefixes {
        out.push_str(&format!("Prefix({prefix}:=<{base}>)\n"));
    }
    if store.ontology_iri().is_empty() {
        out.push_str("Ontology(\n");
    } else {
        out.push_str(&format!("Ontology(<{}>\n", store.ontology_iri()));
    }

    let mut statements: Vec<(u8, String)> = Vec::new();

    for entity in store.declarations() {
        if entity == &EntityRef::thing() || entity == &EntityRef::nothing() {
            continue;
        }
        if datatypes::builtins().contains(entity) {
            continue;
        }
        statements.push((
            0,
            format!("Declaration({}({}))", entity.kind.label(), entity.iri),
        ));
    }

    // equivalent-restriction sets group into one statement per class
    let mut restriction_sets: BTreeMap<Iri, BTreeSet<Restriction>> = BTreeMap::new();
    for axiom in store.axioms() {
        if axiom.expression == ExpressionKind::EquivalentRestriction {
            if let EntitySetElement::Restriction(r) = &axiom.object {
                restriction_sets
                    .entry(axiom.subject.iri.clone())
                    .or_default()
                    .insert(r.clone());
            }
            continue;
        }
        if let Some(stmt) = render_axiom(axiom) {
            statements.push(stmt);
        }
    }
    for (class, atoms) in restriction_sets {
        let rendered: Vec<String> = atoms.iter().map(render_atom).collect();
        statements.push((
            2,
            format!(
                "EquivalentClasses({class} ObjectIntersectionOf({}))",
                rendered.join(" ")
            ),
        ));
    }

    for (property, flags) in store.characteristics() {
        if flags.transitive {
            statements.push((13, format!("TransitiveObjectProperty({property})")));
        }
        if flags.symmetric {
            statements.push((14, format!("SymmetricObjectProperty({property})")));
        }
    }
    for (a, b) in store.same_pairs() {
        statements.push((20, format!("SameIndividual({a} {b})")));
    }
    for (a, b) in store.different_pairs() {
        statements.push((21, format!("DifferentIndividuals({a} {b})")));
    }

    statements.sort();
    statements.dedup();
    for (_, line) in statements {
        out.push_str("  ");
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(")\n");
    out
}

fn render_axiom(axiom: &Axiom) -> Option<(u8, String)> {
    use ExpressionKind::*;
    let subject = &axiom.subject;
    match (subject.kind, axiom.expression, &axiom.object) {
        (EntityKind::Class, Super, EntitySetElement::Entity(sup)) => {
            Some((1, format!("SubClassOf({} {})", subject.iri, sup.iri)))
        }
        (EntityKind::Class, Equivalent, EntitySetElement::Entity(other)) => Some((
            2,
            format!("EquivalentClasses({} {})", subject.iri, other.iri),
        )),
        (EntityKind::Class, Disjoint, EntitySetElement::Entity(other)) => Some((
            3,
            format!("DisjointClasses({} {})", subject.iri, other.iri),
        )),
        (EntityKind::NamedIndividual, Type, EntitySetElement::Entity(class)) => Some((
            4,
            format!("ClassAssertion({} {})", class.iri, subject.iri),
        )),
        (EntityKind::NamedIndividual, ObjectLink, EntitySetElement::ObjectPair(p, Some(b))) => {
            Some((
                5,
                format!("ObjectPropertyAssertion({} {} {})", p.iri, subject.iri, b.iri),
            ))
        }
        (EntityKind::NamedIndividual, DataLink, EntitySetElement::DataPair(p, Some(lit))) => {
            Some((
                6,
                format!(
                    "DataPropertyAssertion({} {} \"{}\"^^{})",
                    p.iri,
                    subject.iri,
                    escape(lit.lexical()),
                    lit.datatype().iri
                ),
            ))
        }
        (EntityKind::ObjectProperty, Super, EntitySetElement::Entity(sup)) => Some((
            7,
            format!("SubObjectPropertyOf({} {})", subject.iri, sup.iri),
        )),
        (EntityKind::ObjectProperty, Equivalent, EntitySetElement::Entity(other)) => Some((
            8,
            format!("EquivalentObjectProperties({} {})", subject.iri, other.iri),
        )),
        (EntityKind::ObjectProperty, Disjoint, EntitySetElement::Entity(other)) => Some((
            9,
            format!("DisjointObjectProperties({} {})", subject.iri, other.iri),
        )),
        (EntityKind::ObjectProperty, Inverse, EntitySetElement::Entity(other)) => Some((
            10,
            format!("InverseObjectProperties({} {})", subject.iri, other.iri),
        )),
        (EntityKind::ObjectProperty, Domain, EntitySetElement::Restriction(r)) => Some((
            11,
            format!("ObjectPropertyDomain({} {})", subject.iri, render_atom(r)),
        )),
        (EntityKind::ObjectProperty, Range, EntitySetElement::Restriction(r)) => Some((
            12,
            format!("ObjectPropertyRange({} {})", subject.iri, render_atom(r)),
        )),
        (EntityKind::DataProperty, Super, EntitySetElement::Entity(sup)) => Some((
            15,
            format!("SubDataPropertyOf({} {})", subject.iri, sup.iri),
        )),
        (EntityKind::DataProperty, Equivalent, EntitySetElement::Entity(other)) => Some((
            16,
            format!("EquivalentDataProperties({} {})", subject.iri, other.iri),
        )),
        (EntityKind::DataProperty, Disjoint, EntitySetElement::Entity(other)) => Some((
            17,
            format!("DisjointDataProperties({} {})", subject.iri, other.iri),
        )),
        (EntityKind::DataProperty, Domain, EntitySetElement::Restriction(r)) => Some((
            18,
            format!("DataPropertyDomain({} {})", subject.iri, render_atom(r)),
        )),
        (EntityKind::DataProperty, Range, EntitySetElement::Restriction(Restriction::BareClass(t))) => {
            Some((19, format!("DataPropertyRange({} {})", subject.iri, t.iri)))
        }
        _ => None,
    }
}

fn render_atom(r: &Restriction) -> String {
    match r {
        Restriction::BareClass(c) => c.iri.to_string(),
        Restriction::ClassCardinality(card, c) => match card {
            Cardinality::Some => format!("ClassSomeValues({})", c.iri),
            Cardinality::Only => format!("ClassAllValues({})", c.iri),
            Cardinality::Min(n) => format!("ClassMinCardinality({n} {})", c.iri),
            Cardinality::Max(n) => format!("ClassMaxCardinality({n} {})", c.iri),
            Cardinality::Exact(n) => format!("ClassExactCardinality({n} {})", c.iri),
        },
        Restriction::ObjectRestriction(card, p, c) => match card {
            Cardinality::Some => format!("ObjectSomeValuesFrom({} {})", p.iri, c.iri),
            Cardinality::Only => format!("ObjectAllValuesFrom({} {})", p.iri, c.iri),
            Cardinality::Min(n) => format!("ObjectMinCardinality({n} {} {})", p.iri, c.iri),
            Cardinality::Max(n) => format!("ObjectMaxCardinality({n} {} {})", p.iri, c.iri),
            Cardinality::Exact(n) => format!("ObjectExactCardinality({n} {} {})", p.iri, c.iri),
        },
        Restriction::DataRestriction(card, p, t) => match card {
            Cardinality::Some => format!("DataSomeValuesFrom({} {})", p.iri, t.iri),
            Cardinality::Only => format!("DataAllValuesFrom({} {})", p.iri, t.iri),
            Cardinality::Min(n) => format!("DataMinCardinality({n} {} {})", p.iri, t.iri),
            Cardinality::Max(n) => format!("DataMaxCardinality({n} {} {})", p.iri, t.iri),
            Cardinality::Exact(n) => format!("DataExactCardinality({n} {} {})", p.iri, t.iri),
        },
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
