//! Reference reasoner: blind fixpoint over flat fact relations.
//!
//! [`naive_fixpoint_oracle`] has the same result contract as
//! `Ontology::synchronise_reasoner` but is written as the dumbest correct
//! thing: every rule is re-applied against every fact combination until
//! nothing changes. No indices, no reachability matrices, no worklists, no
//! union-find. It exists to cross-check the production engine on small
//! stores (roughly up to 15 classes and 20 individuals) and shares nothing
//! with it beyond the entity model and the snapshot type.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{
    Axiom, Cardinality, EntityKind, EntityRef, EntitySetElement, ExpressionKind, Iri,
    LiteralValue, Restriction,
};
use crate::reasoner::{ConsistencyReport, InferenceSnapshot, RuleId, Violation};
use crate::store::Ontology;

type Pair = (Iri, Iri);
type Triple = (Iri, Iri, Iri);

/// All raw relations the blind rules operate on. `sub` relations are
/// non-strict (reflexive); strictness is projected out at assembly time.
#[derive(Default)]
struct Facts {
    class_sub: BTreeSet<Pair>,
    class_disjoint: BTreeSet<Pair>,
    oprop_sub: BTreeSet<Pair>,
    dprop_sub: BTreeSet<Pair>,
    oprop_disjoint: BTreeSet<Pair>,
    dprop_disjoint: BTreeSet<Pair>,
    inverse: BTreeSet<Pair>,
    domain: BTreeSet<(Iri, EntityKind, Restriction)>,
    range: BTreeSet<(Iri, EntityKind, Restriction)>,
    same: BTreeSet<Pair>,
    different: BTreeSet<Pair>,
    types: BTreeSet<Pair>,
    obj_links: BTreeSet<Triple>,
    data_links: BTreeSet<(Iri, Iri, LiteralValue)>,
}

impl Facts {
    fn size(&self) -> usize {
        self.class_sub.len()
            + self.class_disjoint.len()
            + self.oprop_sub.len()
            + self.dprop_sub.len()
            + self.oprop_disjoint.len()
            + self.dprop_disjoint.len()
            + self.inverse.len()
            + self.domain.len()
            + self.range.len()
            + self.same.len()
            + self.different.len()
            + self.types.len()
            + self.obj_links.len()
            + self.data_links.len()
    }
}

/// Compute the snapshot by blind rule application until fixpoint.
pub fn naive_fixpoint_oracle(store: &Ontology) -> InferenceSnapshot {
    let classes: Vec<Iri> = store
        .declared_of_kind(EntityKind::Class)
        .map(|e| e.iri.clone())
        .collect();
    let individuals: Vec<Iri> = store
        .declared_of_kind(EntityKind::NamedIndividual)
        .map(|e| e.iri.clone())
        .collect();
    let thing = EntityRef::thing().iri;
    let nothing = EntityRef::nothing().iri;

    let mut facts = seed(store, &classes, &individuals, &thing, &nothing);
    let restriction_sets = asserted_restrictions(store);

    loop {
        let before = facts.size();
        step(store, &mut facts, &restriction_sets, &nothing);
        if facts.size() == before {
            break;
        }
    }

    assemble(
        store,
        &facts,
        &restriction_sets,
        &classes,
        &individuals,
        &thing,
        &nothing,
    )
}

fn seed(
    store: &Ontology,
    classes: &[Iri],
    individuals: &[Iri],
    thing: &Iri,
    nothing: &Iri,
) -> Facts {
    let mut f = Facts::default();
    for c in classes {
        f.class_sub.insert((c.clone(), c.clone()));
        f.class_sub.insert((c.clone(), thing.clone()));
        f.class_sub.insert((nothing.clone(), c.clone()));
    }
    for p in store.declared_of_kind(EntityKind::ObjectProperty) {
        f.oprop_sub.insert((p.iri.clone(), p.iri.clone()));
    }
    for p in store.declared_of_kind(EntityKind::DataProperty) {
        f.dprop_sub.insert((p.iri.clone(), p.iri.clone()));
    }
    for i in individuals {
        f.same.insert((i.clone(), i.clone()));
        f.types.insert((i.clone(), thing.clone()));
    }
    for (a, b) in store.same_pairs() {
        f.same.insert((a.clone(), b.clone()));
    }
    for (a, b) in store.different_pairs() {
        f.different.insert((a.clone(), b.clone()));
    }

    for axiom in store.axioms() {
        let subject = &axiom.subject;
        match (&axiom.expression, &axiom.object) {
            (ExpressionKind::Super, EntitySetElement::Entity(sup)) => {
                let rel = match subject.kind {
                    EntityKind::Class => &mut f.class_sub,
                    EntityKind::ObjectProperty => &mut f.oprop_sub,
                    EntityKind::DataProperty => &mut f.dprop_sub,
                    _ => continue,
                };
                rel.insert((subject.iri.clone(), sup.iri.clone()));
            }
            (ExpressionKind::Equivalent, EntitySetElement::Entity(other)) => {
                let rel = match subject.kind {
                    EntityKind::Class => &mut f.class_sub,
                    EntityKind::ObjectProperty => &mut f.oprop_sub,
                    EntityKind::DataProperty => &mut f.dprop_sub,
                    _ => continue,
                };
                rel.insert((subject.iri.clone(), other.iri.clone()));
                rel.insert((other.iri.clone(), subject.iri.clone()));
            }
            (ExpressionKind::Disjoint, EntitySetElement::Entity(other)) => {
                let rel = match subject.kind {
                    EntityKind::Class => &mut f.class_disjoint,
                    EntityKind::ObjectProperty => &mut f.oprop_disjoint,
                    EntityKind::DataProperty => &mut f.dprop_disjoint,
                    _ => continue,
                };
                rel.insert((subject.iri.clone(), other.iri.clone()));
                rel.insert((other.iri.clone(), subject.iri.clone()));
            }
            (ExpressionKind::Inverse, EntitySetElement::Entity(other)) => {
                f.inverse.insert((subject.iri.clone(), other.iri.clone()));
                f.inverse.insert((other.iri.clone(), subject.iri.clone()));
            }
            (ExpressionKind::Domain, EntitySetElement::Restriction(r)) => {
                f.domain.insert((subject.iri.clone(), subject.kind, r.clone()));
            }
            (ExpressionKind::Range, EntitySetElement::Restriction(r)) => {
                f.range.insert((subject.iri.clone(), subject.kind, r.clone()));
            }
            (ExpressionKind::Type, EntitySetElement::Entity(class)) => {
                f.types.insert((subject.iri.clone(), class.iri.clone()));
            }
            (ExpressionKind::ObjectLink, EntitySetElement::ObjectPair(p, Some(b))) => {
                f.obj_links
                    .insert((subject.iri.clone(), p.iri.clone(), b.iri.clone()));
            }
            (ExpressionKind::DataLink, EntitySetElement::DataPair(p, Some(lit))) => {
                f.data_links
                    .insert((subject.iri.clone(), p.iri.clone(), lit.clone()));
            }
            _ => {}
        }
    }
    f
}

fn asserted_restrictions(store: &Ontology) -> BTreeMap<Iri, BTreeSet<Restriction>> {
    let mut out: BTreeMap<Iri, BTreeSet<Restriction>> = BTreeMap::new();
    for axiom in store.axioms() {
        if axiom.expression == ExpressionKind::EquivalentRestriction {
            if let EntitySetElement::Restriction(r) = &axiom.object {
                out.entry(axiom.subject.iri.clone())
                    .or_default()
                    .insert(r.clone());
            }
        }
    }
    out
}

/// One blind pass of every rule.
fn step(
    store: &Ontology,
    f: &mut Facts,
    restriction_sets: &BTreeMap<Iri, BTreeSet<Restriction>>,
    nothing: &Iri,
) {
    // Tr-Sub / Tr-P: transitivity of the three sub relations
    for rel in [&mut f.class_sub, &mut f.oprop_sub, &mut f.dprop_sub] {
        let mut grown: BTreeSet<Pair> = BTreeSet::new();
        for (a, b) in rel.iter() {
            for (b2, c) in rel.iter() {
                if b == b2 {
                    grown.insert((a.clone(), c.clone()));
                }
            }
        }
        rel.extend(grown);
    }

    // Dj-C: disjointness propagates to subclasses (either side) and is
    // symmetric
    {
        let mut grown: BTreeSet<Pair> = BTreeSet::new();
        for (a, b) in &f.class_disjoint {
            grown.insert((b.clone(), a.clone()));
            for (x, a2) in &f.class_sub {
                if a2 == a {
                    grown.insert((x.clone(), b.clone()));
                }
            }
        }
        f.class_disjoint.extend(grown);
    }

    // V5 rule part one: a class below something it is disjoint from sinks
    // to the bottom group
    {
        let mut grown: BTreeSet<Pair> = BTreeSet::new();
        for (x, d) in &f.class_sub {
            if f.class_disjoint.contains(&(x.clone(), d.clone())) {
                grown.insert((x.clone(), nothing.clone()));
            }
        }
        f.class_sub.extend(grown);
    }

    // Eq-P sharing: disjointness, inversion, domain and range carry over to
    // equivalent properties
    {
        let eq_opairs: Vec<Pair> = f
            .oprop_sub
            .iter()
            .filter(|(p, q)| f.oprop_sub.contains(&(q.clone(), p.clone())))
            .cloned()
            .collect();
        let eq_dpairs: Vec<Pair> = f
            .dprop_sub
            .iter()
            .filter(|(p, q)| f.dprop_sub.contains(&(q.clone(), p.clone())))
            .cloned()
            .collect();
        let mut grown_disj: BTreeSet<Pair> = BTreeSet::new();
        for (a, b) in &f.oprop_disjoint {
            for (p, q) in &eq_opairs {
                if p == a {
                    grown_disj.insert((q.clone(), b.clone()));
                    grown_disj.insert((b.clone(), q.clone()));
                }
            }
        }
        f.oprop_disjoint.extend(grown_disj);
        let mut grown_disj: BTreeSet<Pair> = BTreeSet::new();
        for (a, b) in &f.dprop_disjoint {
            for (p, q) in &eq_dpairs {
                if p == a {
                    grown_disj.insert((q.clone(), b.clone()));
                    grown_disj.insert((b.clone(), q.clone()));
                }
            }
        }
        f.dprop_disjoint.extend(grown_disj);
        let mut grown_inv: BTreeSet<Pair> = BTreeSet::new();
        for (a, b) in &f.inverse {
            grown_inv.insert((b.clone(), a.clone()));
            for (p, q) in &eq_opairs {
                if p == a {
                    grown_inv.insert((q.clone(), b.clone()));
                }
            }
        }
        f.inverse.extend(grown_inv);
        let mut grown_dom: BTreeSet<(Iri, EntityKind, Restriction)> = BTreeSet::new();
        for (p, kind, r) in &f.domain {
            let eq = if *kind == EntityKind::ObjectProperty {
                &eq_opairs
            } else {
                &eq_dpairs
            };
            for (a, b) in eq {
                if a == p {
                    grown_dom.insert((b.clone(), *kind, r.clone()));
                }
            }
        }
        f.domain.extend(grown_dom);
        let mut grown_rng: BTreeSet<(Iri, EntityKind, Restriction)> = BTreeSet::new();
        for (p, kind, r) in &f.range {
            let eq = if *kind == EntityKind::ObjectProperty {
                &eq_opairs
            } else {
                &eq_dpairs
            };
            for (a, b) in eq {
                if a == p {
                    grown_rng.insert((b.clone(), *kind, r.clone()));
                }
            }
        }
        f.range.extend(grown_rng);
    }

    // identity closure: Same is symmetric-transitive, Different spreads over
    // Same groups
    {
        let mut grown: BTreeSet<Pair> = BTreeSet::new();
        for (a, b) in &f.same {
            grown.insert((b.clone(), a.clone()));
            for (b2, c) in &f.same {
                if b == b2 {
                    grown.insert((a.clone(), c.clone()));
                }
            }
        }
        f.same.extend(grown);
        let mut grown: BTreeSet<Pair> = BTreeSet::new();
        for (a, b) in &f.different {
            grown.insert((b.clone(), a.clone()));
            for (a2, a3) in &f.same {
                if a2 == a {
                    grown.insert((a3.clone(), b.clone()));
                }
            }
        }
        f.different.extend(grown);
    }

    // SubP / Sym / TrP / Inv over object links, SubP over data links
    {
        let mut grown: BTreeSet<Triple> = BTreeSet::new();
        for (s, p, o) in &f.obj_links {
            for (p2, q) in &f.oprop_sub {
                if p2 == p {
                    grown.insert((s.clone(), q.clone(), o.clone()));
                }
            }
            let flags = store.characteristics_of(p);
            if flags.symmetric {
                grown.insert((o.clone(), p.clone(), s.clone()));
            }
            if flags.transitive {
                for (s2, p2, o2) in &f.obj_links {
                    if p2 == p && s2 == o {
                        grown.insert((s.clone(), p.clone(), o2.clone()));
                    }
                }
            }
            for (p2, q) in &f.inverse {
                if p2 == p {
                    grown.insert((o.clone(), q.clone(), s.clone()));
                }
            }
        }
        f.obj_links.extend(grown);
        let mut grown: BTreeSet<(Iri, Iri, LiteralValue)> = BTreeSet::new();
        for (s, p, lit) in &f.data_links {
            for (p2, q) in &f.dprop_sub {
                if p2 == p {
                    grown.insert((s.clone(), q.clone(), lit.clone()));
                }
            }
        }
        f.data_links.extend(grown);
    }

    // Dom / Rng / Ty-Up / Cls
    {
        let mut grown: BTreeSet<Pair> = BTreeSet::new();
        for (p, kind, r) in &f.domain {
            if let Restriction::BareClass(c) = r {
                if c.kind != EntityKind::Class {
                    continue;
                }
                match kind {
                    EntityKind::ObjectProperty => {
                        for (s, p2, _) in &f.obj_links {
                            if p2 == p {
                                grown.insert((s.clone(), c.iri.clone()));
                            }
                        }
                    }
                    EntityKind::DataProperty => {
                        for (s, p2, _) in &f.data_links {
                            if p2 == p {
                                grown.insert((s.clone(), c.iri.clone()));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        for (p, kind, r) in &f.range {
            if *kind != EntityKind::ObjectProperty {
                continue;
            }
            if let Restriction::BareClass(c) = r {
                if c.kind == EntityKind::Class {
                    for (_, p2, o) in &f.obj_links {
                        if p2 == p {
                            grown.insert((o.clone(), c.iri.clone()));
                        }
                    }
                }
            }
        }
        for (i, c) in &f.types {
            for (c2, d) in &f.class_sub {
                if c2 == c {
                    grown.insert((i.clone(), d.clone()));
                }
            }
        }
        for (class_iri, conjuncts) in restriction_sets {
            let members: Vec<Iri> = f
                .types
                .iter()
                .filter(|(_, c)| c == class_iri)
                .map(|(i, _)| i.clone())
                .collect();
            for i in &members {
                for r in conjuncts {
                    if let Restriction::BareClass(d) = r {
                        if d.kind == EntityKind::Class {
                            grown.insert((i.clone(), d.iri.clone()));
                        }
                    }
                }
            }
            for (i, _) in f.same.iter().filter(|(a, b)| a == b) {
                if conjuncts.iter().all(|r| satisfies(store, f, i, r)) {
                    grown.insert((i.clone(), class_iri.clone()));
                }
            }
        }
        f.types.extend(grown);
    }
}

fn satisfies(store: &Ontology, f: &Facts, individual: &Iri, r: &Restriction) -> bool {
    match r {
        Restriction::BareClass(c) if c.kind == EntityKind::Class => f
            .types
            .contains(&(individual.clone(), c.iri.clone())),
        Restriction::BareClass(_) | Restriction::ClassCardinality(..) => false,
        Restriction::ObjectRestriction(card, prop, filler_class) => {
            let needed = match card {
                Cardinality::Some => 1,
                Cardinality::Min(n) => *n as usize,
                _ => return false,
            };
            let fillers: Vec<Iri> = f
                .obj_links
                .iter()
                .filter(|(s, p, o)| {
                    s == individual
                        && *p == prop.iri
                        && f.types.contains(&(o.clone(), filler_class.iri.clone()))
                })
                .map(|(_, _, o)| o.clone())
                .collect();
            exists_distinct_subset(store, f, &fillers, needed)
        }
        Restriction::DataRestriction(card, prop, datatype) => {
            let needed = match card {
                Cardinality::Some => 1,
                Cardinality::Min(n) => *n as usize,
                _ => return false,
            };
            let values: BTreeSet<&LiteralValue> = f
                .data_links
                .iter()
                .filter(|(s, p, lit)| {
                    s == individual && *p == prop.iri && lit.datatype() == datatype
                })
                .map(|(_, _, lit)| lit)
                .collect();
            values.len() >= needed
        }
    }
}

/// Two individuals are provably distinct when they are not Same and either
/// the unique-name assumption is on or a Different fact connects them.
fn provably_distinct(store: &Ontology, f: &Facts, a: &Iri, b: &Iri) -> bool {
    if a == b || f.same.contains(&(a.clone(), b.clone())) {
        return false;
    }
    store.unique_name_assumption() || f.different.contains(&(a.clone(), b.clone()))
}

/// Brute-force subset check: does a pairwise-distinct subset of size `n`
/// exist among the candidates?
fn exists_distinct_subset(store: &Ontology, f: &Facts, candidates: &[Iri], n: usize) -> bool {
    fn rec(
        store: &Ontology,
        f: &Facts,
        candidates: &[Iri],
        chosen: &mut Vec<Iri>,
        n: usize,
    ) -> bool {
        if chosen.len() == n {
            return true;
        }
        for (pos, c) in candidates.iter().enumerate() {
            if chosen.iter().all(|x| provably_distinct(store, f, x, c)) {
                chosen.push(c.clone());
                if rec(store, f, &candidates[pos + 1..], chosen, n) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let unique: Vec<Iri> = candidates
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    rec(store, f, &unique, &mut Vec::new(), n)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    store: &Ontology,
    f: &Facts,
    restriction_sets: &BTreeMap<Iri, BTreeSet<Restriction>>,
    classes: &[Iri],
    individuals: &[Iri],
    thing: &Iri,
    nothing: &Iri,
) -> InferenceSnapshot {
    let sub = |a: &Iri, b: &Iri| f.class_sub.contains(&(a.clone(), b.clone()));
    let same_class_group = |a: &Iri, b: &Iri| sub(a, b) && sub(b, a);

    let mut entailed: BTreeSet<Axiom> = BTreeSet::new();

    for a in classes {
        for b in classes {
            let (ra, rb) = (EntityRef::class(a.clone()), EntityRef::class(b.clone()));
            if a != b {
                if same_class_group(a, b) {
                    entailed.insert(Axiom::new(
                        ra.clone(),
                        ExpressionKind::Equivalent,
                        EntitySetElement::entity(rb.clone()),
                    ));
                } else if sub(a, b) {
                    entailed.insert(Axiom::new(
                        ra.clone(),
                        ExpressionKind::Super,
                        EntitySetElement::entity(rb.clone()),
                    ));
                    entailed.insert(Axiom::new(
                        rb.clone(),
                        ExpressionKind::Sub,
                        EntitySetElement::entity(ra.clone()),
                    ));
                }
            }
            if f.class_disjoint.contains(&(a.clone(), b.clone())) {
                entailed.insert(Axiom::new(
                    ra,
                    ExpressionKind::Disjoint,
                    EntitySetElement::entity(rb),
                ));
            }
        }
    }

    for (class_iri, conjuncts) in restriction_sets {
        for r in conjuncts {
            entailed.insert(Axiom::new(
                EntityRef::class(class_iri.clone()),
                ExpressionKind::EquivalentRestriction,
                EntitySetElement::restriction(r.clone()),
            ));
        }
    }

    for (rel, disjoint, kind) in [
        (&f.oprop_sub, &f.oprop_disjoint, EntityKind::ObjectProperty),
        (&f.dprop_sub, &f.dprop_disjoint, EntityKind::DataProperty),
    ] {
        let props: Vec<Iri> = store
            .declared_of_kind(kind)
            .map(|e| e.iri.clone())
            .collect();
        for a in &props {
            for b in &props {
                let (ra, rb) = (
                    EntityRef::new(kind, a.clone()),
                    EntityRef::new(kind, b.clone()),
                );
                if disjoint.contains(&(a.clone(), b.clone())) {
                    entailed.insert(Axiom::new(
                        ra.clone(),
                        ExpressionKind::Disjoint,
                        EntitySetElement::entity(rb.clone()),
                    ));
                }
                if a == b {
                    continue;
                }
                let le = rel.contains(&(a.clone(), b.clone()));
                let ge = rel.contains(&(b.clone(), a.clone()));
                if le && ge {
                    entailed.insert(Axiom::new(
                        ra,
                        ExpressionKind::Equivalent,
                        EntitySetElement::entity(rb),
                    ));
                } else if le {
                    entailed.insert(Axiom::new(
                        ra.clone(),
                        ExpressionKind::Super,
                        EntitySetElement::entity(rb.clone()),
                    ));
                    entailed.insert(Axiom::new(
                        rb,
                        ExpressionKind::Sub,
                        EntitySetElement::entity(ra),
                    ));
                }
            }
        }
    }
    for (p, q) in &f.inverse {
        entailed.insert(Axiom::new(
            EntityRef::object_property(p.clone()),
            ExpressionKind::Inverse,
            EntitySetElement::entity(EntityRef::object_property(q.clone())),
        ));
    }
    for (p, kind, r) in &f.domain {
        entailed.insert(Axiom::new(
            EntityRef::new(*kind, p.clone()),
            ExpressionKind::Domain,
            EntitySetElement::restriction(r.clone()),
        ));
    }
    for (p, kind, r) in &f.range {
        entailed.insert(Axiom::new(
            EntityRef::new(*kind, p.clone()),
            ExpressionKind::Range,
            EntitySetElement::restriction(r.clone()),
        ));
    }

    for (i, c) in &f.types {
        entailed.insert(Axiom::new(
            EntityRef::individual(i.clone()),
            ExpressionKind::Type,
            EntitySetElement::entity(EntityRef::class(c.clone())),
        ));
        entailed.insert(Axiom::new(
            EntityRef::class(c.clone()),
            ExpressionKind::Instance,
            EntitySetElement::entity(EntityRef::individual(i.clone())),
        ));
    }
    for a in individuals {
        for b in individuals {
            if a == b {
                continue;
            }
            if f.same.contains(&(a.clone(), b.clone())) {
                entailed.insert(Axiom::new(
                    EntityRef::individual(a.clone()),
                    ExpressionKind::Equivalent,
                    EntitySetElement::entity(EntityRef::individual(b.clone())),
                ));
            } else if f.different.contains(&(a.clone(), b.clone())) {
                entailed.insert(Axiom::new(
                    EntityRef::individual(a.clone()),
                    ExpressionKind::Disjoint,
                    EntitySetElement::entity(EntityRef::individual(b.clone())),
                ));
            }
        }
    }
    for (s, p, o) in &f.obj_links {
        entailed.insert(Axiom::new(
            EntityRef::individual(s.clone()),
            ExpressionKind::ObjectLink,
            EntitySetElement::object_pair(
                EntityRef::object_property(p.clone()),
                EntityRef::individual(o.clone()),
            ),
        ));
    }
    for (s, p, lit) in &f.data_links {
        entailed.insert(Axiom::new(
            EntityRef::individual(s.clone()),
            ExpressionKind::DataLink,
            EntitySetElement::data_pair(EntityRef::data_property(p.clone()), lit.clone()),
        ));
    }

    let unsatisfiable: BTreeSet<EntityRef> = classes
        .iter()
        .filter(|c| *c != nothing && *c != thing && sub(c, nothing))
        .map(|c| EntityRef::class(c.clone()))
        .collect();

    let violations = check(store, f, restriction_sets, &unsatisfiable);

    InferenceSnapshot {
        entailed,
        class_groups: partition(classes, |a, b| same_class_group(a, b)),
        object_property_groups: partition(
            &store
                .declared_of_kind(EntityKind::ObjectProperty)
                .map(|e| e.iri.clone())
                .collect::<Vec<_>>(),
            |a, b| {
                f.oprop_sub.contains(&(a.clone(), b.clone()))
                    && f.oprop_sub.contains(&(b.clone(), a.clone()))
            },
        ),
        data_property_groups: partition(
            &store
                .declared_of_kind(EntityKind::DataProperty)
                .map(|e| e.iri.clone())
                .collect::<Vec<_>>(),
            |a, b| {
                f.dprop_sub.contains(&(a.clone(), b.clone()))
                    && f.dprop_sub.contains(&(b.clone(), a.clone()))
            },
        ),
        individual_groups: partition(individuals, |a, b| {
            f.same.contains(&(a.clone(), b.clone()))
        }),
        consistency: ConsistencyReport {
            consistent: violations.is_empty(),
            violations,
            unsatisfiable_classes: unsatisfiable,
        },
        sequence: 0,
    }
}

fn partition(items: &[Iri], together: impl Fn(&Iri, &Iri) -> bool) -> Vec<BTreeSet<Iri>> {
    let mut out: Vec<BTreeSet<Iri>> = Vec::new();
    let mut placed: BTreeSet<Iri> = BTreeSet::new();
    for item in items {
        if placed.contains(item) {
            continue;
        }
        let group: BTreeSet<Iri> = items
            .iter()
            .filter(|other| together(item, other))
            .cloned()
            .collect();
        placed.extend(group.iter().cloned());
        out.push(group);
    }
    out.sort();
    out
}

fn check(
    store: &Ontology,
    f: &Facts,
    restriction_sets: &BTreeMap<Iri, BTreeSet<Restriction>>,
    unsatisfiable: &BTreeSet<EntityRef>,
) -> Vec<Violation> {
    let mut violations: BTreeSet<Violation> = BTreeSet::new();

    for (i, c) in &f.types {
        for (i2, d) in &f.types {
            if i == i2 && c < d && f.class_disjoint.contains(&(c.clone(), d.clone())) {
                violations.insert(Violation {
                    rule: RuleId::V1,
                    entities: vec![i.to_string(), c.to_string(), d.to_string()],
                    detail: format!("{i} has disjoint types {c} and {d}"),
                });
            }
        }
    }

    for (a, b) in store.different_pairs() {
        if f.same.contains(&(a.clone(), b.clone())) {
            violations.insert(Violation {
                rule: RuleId::V2,
                entities: vec![a.to_string(), b.to_string()],
                detail: format!("{a} and {b} are both same and different"),
            });
        }
    }

    for (class_iri, conjuncts) in restriction_sets {
        let members: Vec<Iri> = f
            .types
            .iter()
            .filter(|(_, c)| c == class_iri)
            .map(|(i, _)| i.clone())
            .collect();
        for r in conjuncts {
            match r {
                Restriction::ObjectRestriction(card, prop, filler_class) => {
                    if let Cardinality::Max(n) | Cardinality::Exact(n) = card {
                        for member in &members {
                            let fillers: Vec<Iri> = f
                                .obj_links
                                .iter()
                                .filter(|(s, p, o)| {
                                    s == member
                                        && *p == prop.iri
                                        && f.types
                                            .contains(&(o.clone(), filler_class.iri.clone()))
                                })
                                .map(|(_, _, o)| o.clone())
                                .collect();
                            if exists_distinct_subset(store, f, &fillers, *n as usize + 1) {
                                violations.insert(Violation {
                                    rule: RuleId::V3,
                                    entities: vec![
                                        member.to_string(),
                                        class_iri.to_string(),
                                        prop.iri.to_string(),
                                    ],
                                    detail: format!(
                                        "{} exceeds max {} {} {} fillers",
                                        member, n, prop.iri, filler_class.iri
                                    ),
                                });
                            }
                        }
                    }
                    if *card == Cardinality::Only {
                        for member in &members {
                            for (s, p, o) in &f.obj_links {
                                if s != member || *p != prop.iri {
                                    continue;
                                }
                                let clash = f.types.iter().find(|(i, e)| {
                                    i == o
                                        && f.class_disjoint
                                            .contains(&(e.clone(), filler_class.iri.clone()))
                                });
                                if let Some((_, e)) = clash {
                                    violations.insert(Violation {
                                        rule: RuleId::V4,
                                        entities: vec![
                                            member.to_string(),
                                            class_iri.to_string(),
                                            o.to_string(),
                                        ],
                                        detail: format!(
                                            "{} only {} {} but filler {} is a {} (disjoint)",
                                            member, prop.iri, filler_class.iri, o, e
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
                Restriction::DataRestriction(card, prop, datatype) => {
                    if let Cardinality::Max(n) | Cardinality::Exact(n) = card {
                        for member in &members {
                            let count = f
                                .data_links
                                .iter()
                                .filter(|(s, p, lit)| {
                                    s == member
                                        && *p == prop.iri
                                        && lit.datatype() == datatype
                                })
                                .count();
                            if count > *n as usize {
                                violations.insert(Violation {
                                    rule: RuleId::V3,
                                    entities: vec![
                                        member.to_string(),
                                        class_iri.to_string(),
                                        prop.iri.to_string(),
                                    ],
                                    detail: format!(
                                        "{} exceeds max {} {} literals",
                                        member, n, prop.iri
                                    ),
                                });
                            }
                        }
                    }
                    if *card == Cardinality::Only {
                        for member in &members {
                            for (s, p, lit) in &f.data_links {
                                if s == member && *p == prop.iri && lit.datatype() != datatype {
                                    violations.insert(Violation {
                                        rule: RuleId::V4,
                                        entities: vec![
                                            member.to_string(),
                                            class_iri.to_string(),
                                            prop.iri.to_string(),
                                        ],
                                        detail: format!(
                                            "{} only {} {} but {} has datatype {}",
                                            member,
                                            prop.iri,
                                            datatype.iri,
                                            lit,
                                            lit.datatype().iri
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
                _ => {}
            }
        }
    }

    for class in unsatisfiable {
        for (i, c) in &f.types {
            if *c == class.iri {
                violations.insert(Violation {
                    rule: RuleId::V5,
                    entities: vec![i.to_string(), class.to_string()],
                    detail: format!("{} is an instance of unsatisfiable class {}", i, class),
                });
            }
        }
    }

    violations.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Cardinality;
    use crate::store::Characteristic;

    fn class(name: &str) -> EntityRef {
        EntityRef::class(Iri::local(name))
    }

    fn indiv(name: &str) -> EntityRef {
        EntityRef::individual(Iri::local(name))
    }

    fn oprop(name: &str) -> EntityRef {
        EntityRef::object_property(Iri::local(name))
    }

    #[test]
    fn empty_store_entails_only_scaffolding() {
        let s = Ontology::with_default_prefix("t", "http://example.org/t#");
        let snapshot = naive_fixpoint_oracle(&s);
        // THING above NOTHING in both orientations, nothing else
        assert_eq!(snapshot.entailed.len(), 2);
        assert!(snapshot.is_entailed(&Axiom::new(
            EntityRef::nothing(),
            ExpressionKind::Super,
            EntitySetElement::entity(EntityRef::thing()),
        )));
        assert!(snapshot.consistency.consistent);
    }

    #[test]
    fn oracle_matches_engine_on_the_corridor_fixture() {
        let mut s = Ontology::with_default_prefix("t", "http://example.org/t#");
        s.assert_axiom(&Axiom::new(
            class("ROOM"),
            ExpressionKind::Super,
            EntitySetElement::entity(class("LOCATION")),
        ))
        .unwrap();
        for r in [
            Restriction::bare_class(class("LOCATION")).unwrap(),
            Restriction::object(Cardinality::Min(2), oprop("hasDoor"), class("DOOR")).unwrap(),
        ] {
            s.assert_axiom(&Axiom::new(
                class("CORRIDOR"),
                ExpressionKind::EquivalentRestriction,
                EntitySetElement::restriction(r),
            ))
            .unwrap();
        }
        s.assert_axiom(&Axiom::new(
            indiv("Corridor1"),
            ExpressionKind::Type,
            EntitySetElement::entity(class("LOCATION")),
        ))
        .unwrap();
        for door in ["Door1", "Door2"] {
            s.assert_axiom(&Axiom::new(
                indiv("Corridor1"),
                ExpressionKind::ObjectLink,
                EntitySetElement::object_pair(oprop("hasDoor"), indiv(door)),
            ))
            .unwrap();
            s.assert_axiom(&Axiom::new(
                indiv(door),
                ExpressionKind::Type,
                EntitySetElement::entity(class("DOOR")),
            ))
            .unwrap();
        }
        s.set_characteristic(&oprop("hasDoor"), Characteristic::Transitive, false)
            .unwrap();

        let oracle = naive_fixpoint_oracle(&s);
        let engine = s.synchronise_reasoner();
        assert_eq!(oracle.entailed, engine.entailed);
        assert_eq!(oracle.class_groups, engine.class_groups);
        assert_eq!(
            oracle.consistency.consistent,
            engine.consistency.consistent
        );
        assert!(oracle.is_entailed(&Axiom::new(
            indiv("Corridor1"),
            ExpressionKind::Type,
            EntitySetElement::entity(class("CORRIDOR")),
        )));
    }
}
