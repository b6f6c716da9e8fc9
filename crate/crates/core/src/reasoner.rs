//! On-demand inference over the asserted store.
//!
//! `Ontology::synchronise_reasoner` computes the least fixpoint of a fixed
//! rule fragment and publishes it as an immutable [`InferenceSnapshot`].
//! Queries between synchronisations read the last snapshot; mutations only
//! mark the store stale. Inconsistency is data, not failure: the snapshot is
//! returned with the violations that were found and the entailments computed
//! up to that point.
//!
//! The fragment, by rule name:
//! `Tr-Sub`/`Eq-C` class hierarchy closure with equivalence groups (mutual
//! subsumption merges), `Dj-C` disjointness propagation to subclasses and
//! equivalents, `Tr-P`/`Eq-P` the property analogue, `Inv` inverse links,
//! `SubP` link propagation to super-properties, `TrP`/`Sym` transitive and
//! symmetric flags, `Dom`/`Rng` domain and range typing, `Ty-Up` type
//! propagation up the hierarchy, and `Cls` classification of individuals
//! into classes defined by a restriction conjunction. Universal and
//! upper-bound restrictions never classify positively (open world); they
//! only feed the consistency checks V3/V4.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::model::{
    Axiom, Cardinality, EntityKind, EntityRef, EntitySetElement, ExpressionKind, Iri,
    LiteralValue, Restriction,
};
use crate::store::{Ontology, StoreError};

/// Consistency rule identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    /// Individual with two entailed types that are entailed disjoint.
    V1,
    /// Same and Different asserted over one identity group.
    V2,
    /// Upper cardinality bound exceeded by distinct fillers.
    V3,
    /// Universal restriction with a filler provably outside the filler class.
    V4,
    /// Unsatisfiable class with entailed instances.
    V5,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One consistency violation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub rule: RuleId,
    pub entities: Vec<String>,
    pub detail: String,
}

/// Outcome of the consistency checks of one synchronisation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub violations: Vec<Violation>,
    pub unsatisfiable_classes: BTreeSet<EntityRef>,
}

/// The immutable result of one reasoner synchronisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferenceSnapshot {
    /// Entailed axioms, both orientations materialised (`Sub` and `Super`,
    /// `Type` and `Instance`, symmetric pairs in both orders).
    pub entailed: BTreeSet<Axiom>,
    /// Partition of the declared classes under entailed equivalence.
    pub class_groups: Vec<BTreeSet<Iri>>,
    pub object_property_groups: Vec<BTreeSet<Iri>>,
    pub data_property_groups: Vec<BTreeSet<Iri>>,
    /// Partition of the declared individuals under `Same`.
    pub individual_groups: Vec<BTreeSet<Iri>>,
    pub consistency: ConsistencyReport,
    /// Monotone synchronisation counter.
    pub sequence: u64,
}

impl InferenceSnapshot {
    /// A snapshot with no content, for tests and initial states.
    pub fn empty(sequence: u64) -> Self {
        InferenceSnapshot {
            entailed: BTreeSet::new(),
            class_groups: Vec::new(),
            object_property_groups: Vec::new(),
            data_property_groups: Vec::new(),
            individual_groups: Vec::new(),
            consistency: ConsistencyReport {
                consistent: true,
                violations: Vec::new(),
                unsatisfiable_classes: BTreeSet::new(),
            },
            sequence,
        }
    }

    /// All entailed elements `y` with `(subject, kind, y)` in the snapshot.
    pub fn entity_set(
        &self,
        subject: &EntityRef,
        kind: ExpressionKind,
    ) -> BTreeSet<EntitySetElement> {
        self.entailed
            .iter()
            .filter(|a| a.expression == kind && a.subject == *subject)
            .map(|a| a.object.clone())
            .collect()
    }

    pub fn is_entailed(&self, axiom: &Axiom) -> bool {
        self.entailed.contains(axiom)
    }

    /// Equality of everything except the sequence counter.
    pub fn same_content(&self, other: &InferenceSnapshot) -> bool {
        self.entailed == other.entailed
            && self.class_groups == other.class_groups
            && self.object_property_groups == other.object_property_groups
            && self.data_property_groups == other.data_property_groups
            && self.individual_groups == other.individual_groups
            && self.consistency == other.consistency
    }
}

impl Ontology {
    /// Run the rule fragment to its least fixpoint and publish the result.
    /// Clears the staleness flag. Inconsistency does not fail the call.
    pub fn synchronise_reasoner(&mut self) -> Arc<InferenceSnapshot> {
        let snapshot = Engine::new(self).run(self.next_snapshot_sequence());
        self.publish_snapshot(snapshot)
    }

    /// Entailed entity set from the last snapshot. The result reflects the
    /// snapshot even when the store has mutated since; callers may inspect
    /// [`Ontology::is_stale`].
    pub fn entailed_entity_set(
        &self,
        subject: &EntityRef,
        kind: ExpressionKind,
    ) -> Result<BTreeSet<EntitySetElement>, StoreError> {
        if !kind.legal_for(subject.kind) {
            return Err(StoreError::IllegalRow {
                subject: subject.to_string(),
                expression: kind,
            });
        }
        let snapshot = self.snapshot().ok_or(StoreError::NoSnapshot)?;
        Ok(snapshot.entity_set(subject, kind))
    }

    /// Membership in the last snapshot's entailed set.
    pub fn is_entailed(&self, axiom: &Axiom) -> Result<bool, StoreError> {
        let snapshot = self.snapshot().ok_or(StoreError::NoSnapshot)?;
        Ok(snapshot.is_entailed(axiom))
    }
}

// ---------------------------------------------------------------------------
// Engine internals
// ---------------------------------------------------------------------------

/// Reflexive-transitive reachability over an indexed item set.
struct Taxonomy {
    index: BTreeMap<Iri, usize>,
    items: Vec<Iri>,
    reach: Vec<Vec<bool>>,
}

impl Taxonomy {
    fn new(items: Vec<Iri>, edges: &BTreeSet<(usize, usize)>) -> Self {
        let n = items.len();
        let index = items
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, iri)| (iri, i))
            .collect();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in edges {
            reach[a][b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    let via: Vec<usize> =
                        (0..n).filter(|&j| reach[k][j] && !reach[i][j]).collect();
                    for j in via {
                        reach[i][j] = true;
                    }
                }
            }
        }
        Taxonomy {
            index,
            items,
            reach,
        }
    }

    fn id(&self, iri: &Iri) -> usize {
        self.index[iri]
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.reach[a][b]
    }

    fn same_group(&self, a: usize, b: usize) -> bool {
        self.reach[a][b] && self.reach[b][a]
    }

    /// Sorted partition into equivalence groups.
    fn groups(&self) -> Vec<BTreeSet<Iri>> {
        let n = self.items.len();
        let mut seen = vec![false; n];
        let mut out: Vec<BTreeSet<Iri>> = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut group = BTreeSet::new();
            for (j, item) in self.items.iter().enumerate() {
                if self.same_group(i, j) {
                    seen[j] = true;
                    group.insert(item.clone());
                }
            }
            out.push(group);
        }
        out.sort();
        out
    }
}

/// Union-find over individual IRIs.
struct IdentityGroups {
    group_of: BTreeMap<Iri, usize>,
    members: Vec<BTreeSet<Iri>>,
}

impl IdentityGroups {
    fn new(individuals: &[Iri], same_pairs: &BTreeSet<(Iri, Iri)>) -> Self {
        let mut parent: BTreeMap<Iri, Iri> =
            individuals.iter().map(|i| (i.clone(), i.clone())).collect();

        fn find(parent: &mut BTreeMap<Iri, Iri>, x: &Iri) -> Iri {
            let p = parent[x].clone();
            if p == *x {
                p
            } else {
                let root = find(parent, &p);
                parent.insert(x.clone(), root.clone());
                root
            }
        }

        for (a, b) in same_pairs {
            if parent.contains_key(a) && parent.contains_key(b) {
                let ra = find(&mut parent, a);
                let rb = find(&mut parent, b);
                if ra != rb {
                    parent.insert(ra, rb);
                }
            }
        }

        let mut by_root: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        for i in individuals {
            let root = find(&mut parent, i);
            by_root.entry(root).or_default().insert(i.clone());
        }
        let members: Vec<BTreeSet<Iri>> = by_root.into_values().collect();
        let mut group_of = BTreeMap::new();
        for (gid, group) in members.iter().enumerate() {
            for iri in group {
                group_of.insert(iri.clone(), gid);
            }
        }
        IdentityGroups { group_of, members }
    }

    fn gid(&self, iri: &Iri) -> usize {
        self.group_of[iri]
    }

    fn partition(&self) -> Vec<BTreeSet<Iri>> {
        let mut out = self.members.clone();
        out.sort();
        out
    }
}

type Link = (Iri, Iri, Iri); // (subject, property, filler)
type DataLinkFact = (Iri, Iri, LiteralValue);

struct Engine<'a> {
    store: &'a Ontology,
    classes: Vec<Iri>,
    individuals: Vec<Iri>,
    obj_props: Vec<Iri>,
    data_props: Vec<Iri>,
}

impl<'a> Engine<'a> {
    fn new(store: &'a Ontology) -> Self {
        let of_kind = |kind: EntityKind| -> Vec<Iri> {
            store
                .declared_of_kind(kind)
                .map(|e| e.iri.clone())
                .collect()
        };
        Engine {
            store,
            classes: of_kind(EntityKind::Class),
            individuals: of_kind(EntityKind::NamedIndividual),
            obj_props: of_kind(EntityKind::ObjectProperty),
            data_props: of_kind(EntityKind::DataProperty),
        }
    }

    fn run(&self, sequence: u64) -> InferenceSnapshot {
        let (classes, disjoint_classes) = self.class_taxonomy();
        let obj_taxonomy = self.property_taxonomy(EntityKind::ObjectProperty, &self.obj_props);
        let data_taxonomy = self.property_taxonomy(EntityKind::DataProperty, &self.data_props);
        let identity = IdentityGroups::new(&self.individuals, self.store.same_pairs());
        let different = self.different_group_pairs(&identity);

        let inverse_pairs = self.expanded_symmetric_pairs(
            EntityKind::ObjectProperty,
            ExpressionKind::Inverse,
            &obj_taxonomy,
        );
        let obj_links = self.close_object_links(&obj_taxonomy, &inverse_pairs);
        let data_links = self.close_data_links(&data_taxonomy);
        let restriction_sets = self.restriction_sets();
        let types = self.close_types(
            &classes,
            &obj_links,
            &data_links,
            &restriction_sets,
            &identity,
            &different,
        );

        let unsatisfiable = self.unsatisfiable_classes(&classes);
        let violations = self.check_consistency(
            &classes,
            &disjoint_classes,
            &types,
            &obj_links,
            &data_links,
            &restriction_sets,
            &identity,
            &different,
            &unsatisfiable,
        );

        let entailed = self.materialise(
            &classes,
            &disjoint_classes,
            &obj_taxonomy,
            &data_taxonomy,
            &inverse_pairs,
            &identity,
            &different,
            &obj_links,
            &data_links,
            &types,
        );

        InferenceSnapshot {
            entailed,
            class_groups: classes.groups(),
            object_property_groups: obj_taxonomy.groups(),
            data_property_groups: data_taxonomy.groups(),
            individual_groups: identity.partition(),
            consistency: ConsistencyReport {
                consistent: violations.is_empty(),
                violations,
                unsatisfiable_classes: unsatisfiable,
            },
            sequence,
        }
    }

    /// Class reachability with top/bottom scaffolding, iterated with
    /// disjointness propagation until unsatisfiable classes are folded into
    /// the bottom group.
    fn class_taxonomy(&self) -> (Taxonomy, BTreeSet<(usize, usize)>) {
        let items = self.classes.clone();
        let index: BTreeMap<&Iri, usize> = items.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let thing = index[&EntityRef::thing().iri];
        let nothing = index[&EntityRef::nothing().iri];

        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for i in 0..items.len() {
            edges.insert((i, thing));
            edges.insert((nothing, i));
        }
        let mut disjoint_seeds: BTreeSet<(usize, usize)> = BTreeSet::new();
        for axiom in self.store.axioms() {
            if axiom.subject.kind != EntityKind::Class {
                continue;
            }
            if let EntitySetElement::Entity(other) = &axiom.object {
                let (a, b) = (index[&axiom.subject.iri], index[&other.iri]);
                match axiom.expression {
                    ExpressionKind::Super => {
                        edges.insert((a, b));
                    }
                    ExpressionKind::Equivalent => {
                        edges.insert((a, b));
                        edges.insert((b, a));
                    }
                    ExpressionKind::Disjoint => {
                        disjoint_seeds.insert((a, b));
                        disjoint_seeds.insert((b, a));
                    }
                    _ => {}
                }
            }
        }

        loop {
            let taxonomy = Taxonomy::new(items.clone(), &edges);
            let disjoint = propagate_disjoint(&taxonomy, &disjoint_seeds);
            let mut grew = false;
            for c in 0..items.len() {
                if c == nothing || taxonomy.le(c, nothing) {
                    continue;
                }
                let unsat = (0..items.len()).any(|d| taxonomy.le(c, d) && disjoint.contains(&(c, d)));
                if unsat && edges.insert((c, nothing)) {
                    grew = true;
                }
            }
            if !grew {
                return (taxonomy, disjoint);
            }
        }
    }

    fn property_taxonomy(&self, kind: EntityKind, items: &[Iri]) -> Taxonomy {
        let index: BTreeMap<&Iri, usize> = items.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut edges = BTreeSet::new();
        for axiom in self.store.axioms() {
            if axiom.subject.kind != kind {
                continue;
            }
            if let EntitySetElement::Entity(other) = &axiom.object {
                let (a, b) = (index[&axiom.subject.iri], index[&other.iri]);
                match axiom.expression {
                    ExpressionKind::Super => {
                        edges.insert((a, b));
                    }
                    ExpressionKind::Equivalent => {
                        edges.insert((a, b));
                        edges.insert((b, a));
                    }
                    _ => {}
                }
            }
        }
        Taxonomy::new(items.to_vec(), &edges)
    }

    /// Asserted symmetric property pairs (Disjoint or Inverse) expanded
    /// across equivalence groups, kept as ordered index pairs both ways.
    fn expanded_symmetric_pairs(
        &self,
        kind: EntityKind,
        expression: ExpressionKind,
        taxonomy: &Taxonomy,
    ) -> BTreeSet<(usize, usize)> {
        let mut seeds = BTreeSet::new();
        for axiom in self.store.axioms() {
            if axiom.subject.kind != kind || axiom.expression != expression {
                continue;
            }
            if let EntitySetElement::Entity(other) = &axiom.object {
                let (a, b) = (taxonomy.id(&axiom.subject.iri), taxonomy.id(&other.iri));
                seeds.insert((a, b));
                seeds.insert((b, a));
            }
        }
        let n = taxonomy.items.len();
        let mut out = BTreeSet::new();
        for &(a, b) in &seeds {
            for a2 in 0..n {
                if !taxonomy.same_group(a, a2) {
                    continue;
                }
                for b2 in 0..n {
                    if taxonomy.same_group(b, b2) {
                        out.insert((a2, b2));
                        out.insert((b2, a2));
                    }
                }
            }
        }
        out
    }

    fn different_group_pairs(&self, identity: &IdentityGroups) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for (a, b) in self.store.different_pairs() {
            let (ga, gb) = (identity.gid(a), identity.gid(b));
            out.insert((ga, gb));
            out.insert((gb, ga));
        }
        out
    }

    /// Worklist closure of the object link facts under SubP, Sym, TrP and Inv.
    fn close_object_links(
        &self,
        props: &Taxonomy,
        inverse_pairs: &BTreeSet<(usize, usize)>,
    ) -> BTreeSet<Link> {
        let mut facts: BTreeSet<Link> = BTreeSet::new();
        let mut queue: Vec<Link> = Vec::new();
        for axiom in self.store.axioms() {
            if axiom.expression != ExpressionKind::ObjectLink {
                continue;
            }
            if let EntitySetElement::ObjectPair(p, Some(b)) = &axiom.object {
                let fact = (axiom.subject.iri.clone(), p.iri.clone(), b.iri.clone());
                if facts.insert(fact.clone()) {
                    queue.push(fact);
                }
            }
        }

        let inverses_of: BTreeMap<usize, Vec<usize>> = {
            let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &(a, b) in inverse_pairs {
                m.entry(a).or_default().push(b);
            }
            m
        };

        while let Some((subject, prop, filler)) = queue.pop() {
            let pid = props.id(&prop);
            let mut derived: Vec<Link> = Vec::new();
            // SubP: the same link holds for every super-property
            for (q, qid) in props.items.iter().zip(0..) {
                if qid != pid && props.le(pid, qid) {
                    derived.push((subject.clone(), q.clone(), filler.clone()));
                }
            }
            let flags = self.store.characteristics_of(&prop);
            if flags.symmetric {
                derived.push((filler.clone(), prop.clone(), subject.clone()));
            }
            if flags.transitive {
                for (s2, p2, f2) in &facts {
                    if *p2 != prop {
                        continue;
                    }
                    if *s2 == filler {
                        derived.push((subject.clone(), prop.clone(), f2.clone()));
                    }
                    if *f2 == subject {
                        derived.push((s2.clone(), prop.clone(), filler.clone()));
                    }
                }
            }
            if let Some(invs) = inverses_of.get(&pid) {
                for &q in invs {
                    derived.push((filler.clone(), props.items[q].clone(), subject.clone()));
                }
            }
            for fact in derived {
                if facts.insert(fact.clone()) {
                    queue.push(fact);
                }
            }
        }
        facts
    }

    /// Data links only propagate to super-properties; one pass suffices.
    fn close_data_links(&self, props: &Taxonomy) -> BTreeSet<DataLinkFact> {
        let mut facts = BTreeSet::new();
        for axiom in self.store.axioms() {
            if axiom.expression != ExpressionKind::DataLink {
                continue;
            }
            if let EntitySetElement::DataPair(p, Some(lit)) = &axiom.object {
                let pid = props.id(&p.iri);
                for (q, qid) in props.items.iter().zip(0..) {
                    if props.le(pid, qid) {
                        facts.insert((axiom.subject.iri.clone(), q.clone(), lit.clone()));
                    }
                }
            }
        }
        facts
    }

    /// Asserted restriction conjunctions keyed by defining class.
    fn restriction_sets(&self) -> BTreeMap<Iri, BTreeSet<Restriction>> {
        let mut out: BTreeMap<Iri, BTreeSet<Restriction>> = BTreeMap::new();
        for axiom in self.store.axioms() {
            if axiom.expression != ExpressionKind::EquivalentRestriction {
                continue;
            }
            if let EntitySetElement::Restriction(r) = &axiom.object {
                out.entry(axiom.subject.iri.clone())
                    .or_default()
                    .insert(r.clone());
            }
        }
        out
    }

    /// Type closure: seeds, domain/range typing, then Ty-Up plus
    /// classification to fixpoint.
    fn close_types(
        &self,
        classes: &Taxonomy,
        obj_links: &BTreeSet<Link>,
        data_links: &BTreeSet<DataLinkFact>,
        restriction_sets: &BTreeMap<Iri, BTreeSet<Restriction>>,
        identity: &IdentityGroups,
        different: &BTreeSet<(usize, usize)>,
    ) -> BTreeMap<Iri, BTreeSet<usize>> {
        let thing = classes.id(&EntityRef::thing().iri);
        let mut types: BTreeMap<Iri, BTreeSet<usize>> = self
            .individuals
            .iter()
            .map(|i| (i.clone(), BTreeSet::from([thing])))
            .collect();

        for axiom in self.store.axioms() {
            if axiom.expression == ExpressionKind::Type {
                if let EntitySetElement::Entity(class) = &axiom.object {
                    types
                        .get_mut(&axiom.subject.iri)
                        .expect("declared individual")
                        .insert(classes.id(&class.iri));
                }
            }
        }

        // Dom / Rng from the closed link relations
        for axiom in self.store.axioms() {
            let EntitySetElement::Restriction(Restriction::BareClass(class)) = &axiom.object
            else {
                continue;
            };
            if class.kind != EntityKind::Class {
                continue;
            }
            let cid = classes.id(&class.iri);
            let prop = &axiom.subject;
            match (axiom.expression, prop.kind) {
                (ExpressionKind::Domain, EntityKind::ObjectProperty) => {
                    for (s, p, _) in obj_links {
                        if p == &prop.iri {
                            types.get_mut(s).expect("declared individual").insert(cid);
                        }
                    }
                }
                (ExpressionKind::Domain, EntityKind::DataProperty) => {
                    for (s, p, _) in data_links {
                        if p == &prop.iri {
                            types.get_mut(s).expect("declared individual").insert(cid);
                        }
                    }
                }
                (ExpressionKind::Range, EntityKind::ObjectProperty) => {
                    for (_, p, f) in obj_links {
                        if p == &prop.iri {
                            types.get_mut(f).expect("declared individual").insert(cid);
                        }
                    }
                }
                _ => {}
            }
        }

        loop {
            let mut changed = false;

            // Ty-Up: close each type set upward through the hierarchy
            for set in types.values_mut() {
                let missing: Vec<usize> = (0..classes.items.len())
                    .filter(|d| !set.contains(d) && set.iter().any(|&c| classes.le(c, *d)))
                    .collect();
                for d in missing {
                    set.insert(d);
                    changed = true;
                }
            }

            // Cls and its converse
            for (class_iri, conjuncts) in restriction_sets {
                let cid = classes.id(class_iri);
                let bare_conjuncts: Vec<usize> = conjuncts
                    .iter()
                    .filter_map(|r| match r {
                        Restriction::BareClass(c) if c.kind == EntityKind::Class => {
                            Some(classes.id(&c.iri))
                        }
                        _ => None,
                    })
                    .collect();
                for individual in &self.individuals {
                    let has_type = types[individual].contains(&cid);
                    if !has_type {
                        let satisfied = conjuncts.iter().all(|r| {
                            self.satisfies(
                                individual, r, classes, &types, obj_links, data_links, identity,
                                different,
                            )
                        });
                        if satisfied {
                            types.get_mut(individual).unwrap().insert(cid);
                            changed = true;
                        }
                    } else {
                        for &d in &bare_conjuncts {
                            changed |= types.get_mut(individual).unwrap().insert(d);
                        }
                    }
                }
            }

            if !changed {
                return types;
            }
        }
    }

    /// Positive satisfaction of one restriction conjunct, open world:
    /// universal and upper-bound forms are never provable.
    #[allow(clippy::too_many_arguments)]
    fn satisfies(
        &self,
        individual: &Iri,
        restriction: &Restriction,
        classes: &Taxonomy,
        types: &BTreeMap<Iri, BTreeSet<usize>>,
        obj_links: &BTreeSet<Link>,
        data_links: &BTreeSet<DataLinkFact>,
        identity: &IdentityGroups,
        different: &BTreeSet<(usize, usize)>,
    ) -> bool {
        match restriction {
            Restriction::BareClass(c) if c.kind == EntityKind::Class => {
                types[individual].contains(&classes.id(&c.iri))
            }
            Restriction::BareClass(_) | Restriction::ClassCardinality(..) => false,
            Restriction::ObjectRestriction(card, prop, filler_class) => {
                let needed = match card {
                    Cardinality::Some => 1,
                    Cardinality::Min(n) => *n as usize,
                    _ => return false,
                };
                let fid = classes.id(&filler_class.iri);
                let fillers: BTreeSet<&Iri> = obj_links
                    .iter()
                    .filter(|(s, p, f)| {
                        s == individual && *p == prop.iri && types[f].contains(&fid)
                    })
                    .map(|(_, _, f)| f)
                    .collect();
                self.has_distinct_fillers(&fillers, needed, identity, different)
            }
            Restriction::DataRestriction(card, prop, datatype) => {
                let needed = match card {
                    Cardinality::Some => 1,
                    Cardinality::Min(n) => *n as usize,
                    _ => return false,
                };
                let values: BTreeSet<&LiteralValue> = data_links
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

    /// Are at least `needed` pairwise-distinct individuals among `fillers`?
    /// Individuals in one identity group are never distinct. Across groups,
    /// distinctness needs the unique-name assumption or an explicit
    /// Different pair; without UNA this is a clique search over the
    /// different-relation between groups.
    fn has_distinct_fillers(
        &self,
        fillers: &BTreeSet<&Iri>,
        needed: usize,
        identity: &IdentityGroups,
        different: &BTreeSet<(usize, usize)>,
    ) -> bool {
        if needed == 0 {
            return true;
        }
        let groups: BTreeSet<usize> = fillers.iter().map(|f| identity.gid(f)).collect();
        if self.store.unique_name_assumption() {
            return groups.len() >= needed;
        }
        let candidates: Vec<usize> = groups.into_iter().collect();
        fn search(
            candidates: &[usize],
            chosen: &mut Vec<usize>,
            needed: usize,
            different: &BTreeSet<(usize, usize)>,
        ) -> bool {
            if chosen.len() == needed {
                return true;
            }
            if chosen.len() + candidates.len() < needed {
                return false;
            }
            for (pos, &g) in candidates.iter().enumerate() {
                if chosen.iter().all(|&c| different.contains(&(c, g))) {
                    chosen.push(g);
                    if search(&candidates[pos + 1..], chosen, needed, different) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        search(&candidates, &mut Vec::new(), needed, different)
    }

    fn unsatisfiable_classes(&self, classes: &Taxonomy) -> BTreeSet<EntityRef> {
        let nothing = classes.id(&EntityRef::nothing().iri);
        classes
            .items
            .iter()
            .enumerate()
            .filter(|(i, iri)| {
                *i != nothing
                    && classes.same_group(*i, nothing)
                    && **iri != EntityRef::thing().iri
            })
            .map(|(_, iri)| EntityRef::class(iri.clone()))
            .collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn check_consistency(
        &self,
        classes: &Taxonomy,
        disjoint: &BTreeSet<(usize, usize)>,
        types: &BTreeMap<Iri, BTreeSet<usize>>,
        obj_links: &BTreeSet<Link>,
        data_links: &BTreeSet<DataLinkFact>,
        restriction_sets: &BTreeMap<Iri, BTreeSet<Restriction>>,
        identity: &IdentityGroups,
        different: &BTreeSet<(usize, usize)>,
        unsatisfiable: &BTreeSet<EntityRef>,
    ) -> Vec<Violation> {
        let mut violations = BTreeSet::new();

        // V1: one individual in two provably disjoint classes
        for (individual, set) in types {
            for &c in set {
                for &d in set {
                    if c < d && disjoint.contains(&(c, d)) {
                        violations.insert(Violation {
                            rule: RuleId::V1,
                            entities: vec![
                                individual.to_string(),
                                classes.items[c].to_string(),
                                classes.items[d].to_string(),
                            ],
                            detail: format!(
                                "{} has disjoint types {} and {}",
                                individual, classes.items[c], classes.items[d]
                            ),
                        });
                    }
                }
            }
        }

        // V2: a Different pair inside one Same group
        for (a, b) in self.store.different_pairs() {
            if identity.gid(a) == identity.gid(b) {
                violations.insert(Violation {
                    rule: RuleId::V2,
                    entities: vec![a.to_string(), b.to_string()],
                    detail: format!("{a} and {b} are both same and different"),
                });
            }
        }

        // V3 and V4 over members of restriction-defined classes
        for (class_iri, conjuncts) in restriction_sets {
            let cid = classes.id(class_iri);
            let members: Vec<&Iri> = self
                .individuals
                .iter()
                .filter(|i| types[*i].contains(&cid))
                .collect();
            if members.is_empty() {
                continue;
            }
            for r in conjuncts {
                match r {
                    Restriction::ObjectRestriction(card, prop, filler_class) => {
                        let fid = classes.id(&filler_class.iri);
                        if let Cardinality::Max(n) | Cardinality::Exact(n) = card {
                            for member in &members {
                                let fillers: BTreeSet<&Iri> = obj_links
                                    .iter()
                                    .filter(|(s, p, f)| {
                                        s == *member
                                            && *p == prop.iri
                                            && types[f].contains(&fid)
                                    })
                                    .map(|(_, _, f)| f)
                                    .collect();
                                if self.has_distinct_fillers(
                                    &fillers,
                                    *n as usize + 1,
                                    identity,
                                    different,
                                ) {
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
                                for (s, p, f) in obj_links {
                                    if s != *member || *p != prop.iri {
                                        continue;
                                    }
                                    let clash = types[f]
                                        .iter()
                                        .find(|&&e| disjoint.contains(&(e, fid)));
                                    if let Some(&e) = clash {
                                        violations.insert(Violation {
                                            rule: RuleId::V4,
                                            entities: vec![
                                                member.to_string(),
                                                class_iri.to_string(),
                                                f.to_string(),
                                            ],
                                            detail: format!(
                                                "{} only {} {} but filler {} is a {} (disjoint)",
                                                member,
                                                prop.iri,
                                                filler_class.iri,
                                                f,
                                                classes.items[e]
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
                                let count = data_links
                                    .iter()
                                    .filter(|(s, p, lit)| {
                                        s == *member
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
                                for (s, p, lit) in data_links {
                                    if s == *member
                                        && *p == prop.iri
                                        && lit.datatype() != datatype
                                    {
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

        // V5: instances of unsatisfiable classes
        for class in unsatisfiable {
            let cid = classes.id(&class.iri);
            for individual in &self.individuals {
                if types[individual].contains(&cid) {
                    violations.insert(Violation {
                        rule: RuleId::V5,
                        entities: vec![individual.to_string(), class.to_string()],
                        detail: format!(
                            "{} is an instance of unsatisfiable class {}",
                            individual, class
                        ),
                    });
                }
            }
        }

        violations.into_iter().collect()
    }

    /// Build the final entailed axiom set, both orientations included.
    #[allow(clippy::too_many_arguments)]
    fn materialise(
        &self,
        classes: &Taxonomy,
        disjoint_classes: &BTreeSet<(usize, usize)>,
        obj_taxonomy: &Taxonomy,
        data_taxonomy: &Taxonomy,
        inverse_pairs: &BTreeSet<(usize, usize)>,
        identity: &IdentityGroups,
        different: &BTreeSet<(usize, usize)>,
        obj_links: &BTreeSet<Link>,
        data_links: &BTreeSet<DataLinkFact>,
        types: &BTreeMap<Iri, BTreeSet<usize>>,
    ) -> BTreeSet<Axiom> {
        let mut out = BTreeSet::new();
        let class_ref = |i: usize| EntityRef::class(classes.items[i].clone());

        // class hierarchy, equivalence and disjointness
        let n = classes.items.len();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    if disjoint_classes.contains(&(a, a)) {
                        out.insert(Axiom::new(
                            class_ref(a),
                            ExpressionKind::Disjoint,
                            EntitySetElement::entity(class_ref(a)),
                        ));
                    }
                    continue;
                }
                if classes.same_group(a, b) {
                    out.insert(Axiom::new(
                        class_ref(a),
                        ExpressionKind::Equivalent,
                        EntitySetElement::entity(class_ref(b)),
                    ));
                } else if classes.le(a, b) {
                    out.insert(Axiom::new(
                        class_ref(a),
                        ExpressionKind::Super,
                        EntitySetElement::entity(class_ref(b)),
                    ));
                    out.insert(Axiom::new(
                        class_ref(b),
                        ExpressionKind::Sub,
                        EntitySetElement::entity(class_ref(a)),
                    ));
                }
                if disjoint_classes.contains(&(a, b)) {
                    out.insert(Axiom::new(
                        class_ref(a),
                        ExpressionKind::Disjoint,
                        EntitySetElement::entity(class_ref(b)),
                    ));
                }
            }
        }

        // asserted restriction definitions carry over
        for axiom in self.store.axioms() {
            if axiom.expression == ExpressionKind::EquivalentRestriction {
                out.insert(axiom.clone());
            }
        }

        // property hierarchies, equivalence, disjointness, inversion and
        // group-shared domains/ranges
        for (taxonomy, kind) in [
            (obj_taxonomy, EntityKind::ObjectProperty),
            (data_taxonomy, EntityKind::DataProperty),
        ] {
            let prop_ref = |i: usize| EntityRef::new(kind, taxonomy.items[i].clone());
            let m = taxonomy.items.len();
            for a in 0..m {
                for b in 0..m {
                    if a == b {
                        continue;
                    }
                    if taxonomy.same_group(a, b) {
                        out.insert(Axiom::new(
                            prop_ref(a),
                            ExpressionKind::Equivalent,
                            EntitySetElement::entity(prop_ref(b)),
                        ));
                    } else if taxonomy.le(a, b) {
                        out.insert(Axiom::new(
                            prop_ref(a),
                            ExpressionKind::Super,
                            EntitySetElement::entity(prop_ref(b)),
                        ));
                        out.insert(Axiom::new(
                            prop_ref(b),
                            ExpressionKind::Sub,
                            EntitySetElement::entity(prop_ref(a)),
                        ));
                    }
                }
            }
            let disjoint_pairs =
                self.expanded_symmetric_pairs(kind, ExpressionKind::Disjoint, taxonomy);
            for &(a, b) in &disjoint_pairs {
                out.insert(Axiom::new(
                    prop_ref(a),
                    ExpressionKind::Disjoint,
                    EntitySetElement::entity(prop_ref(b)),
                ));
            }
            if kind == EntityKind::ObjectProperty {
                for &(a, b) in inverse_pairs {
                    out.insert(Axiom::new(
                        prop_ref(a),
                        ExpressionKind::Inverse,
                        EntitySetElement::entity(prop_ref(b)),
                    ));
                }
            }
            // Domain/Range shared across the equivalence group
            for axiom in self.store.axioms() {
                if axiom.subject.kind != kind
                    || !matches!(
                        axiom.expression,
                        ExpressionKind::Domain | ExpressionKind::Range
                    )
                {
                    continue;
                }
                let pid = taxonomy.id(&axiom.subject.iri);
                for q in 0..m {
                    if taxonomy.same_group(pid, q) {
                        out.insert(Axiom::new(
                            prop_ref(q),
                            axiom.expression,
                            axiom.object.clone(),
                        ));
                    }
                }
            }
        }

        // individual types, identity and links
        for (individual, set) in types {
            let ind_ref = EntityRef::individual(individual.clone());
            for &c in set {
                out.insert(Axiom::new(
                    ind_ref.clone(),
                    ExpressionKind::Type,
                    EntitySetElement::entity(class_ref(c)),
                ));
                out.insert(Axiom::new(
                    class_ref(c),
                    ExpressionKind::Instance,
                    EntitySetElement::entity(ind_ref.clone()),
                ));
            }
        }
        for a in &self.individuals {
            for b in &self.individuals {
                if a == b {
                    continue;
                }
                let (ga, gb) = (identity.gid(a), identity.gid(b));
                if ga == gb {
                    out.insert(Axiom::new(
                        EntityRef::individual(a.clone()),
                        ExpressionKind::Equivalent,
                        EntitySetElement::entity(EntityRef::individual(b.clone())),
                    ));
                } else if different.contains(&(ga, gb)) {
                    out.insert(Axiom::new(
                        EntityRef::individual(a.clone()),
                        ExpressionKind::Disjoint,
                        EntitySetElement::entity(EntityRef::individual(b.clone())),
                    ));
                }
            }
        }
        for (s, p, f) in obj_links {
            out.insert(Axiom::new(
                EntityRef::individual(s.clone()),
                ExpressionKind::ObjectLink,
                EntitySetElement::object_pair(
                    EntityRef::object_property(p.clone()),
                    EntityRef::individual(f.clone()),
                ),
            ));
        }
        for (s, p, lit) in data_links {
            out.insert(Axiom::new(
                EntityRef::individual(s.clone()),
                ExpressionKind::DataLink,
                EntitySetElement::data_pair(EntityRef::data_property(p.clone()), lit.clone()),
            ));
        }

        out
    }
}

/// All ordered class pairs (x, y) such that x is provably disjoint from y:
/// some asserted pair (a, b) has x below a and y below b.
fn propagate_disjoint(
    taxonomy: &Taxonomy,
    seeds: &BTreeSet<(usize, usize)>,
) -> BTreeSet<(usize, usize)> {
    let n = taxonomy.items.len();
    let mut out = BTreeSet::new();
    for &(a, b) in seeds {
        for x in 0..n {
            if !taxonomy.le(x, a) {
                continue;
            }
            for y in 0..n {
                if taxonomy.le(y, b) {
                    out.insert((x, y));
                    out.insert((y, x));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Cardinality, LiteralValue};
    use crate::store::{Characteristic, IdentityPair};

    fn class(name: &str) -> EntityRef {
        EntityRef::class(Iri::local(name))
    }

    fn indiv(name: &str) -> EntityRef {
        EntityRef::individual(Iri::local(name))
    }

    fn oprop(name: &str) -> EntityRef {
        EntityRef::object_property(Iri::local(name))
    }

    fn entity(e: EntityRef) -> EntitySetElement {
        EntitySetElement::entity(e)
    }

    fn store() -> Ontology {
        Ontology::with_default_prefix("test", "http://example.org/test#")
    }

    fn names(set: &BTreeSet<EntitySetElement>) -> BTreeSet<String> {
        set.iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn room_hierarchy_matches_demo_sets() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            class("ROOM"),
            ExpressionKind::Super,
            entity(class("LOCATION")),
        ))
        .unwrap();
        for room in ["Room1", "Room2"] {
            s.assert_axiom(&Axiom::new(
                indiv(room),
                ExpressionKind::Type,
                entity(class("ROOM")),
            ))
            .unwrap();
        }
        s.synchronise_reasoner();
        assert!(!s.is_stale());

        let supers = s
            .entailed_entity_set(&class("ROOM"), ExpressionKind::Super)
            .unwrap();
        assert_eq!(names(&supers), BTreeSet::from([":LOCATION".into(), "owl:Thing".into()]));

        let instances = s
            .entailed_entity_set(&class("ROOM"), ExpressionKind::Instance)
            .unwrap();
        assert_eq!(names(&instances), BTreeSet::from([":Room1".into(), ":Room2".into()]));
    }

    #[test]
    fn min_cardinality_classifies_corridor() {
        let mut s = store();
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
            entity(class("LOCATION")),
        ))
        .unwrap();
        for (door, ty) in [("Door1", "DOOR"), ("Door2", "DOOR")] {
            s.assert_axiom(&Axiom::new(
                indiv("Corridor1"),
                ExpressionKind::ObjectLink,
                EntitySetElement::object_pair(oprop("hasDoor"), indiv(door)),
            ))
            .unwrap();
            s.assert_axiom(&Axiom::new(
                indiv(door),
                ExpressionKind::Type,
                entity(class(ty)),
            ))
            .unwrap();
        }
        s.synchronise_reasoner();
        assert!(s
            .is_entailed(&Axiom::new(
                indiv("Corridor1"),
                ExpressionKind::Type,
                entity(class("CORRIDOR")),
            ))
            .unwrap());
        assert!(s.snapshot().unwrap().consistency.consistent);

        // without the unique-name assumption the two doors are not provably
        // distinct, so the classification must not fire
        s.set_unique_name_assumption(false);
        s.synchronise_reasoner();
        assert!(!s
            .is_entailed(&Axiom::new(
                indiv("Corridor1"),
                ExpressionKind::Type,
                entity(class("CORRIDOR")),
            ))
            .unwrap());

        // an explicit Different pair restores it
        s.assert_identity(&IdentityPair::different(indiv("Door1"), indiv("Door2")))
            .unwrap();
        s.synchronise_reasoner();
        assert!(s
            .is_entailed(&Axiom::new(
                indiv("Corridor1"),
                ExpressionKind::Type,
                entity(class("CORRIDOR")),
            ))
            .unwrap());
    }

    #[test]
    fn disjoint_types_are_inconsistent() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            class("LOCATION"),
            ExpressionKind::Disjoint,
            entity(class("ROBOT")),
        ))
        .unwrap();
        for ty in ["ROBOT", "LOCATION"] {
            s.assert_axiom(&Axiom::new(
                indiv("Robot1"),
                ExpressionKind::Type,
                entity(class(ty)),
            ))
            .unwrap();
        }
        let snapshot = s.synchronise_reasoner();
        assert!(!snapshot.consistency.consistent);
        assert_eq!(snapshot.consistency.violations[0].rule, RuleId::V1);
    }

    #[test]
    fn disjointness_propagates_to_subclasses() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            class("ROOM"),
            ExpressionKind::Super,
            entity(class("LOCATION")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            class("ROBOT"),
            ExpressionKind::Disjoint,
            entity(class("LOCATION")),
        ))
        .unwrap();
        s.synchronise_reasoner();
        assert!(s
            .is_entailed(&Axiom::new(
                class("ROBOT"),
                ExpressionKind::Disjoint,
                entity(class("ROOM")),
            ))
            .unwrap());
    }

    #[test]
    fn symmetric_and_inverse_links() {
        let mut s = store();
        s.set_characteristic(&oprop("isLinkedTo"), Characteristic::Symmetric, true)
            .unwrap();
        s.assert_axiom(&Axiom::new(
            indiv("Room1"),
            ExpressionKind::ObjectLink,
            EntitySetElement::object_pair(oprop("isLinkedTo"), indiv("Corridor1")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            oprop("isIn"),
            ExpressionKind::Inverse,
            entity(oprop("contains")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            indiv("Robot1"),
            ExpressionKind::ObjectLink,
            EntitySetElement::object_pair(oprop("isIn"), indiv("Corridor1")),
        ))
        .unwrap();
        s.synchronise_reasoner();
        assert!(s
            .is_entailed(&Axiom::new(
                indiv("Corridor1"),
                ExpressionKind::ObjectLink,
                EntitySetElement::object_pair(oprop("isLinkedTo"), indiv("Room1")),
            ))
            .unwrap());
        assert!(s
            .is_entailed(&Axiom::new(
                indiv("Corridor1"),
                ExpressionKind::ObjectLink,
                EntitySetElement::object_pair(oprop("contains"), indiv("Robot1")),
            ))
            .unwrap());
    }

    #[test]
    fn transitive_closure_of_links() {
        let mut s = store();
        s.set_characteristic(&oprop("above"), Characteristic::Transitive, true)
            .unwrap();
        for (a, b) in [("A", "B"), ("B", "C"), ("C", "D")] {
            s.assert_axiom(&Axiom::new(
                indiv(a),
                ExpressionKind::ObjectLink,
                EntitySetElement::object_pair(oprop("above"), indiv(b)),
            ))
            .unwrap();
        }
        s.synchronise_reasoner();
        assert!(s
            .is_entailed(&Axiom::new(
                indiv("A"),
                ExpressionKind::ObjectLink,
                EntitySetElement::object_pair(oprop("above"), indiv("D")),
            ))
            .unwrap());
    }

    #[test]
    fn domain_and_range_typing() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            oprop("hasDoor"),
            ExpressionKind::Domain,
            EntitySetElement::restriction(Restriction::bare_class(class("LOCATION")).unwrap()),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            oprop("hasDoor"),
            ExpressionKind::Range,
            EntitySetElement::restriction(Restriction::bare_class(class("DOOR")).unwrap()),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            indiv("Corridor1"),
            ExpressionKind::ObjectLink,
            EntitySetElement::object_pair(oprop("hasDoor"), indiv("Door1")),
        ))
        .unwrap();
        s.synchronise_reasoner();
        let types = s
            .entailed_entity_set(&indiv("Corridor1"), ExpressionKind::Type)
            .unwrap();
        assert!(names(&types).contains(":LOCATION"));
        let door_types = s
            .entailed_entity_set(&indiv("Door1"), ExpressionKind::Type)
            .unwrap();
        assert!(names(&door_types).contains(":DOOR"));
    }

    #[test]
    fn data_property_domain_types_the_subject() {
        let mut s = store();
        let has_temperature = EntityRef::data_property(Iri::local("hasTemperature"));
        s.assert_axiom(&Axiom::new(
            has_temperature.clone(),
            ExpressionKind::Domain,
            EntitySetElement::restriction(Restriction::bare_class(class("LOCATION")).unwrap()),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            class("ROOM"),
            ExpressionKind::Super,
            entity(class("LOCATION")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            indiv("Room1"),
            ExpressionKind::Type,
            entity(class("ROOM")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            indiv("Room1"),
            ExpressionKind::DataLink,
            EntitySetElement::data_pair(has_temperature, LiteralValue::integer(24)),
        ))
        .unwrap();
        s.synchronise_reasoner();
        let types = s
            .entailed_entity_set(&indiv("Room1"), ExpressionKind::Type)
            .unwrap();
        let got = names(&types);
        for expected in [":ROOM", ":LOCATION", "owl:Thing"] {
            assert!(got.contains(expected), "missing {expected} in {got:?}");
        }
    }

    #[test]
    fn thing_scaffolding() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            indiv("Room1"),
            ExpressionKind::Type,
            entity(class("ROOM")),
        ))
        .unwrap();
        s.synchronise_reasoner();
        assert!(s
            .is_entailed(&Axiom::new(
                class("ROOM"),
                ExpressionKind::Super,
                entity(EntityRef::thing()),
            ))
            .unwrap());
        assert!(!s
            .is_entailed(&Axiom::new(
                class("ROOM"),
                ExpressionKind::Super,
                entity(class("ROOM")),
            ))
            .unwrap());
        assert!(s
            .entailed_entity_set(&EntityRef::thing(), ExpressionKind::Super)
            .unwrap()
            .is_empty());
        let types = s
            .entailed_entity_set(&indiv("Room1"), ExpressionKind::Type)
            .unwrap();
        assert!(names(&types).contains("owl:Thing"));
    }

    #[test]
    fn unsatisfiable_class_detected() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            class("GHOST"),
            ExpressionKind::Super,
            entity(class("MATTER")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            class("GHOST"),
            ExpressionKind::Disjoint,
            entity(class("MATTER")),
        ))
        .unwrap();
        let snapshot = s.synchronise_reasoner();
        assert_eq!(
            snapshot.consistency.unsatisfiable_classes,
            BTreeSet::from([class("GHOST")])
        );
        // no instances of GHOST, so the ontology stays consistent
        assert!(snapshot.consistency.consistent);

        s.assert_axiom(&Axiom::new(
            indiv("Casper"),
            ExpressionKind::Type,
            entity(class("GHOST")),
        ))
        .unwrap();
        let snapshot = s.synchronise_reasoner();
        assert!(!snapshot.consistency.consistent);
        assert!(snapshot
            .consistency
            .violations
            .iter()
            .any(|v| v.rule == RuleId::V5));
    }

    #[test]
    fn same_and_different_clash() {
        let mut s = store();
        s.assert_identity(&IdentityPair::same(indiv("a"), indiv("b")))
            .unwrap();
        s.assert_identity(&IdentityPair::different(indiv("a"), indiv("b")))
            .unwrap();
        let snapshot = s.synchronise_reasoner();
        assert!(!snapshot.consistency.consistent);
        assert_eq!(snapshot.consistency.violations[0].rule, RuleId::V2);
    }

    #[test]
    fn max_cardinality_violation() {
        let mut s = store();
        for r in [
            Restriction::bare_class(class("VEHICLE")).unwrap(),
            Restriction::object(Cardinality::Max(1), oprop("hasEngine"), class("ENGINE")).unwrap(),
        ] {
            s.assert_axiom(&Axiom::new(
                class("MONOPLANE"),
                ExpressionKind::EquivalentRestriction,
                EntitySetElement::restriction(r),
            ))
            .unwrap();
        }
        s.assert_axiom(&Axiom::new(
            indiv("Plane1"),
            ExpressionKind::Type,
            entity(class("MONOPLANE")),
        ))
        .unwrap();
        for engine in ["E1", "E2"] {
            s.assert_axiom(&Axiom::new(
                indiv("Plane1"),
                ExpressionKind::ObjectLink,
                EntitySetElement::object_pair(oprop("hasEngine"), indiv(engine)),
            ))
            .unwrap();
            s.assert_axiom(&Axiom::new(
                indiv(engine),
                ExpressionKind::Type,
                entity(class("ENGINE")),
            ))
            .unwrap();
        }
        let snapshot = s.synchronise_reasoner();
        assert!(!snapshot.consistency.consistent);
        assert!(snapshot
            .consistency
            .violations
            .iter()
            .any(|v| v.rule == RuleId::V3));
    }

    #[test]
    fn only_restriction_violation() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            class("DOOR"),
            ExpressionKind::Disjoint,
            entity(class("WINDOW")),
        ))
        .unwrap();
        for r in [
            Restriction::bare_class(class("LOCATION")).unwrap(),
            Restriction::object(Cardinality::Only, oprop("hasOpening"), class("DOOR")).unwrap(),
        ] {
            s.assert_axiom(&Axiom::new(
                class("BUNKER"),
                ExpressionKind::EquivalentRestriction,
                EntitySetElement::restriction(r),
            ))
            .unwrap();
        }
        s.assert_axiom(&Axiom::new(
            indiv("B1"),
            ExpressionKind::Type,
            entity(class("BUNKER")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            indiv("B1"),
            ExpressionKind::ObjectLink,
            EntitySetElement::object_pair(oprop("hasOpening"), indiv("W1")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            indiv("W1"),
            ExpressionKind::Type,
            entity(class("WINDOW")),
        ))
        .unwrap();
        let snapshot = s.synchronise_reasoner();
        assert!(!snapshot.consistency.consistent);
        assert!(snapshot
            .consistency
            .violations
            .iter()
            .any(|v| v.rule == RuleId::V4));
    }

    #[test]
    fn sync_twice_is_stable() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            class("ROOM"),
            ExpressionKind::Super,
            entity(class("LOCATION")),
        ))
        .unwrap();
        let first = s.synchronise_reasoner();
        let second = s.synchronise_reasoner();
        assert!(first.same_content(&second));
        assert_ne!(first.sequence, second.sequence);
    }

    #[test]
    fn entailed_superset_of_asserted() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            class("ROOM"),
            ExpressionKind::Super,
            entity(class("LOCATION")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            indiv("Room1"),
            ExpressionKind::DataLink,
            EntitySetElement::data_pair(
                EntityRef::data_property(Iri::local("hasTemperature")),
                LiteralValue::integer(24),
            ),
        ))
        .unwrap();
        let snapshot = s.synchronise_reasoner();
        for axiom in s.axioms() {
            assert!(snapshot.is_entailed(axiom), "missing {axiom}");
        }
    }

    #[test]
    fn mutual_subsumption_merges_groups() {
        let mut s = store();
        s.assert_axiom(&Axiom::new(
            class("A"),
            ExpressionKind::Super,
            entity(class("B")),
        ))
        .unwrap();
        s.assert_axiom(&Axiom::new(
            class("B"),
            ExpressionKind::Super,
            entity(class("A")),
        ))
        .unwrap();
        let snapshot = s.synchronise_reasoner();
        assert!(snapshot.is_entailed(&Axiom::new(
            class("A"),
            ExpressionKind::Equivalent,
            entity(class("B")),
        )));
        assert!(!snapshot.is_entailed(&Axiom::new(
            class("A"),
            ExpressionKind::Super,
            entity(class("B")),
        )));
        assert!(snapshot
            .class_groups
            .iter()
            .any(|g| g.contains(&Iri::local("A")) && g.contains(&Iri::local("B"))));
    }

    #[test]
    fn query_without_snapshot_errors() {
        let s = store();
        assert_eq!(
            s.entailed_entity_set(&class("ROOM"), ExpressionKind::Super)
                .unwrap_err(),
            StoreError::NoSnapshot
        );
    }
}
