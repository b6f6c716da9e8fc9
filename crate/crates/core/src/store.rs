//! In-memory axiom store: declarations, asserted axioms, object-property
//! characteristics and individual identity, with a staleness flag relative to
//! the last reasoner synchronisation.
//!
//! Axioms are kept in one canonical form each, so that the same statement
//! asserted through either of its two surface orientations (`Sub`/`Super`,
//! `Type`/`Instance`, either order of a symmetric pair) lands on a single
//! record. Lookups and enumeration accept both orientations.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::model::{
    datatypes, validate_axiom, Axiom, EntityKind, EntityRef, EntitySetElement, ExpressionKind,
    Iri, ModelError,
};
use crate::reasoner::InferenceSnapshot;

static NEXT_STORE_ID: AtomicU64 = AtomicU64::new(1);

/// Object-property flags the reasoner consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PropertyCharacteristics {
    pub transitive: bool,
    pub symmetric: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Characteristic {
    Transitive,
    Symmetric,
}

/// Identity relation between two distinct named individuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IdentityRelation {
    Same,
    Different,
}

/// An unordered identity pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdentityPair {
    pub a: EntityRef,
    pub b: EntityRef,
    pub relation: IdentityRelation,
}

impl IdentityPair {
    pub fn same(a: EntityRef, b: EntityRef) -> Self {
        IdentityPair {
            a,
            b,
            relation: IdentityRelation::Same,
        }
    }

    pub fn different(a: EntityRef, b: EntityRef) -> Self {
        IdentityPair {
            a,
            b,
            relation: IdentityRelation::Different,
        }
    }
}

/// How a mutation landed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChangeReport {
    Added,
    AlreadyPresent,
    Removed,
    Absent,
}

impl ChangeReport {
    pub fn changed(self) -> bool {
        matches!(self, ChangeReport::Added | ChangeReport::Removed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("store name must not be empty")]
    EmptyName,
    #[error("duplicate prefix key {0:?}")]
    DuplicatePrefix(String),
    #[error(transparent)]
    Validation(#[from] ModelError),
    #[error("({subject}, {expression}) is not a legal ground/expression row")]
    IllegalRow {
        subject: String,
        expression: ExpressionKind,
    },
    #[error("characteristics apply to object properties, found {0:?}")]
    NotAnObjectProperty(EntityKind),
    #[error("an individual cannot be asserted different from itself")]
    ReflexiveDifferent,
    #[error("no reasoner snapshot available; synchronise first")]
    NoSnapshot,
}

/// The mutable ontology: asserted state plus the latest inference snapshot.
///
/// One writer or many readers at a time; callers serialise writes. Snapshots
/// are immutable once published and shared by reference count.
#[derive(Debug, Clone)]
pub struct Ontology {
    id: u64,
    name: String,
    ontology_iri: String,
    prefixes: BTreeMap<String, String>,
    declarations: BTreeSet<EntityRef>,
    axioms: BTreeSet<Axiom>,
    characteristics: BTreeMap<Iri, PropertyCharacteristics>,
    same_pairs: BTreeSet<(Iri, Iri)>,
    different_pairs: BTreeSet<(Iri, Iri)>,
    unique_name_assumption: bool,
    stale_since_sync: bool,
    snapshot: Option<Arc<InferenceSnapshot>>,
    mutation_seq: u64,
    sync_count: u64,
}

impl Ontology {
    /// Create an empty store holding only the built-in declarations.
    pub fn new(
        name: impl Into<String>,
        prefixes: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, StoreError> {
        let name = name.into();
        if name.is_empty() {
            return Err(StoreError::EmptyName);
        }
        let mut map = BTreeMap::new();
        for (key, base) in prefixes {
            if map.insert(key.clone(), base).is_some() {
                return Err(StoreError::DuplicatePrefix(key));
            }
        }
        map.entry("owl".to_string())
            .or_insert_with(|| "http://www.w3.org/2002/07/owl#".to_string());
        map.entry("xsd".to_string())
            .or_insert_with(|| "http://www.w3.org/2001/XMLSchema#".to_string());

        let mut declarations = BTreeSet::new();
        declarations.insert(EntityRef::thing());
        declarations.insert(EntityRef::nothing());
        for dt in datatypes::builtins() {
            declarations.insert(dt);
        }

        Ok(Ontology {
            id: NEXT_STORE_ID.fetch_add(1, Ordering::Relaxed),
            name,
            ontology_iri: String::new(),
            prefixes: map,
            declarations,
            axioms: BTreeSet::new(),
            characteristics: BTreeMap::new(),
            same_pairs: BTreeSet::new(),
            different_pairs: BTreeSet::new(),
            unique_name_assumption: true,
            stale_since_sync: true,
            snapshot: None,
            mutation_seq: 0,
            sync_count: 0,
        })
    }

    /// Default-prefix convenience constructor.
    pub fn with_default_prefix(name: impl Into<String>, base: impl Into<String>) -> Self {
        Ontology::new(name, [(String::new(), base.into())]).expect("non-empty name")
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ontology_iri(&self) -> &str {
        &self.ontology_iri
    }

    pub fn set_ontology_iri(&mut self, iri: impl Into<String>) {
        self.ontology_iri = iri.into();
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn is_stale(&self) -> bool {
        self.stale_since_sync
    }

    pub fn unique_name_assumption(&self) -> bool {
        self.unique_name_assumption
    }

    /// Toggle the unique-name assumption used for cardinality counting.
    pub fn set_unique_name_assumption(&mut self, on: bool) {
        if self.unique_name_assumption != on {
            self.unique_name_assumption = on;
            self.touch();
        }
    }

    pub fn declarations(&self) -> &BTreeSet<EntityRef> {
        &self.declarations
    }

    pub fn declared(&self, entity: &EntityRef) -> bool {
        self.declarations.contains(entity)
    }

    pub fn declared_of_kind(&self, kind: EntityKind) -> impl Iterator<Item = &EntityRef> {
        self.declarations.iter().filter(move |e| e.kind == kind)
    }

    /// Asserted axioms in canonical form.
    pub fn axioms(&self) -> &BTreeSet<Axiom> {
        &self.axioms
    }

    pub fn characteristics(&self) -> &BTreeMap<Iri, PropertyCharacteristics> {
        &self.characteristics
    }

    pub fn characteristics_of(&self, property: &Iri) -> PropertyCharacteristics {
        self.characteristics.get(property).copied().unwrap_or_default()
    }

    pub fn same_pairs(&self) -> &BTreeSet<(Iri, Iri)> {
        &self.same_pairs
    }

    pub fn different_pairs(&self) -> &BTreeSet<(Iri, Iri)> {
        &self.different_pairs
    }

    pub fn snapshot(&self) -> Option<Arc<InferenceSnapshot>> {
        self.snapshot.clone()
    }

    /// Monotone counter incremented on every effective mutation.
    pub fn mutation_seq(&self) -> u64 {
        self.mutation_seq
    }

    fn touch(&mut self) {
        self.mutation_seq += 1;
        self.stale_since_sync = true;
    }

    /// Record an entity, returning whether it was new. New declarations mark
    /// the store stale (they extend the reasoner's scaffolding).
    pub fn declare(&mut self, entity: EntityRef) -> ChangeReport {
        if self.declarations.insert(entity) {
            self.touch();
            ChangeReport::Added
        } else {
            ChangeReport::AlreadyPresent
        }
    }

    fn declare_all(&mut self, axiom: &Axiom) {
        for entity in axiom.referenced_entities() {
            self.declare(entity);
        }
    }

    /// Assert one axiom. Undeclared entities are declared on the way in.
    ///
    /// Reflexive `Equivalent`/`Super`/`Sub` statements are trivially true and
    /// recorded as already present rather than stored.
    pub fn assert_axiom(&mut self, axiom: &Axiom) -> Result<ChangeReport, StoreError> {
        validate_axiom(axiom)?;
        self.declare_all(axiom);
        match canonicalise(axiom) {
            Canonical::Axiom(canon) => {
                if self.axioms.insert(canon) {
                    self.touch();
                    Ok(ChangeReport::Added)
                } else {
                    Ok(ChangeReport::AlreadyPresent)
                }
            }
            Canonical::Identity(pair) => self.assert_identity(&pair),
            Canonical::Tautology => Ok(ChangeReport::AlreadyPresent),
        }
    }

    /// Retract one axiom. Declarations are never garbage-collected.
    pub fn retract_axiom(&mut self, axiom: &Axiom) -> ChangeReport {
        match canonicalise(axiom) {
            Canonical::Axiom(canon) => {
                if self.axioms.remove(&canon) {
                    self.touch();
                    ChangeReport::Removed
                } else {
                    ChangeReport::Absent
                }
            }
            Canonical::Identity(pair) => self.retract_identity(&pair),
            Canonical::Tautology => ChangeReport::Absent,
        }
    }

    /// Membership up to canonical orientation.
    pub fn contains_axiom(&self, axiom: &Axiom) -> bool {
        match canonicalise(axiom) {
            Canonical::Axiom(canon) => self.axioms.contains(&canon),
            Canonical::Identity(pair) => self.contains_identity(&pair),
            Canonical::Tautology => false,
        }
    }

    /// All asserted elements `y` with `(subject, kind, y)` in the store; no
    /// inference. Dual orientations are folded in.
    pub fn enumerate_axioms(
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
        if subject.kind == EntityKind::NamedIndividual
            && matches!(kind, ExpressionKind::Equivalent | ExpressionKind::Disjoint)
        {
            let pairs = match kind {
                ExpressionKind::Equivalent => &self.same_pairs,
                _ => &self.different_pairs,
            };
            return Ok(pairs
                .iter()
                .filter_map(|(a, b)| {
                    if *a == subject.iri {
                        Some(EntitySetElement::entity(EntityRef::individual(b.clone())))
                    } else if *b == subject.iri {
                        Some(EntitySetElement::entity(EntityRef::individual(a.clone())))
                    } else {
                        None
                    }
                })
                .collect());
        }

        let mut out = BTreeSet::new();
        for axiom in &self.axioms {
            for (subj, expr, element) in orientations(axiom) {
                if expr == kind && subj == *subject {
                    out.insert(element);
                }
            }
        }
        Ok(out)
    }

    /// Set or clear a transitive/symmetric flag on an object property.
    pub fn set_characteristic(
        &mut self,
        property: &EntityRef,
        flag: Characteristic,
        value: bool,
    ) -> Result<ChangeReport, StoreError> {
        if property.kind != EntityKind::ObjectProperty {
            return Err(StoreError::NotAnObjectProperty(property.kind));
        }
        self.declare(property.clone());
        let entry = self.characteristics.entry(property.iri.clone()).or_default();
        let slot = match flag {
            Characteristic::Transitive => &mut entry.transitive,
            Characteristic::Symmetric => &mut entry.symmetric,
        };
        if *slot == value {
            Ok(ChangeReport::AlreadyPresent)
        } else {
            *slot = value;
            self.touch();
            Ok(if value {
                ChangeReport::Added
            } else {
                ChangeReport::Removed
            })
        }
    }

    /// Record a Same/Different identity pair between distinct individuals.
    ///
    /// `Same(x, x)` is a reflexive no-op; `Different(x, x)` is an error.
    pub fn assert_identity(&mut self, pair: &IdentityPair) -> Result<ChangeReport, StoreError> {
        if pair.a.kind != EntityKind::NamedIndividual {
            return Err(ModelError::KindMismatch {
                expected: EntityKind::NamedIndividual,
                found: pair.a.kind,
                entity: pair.a.iri.to_string(),
            }
            .into());
        }
        if pair.b.kind != EntityKind::NamedIndividual {
            return Err(ModelError::KindMismatch {
                expected: EntityKind::NamedIndividual,
                found: pair.b.kind,
                entity: pair.b.iri.to_string(),
            }
            .into());
        }
        if pair.a == pair.b {
            return match pair.relation {
                IdentityRelation::Same => Ok(ChangeReport::AlreadyPresent),
                IdentityRelation::Different => Err(StoreError::ReflexiveDifferent),
            };
        }
        self.declare(pair.a.clone());
        self.declare(pair.b.clone());
        let key = sorted_pair(&pair.a.iri, &pair.b.iri);
        let set = match pair.relation {
            IdentityRelation::Same => &mut self.same_pairs,
            IdentityRelation::Different => &mut self.different_pairs,
        };
        if set.insert(key) {
            self.touch();
            Ok(ChangeReport::Added)
        } else {
            Ok(ChangeReport::AlreadyPresent)
        }
    }

    pub fn retract_identity(&mut self, pair: &IdentityPair) -> ChangeReport {
        if pair.a == pair.b {
            return ChangeReport::Absent;
        }
        let key = sorted_pair(&pair.a.iri, &pair.b.iri);
        let set = match pair.relation {
            IdentityRelation::Same => &mut self.same_pairs,
            IdentityRelation::Different => &mut self.different_pairs,
        };
        if set.remove(&key) {
            self.touch();
            ChangeReport::Removed
        } else {
            ChangeReport::Absent
        }
    }

    pub fn contains_identity(&self, pair: &IdentityPair) -> bool {
        let key = sorted_pair(&pair.a.iri, &pair.b.iri);
        match pair.relation {
            IdentityRelation::Same => self.same_pairs.contains(&key),
            IdentityRelation::Different => self.different_pairs.contains(&key),
        }
    }

    /// Install a fresh snapshot and clear the staleness flag. Used by the
    /// reasoner entry points.
    pub(crate) fn publish_snapshot(&mut self, snapshot: InferenceSnapshot) -> Arc<InferenceSnapshot> {
        let arc = Arc::new(snapshot);
        self.snapshot = Some(arc.clone());
        self.stale_since_sync = false;
        self.sync_count += 1;
        arc
    }

    pub(crate) fn next_snapshot_sequence(&self) -> u64 {
        self.sync_count + 1
    }

    /// Asserted-state equality: declarations, axioms, characteristics and
    /// identity pairs (snapshot, counters and name excluded).
    pub fn same_asserted_state(&self, other: &Ontology) -> bool {
        self.declarations == other.declarations
            && self.axioms == other.axioms
            && self.characteristics == other.characteristics
            && self.same_pairs == other.same_pairs
            && self.different_pairs == other.different_pairs
    }
}

fn sorted_pair(a: &Iri, b: &Iri) -> (Iri, Iri) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

enum Canonical {
    Axiom(Axiom),
    Identity(IdentityPair),
    Tautology,
}

/// Fold the dual surface orientations onto one stored form:
/// `Sub` becomes `Super` seen from the other side, `Instance` becomes `Type`,
/// symmetric expressions order their operands, and individual
/// `Equivalent`/`Disjoint` become identity pairs. Reflexive hierarchy or
/// equivalence statements are tautologies and are not stored.
fn canonicalise(axiom: &Axiom) -> Canonical {
    use ExpressionKind::*;
    let subject = &axiom.subject;
    match (subject.kind, axiom.expression, &axiom.object) {
        (EntityKind::NamedIndividual, Equivalent, EntitySetElement::Entity(other)) => {
            if subject == other {
                Canonical::Tautology
            } else {
                Canonical::Identity(IdentityPair::same(subject.clone(), other.clone()))
            }
        }
        (EntityKind::NamedIndividual, Disjoint, EntitySetElement::Entity(other)) => {
            Canonical::Identity(IdentityPair::different(subject.clone(), other.clone()))
        }
        (_, Sub, EntitySetElement::Entity(other)) => {
            if subject == other {
                Canonical::Tautology
            } else {
                Canonical::Axiom(Axiom::new(
                    other.clone(),
                    Super,
                    EntitySetElement::entity(subject.clone()),
                ))
            }
        }
        (_, Super, EntitySetElement::Entity(other)) => {
            if subject == other {
                Canonical::Tautology
            } else {
                Canonical::Axiom(axiom.clone())
            }
        }
        (_, Instance, EntitySetElement::Entity(other)) => Canonical::Axiom(Axiom::new(
            other.clone(),
            Type,
            EntitySetElement::entity(subject.clone()),
        )),
        (_, Equivalent | Disjoint | Inverse, EntitySetElement::Entity(other)) => {
            if subject == other {
                if axiom.expression == Equivalent {
                    return Canonical::Tautology;
                }
                // self-disjointness and self-inversion are meaningful
                return Canonical::Axiom(axiom.clone());
            }
            if subject.iri <= other.iri {
                Canonical::Axiom(axiom.clone())
            } else {
                Canonical::Axiom(Axiom::new(
                    other.clone(),
                    axiom.expression,
                    EntitySetElement::entity(subject.clone()),
                ))
            }
        }
        _ => Canonical::Axiom(axiom.clone()),
    }
}

/// All surface orientations of one stored axiom, the canonical one included.
fn orientations(axiom: &Axiom) -> Vec<(EntityRef, ExpressionKind, EntitySetElement)> {
    use ExpressionKind::*;
    let mut out = vec![(
        axiom.subject.clone(),
        axiom.expression,
        axiom.object.clone(),
    )];
    match (axiom.expression, &axiom.object) {
        (Super, EntitySetElement::Entity(other)) => {
            out.push((
                other.clone(),
                Sub,
                EntitySetElement::entity(axiom.subject.clone()),
            ));
        }
        (Type, EntitySetElement::Entity(other)) => {
            out.push((
                other.clone(),
                Instance,
                EntitySetElement::entity(axiom.subject.clone()),
            ));
        }
        (Equivalent | Disjoint | Inverse, EntitySetElement::Entity(other))
            if *other != axiom.subject =>
        {
            out.push((
                other.clone(),
                axiom.expression,
                EntitySetElement::entity(axiom.subject.clone()),
            ));
        }
        _ => {}
    }
    out
}
