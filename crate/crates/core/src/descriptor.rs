//! Descriptors: the object side of the object–ontology mapping.
//!
//! A descriptor couples one ground entity with a mutable entity set per
//! declared expression. Local edits stay local until `write_axioms` pushes
//! them into the store; `read_axioms` pulls the store (inferences included
//! when a snapshot exists) into the local sets. Both directions return
//! invertible [`MappingIntent`] records, and `build` turns entity-set
//! elements into new descriptors grounded on them.
//!
//! Profiles are plain data rather than an inheritance hierarchy: a profile
//! names the ground kind, the expressions carried, and per expression the
//! profile used to build element descriptors. [`ProfileRegistry::builtin`]
//! ships the four maximal profiles (one per ground kind) plus the smaller
//! task-oriented ones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::model::{
    validate_axiom, Axiom, EntityKind, EntityRef, EntitySetElement, ExpressionKind, Iri,
    ModelError,
};
use crate::store::{Ontology, StoreError};

/// For `ObjectLink` elements, whether built descriptors ground on the filler
/// individual or on the property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkGrounding {
    Filler,
    Property,
}

/// Build directive for one expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildTarget {
    pub profile: String,
    pub grounding: LinkGrounding,
}

impl BuildTarget {
    pub fn new(profile: impl Into<String>) -> Self {
        BuildTarget {
            profile: profile.into(),
            grounding: LinkGrounding::Filler,
        }
    }

    pub fn on_property(profile: impl Into<String>) -> Self {
        BuildTarget {
            profile: profile.into(),
            grounding: LinkGrounding::Property,
        }
    }
}

/// A named descriptor shape: ground kind, expressions, build directives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescriptorProfile {
    pub name: String,
    pub ground_kind: EntityKind,
    pub expressions: BTreeSet<ExpressionKind>,
    pub build_targets: BTreeMap<ExpressionKind, BuildTarget>,
}

impl DescriptorProfile {
    pub fn new(
        name: impl Into<String>,
        ground_kind: EntityKind,
        expressions: impl IntoIterator<Item = ExpressionKind>,
    ) -> Result<Self, DescriptorError> {
        let name = name.into();
        let expressions: BTreeSet<ExpressionKind> = expressions.into_iter().collect();
        if expressions.is_empty() {
            return Err(DescriptorError::EmptyProfile(name));
        }
        for expr in &expressions {
            if !expr.legal_for(ground_kind) {
                return Err(DescriptorError::IllegalProfileExpression {
                    profile: name,
                    ground_kind,
                    expression: *expr,
                });
            }
        }
        Ok(DescriptorProfile {
            name,
            ground_kind,
            expressions,
            build_targets: BTreeMap::new(),
        })
    }

    pub fn with_build(
        mut self,
        expression: ExpressionKind,
        target: BuildTarget,
    ) -> Result<Self, DescriptorError> {
        if !self.expressions.contains(&expression) {
            return Err(DescriptorError::ExpressionNotInProfile {
                profile: self.name.clone(),
                expression,
            });
        }
        if built_entity_kind(self.ground_kind, expression, target.grounding).is_none() {
            return Err(DescriptorError::NotBuildable {
                profile: self.name.clone(),
                expression,
            });
        }
        self.build_targets.insert(expression, target);
        Ok(self)
    }
}

/// The entity kind a built descriptor grounds on, per expression. Restriction
/// expressions have nothing to ground on and are not buildable.
fn built_entity_kind(
    ground: EntityKind,
    expression: ExpressionKind,
    grounding: LinkGrounding,
) -> Option<EntityKind> {
    use EntityKind::*;
    use ExpressionKind::*;
    match (ground, expression) {
        (Class, Equivalent | Disjoint | Super | Sub) => Some(Class),
        (Class, Instance) => Some(NamedIndividual),
        (NamedIndividual, Type) => Some(Class),
        (NamedIndividual, Equivalent | Disjoint) => Some(NamedIndividual),
        (NamedIndividual, ObjectLink) => Some(match grounding {
            LinkGrounding::Filler => NamedIndividual,
            LinkGrounding::Property => ObjectProperty,
        }),
        (NamedIndividual, DataLink) => Some(DataProperty),
        (ObjectProperty, Equivalent | Disjoint | Sub | Super | Inverse) => Some(ObjectProperty),
        (DataProperty, Equivalent | Disjoint | Sub | Super) => Some(DataProperty),
        _ => None,
    }
}

/// Registry of profiles addressable by name from build targets.
#[derive(Debug, Clone, Default)]
pub struct ProfileRegistry {
    profiles: BTreeMap<String, Arc<DescriptorProfile>>,
}

impl ProfileRegistry {
    pub fn empty() -> Self {
        ProfileRegistry::default()
    }

    /// The shipped profiles: maximal `FullClass`, `FullIndividual`,
    /// `FullObjectProperty` and `FullDataProperty`, plus `LinkIndividual`,
    /// `TypeIndividual`, `SubClassInstance`, `DisjointClass` and
    /// `DomainRangeObjectProperty`.
    pub fn builtin() -> Self {
        use EntityKind::*;
        use ExpressionKind::*;
        let mut registry = ProfileRegistry::empty();
        let register = |registry: &mut ProfileRegistry, p: DescriptorProfile| {
            registry.register(p).expect("builtin profiles are valid");
        };

        let full_class = DescriptorProfile::new(
            "FullClass",
            Class,
            [Equivalent, Disjoint, Super, Sub, Instance, EquivalentRestriction],
        )
        .and_then(|p| p.with_build(Equivalent, BuildTarget::new("FullClass")))
        .and_then(|p| p.with_build(Disjoint, BuildTarget::new("FullClass")))
        .and_then(|p| p.with_build(Super, BuildTarget::new("FullClass")))
        .and_then(|p| p.with_build(Sub, BuildTarget::new("FullClass")))
        .and_then(|p| p.with_build(Instance, BuildTarget::new("FullIndividual")))
        .expect("valid profile");
        register(&mut registry, full_class);

        let full_individual = DescriptorProfile::new(
            "FullIndividual",
            NamedIndividual,
            [Type, Equivalent, Disjoint, ObjectLink, DataLink],
        )
        .and_then(|p| p.with_build(Type, BuildTarget::new("FullClass")))
        .and_then(|p| p.with_build(Equivalent, BuildTarget::new("FullIndividual")))
        .and_then(|p| p.with_build(Disjoint, BuildTarget::new("FullIndividual")))
        .and_then(|p| p.with_build(ObjectLink, BuildTarget::new("FullIndividual")))
        .and_then(|p| p.with_build(DataLink, BuildTarget::on_property("FullDataProperty")))
        .expect("valid profile");
        register(&mut registry, full_individual);

        let full_object_property = DescriptorProfile::new(
            "FullObjectProperty",
            ObjectProperty,
            [Equivalent, Disjoint, Sub, Super, Inverse, Domain, Range],
        )
        .and_then(|p| p.with_build(Equivalent, BuildTarget::new("FullObjectProperty")))
        .and_then(|p| p.with_build(Disjoint, BuildTarget::new("FullObjectProperty")))
        .and_then(|p| p.with_build(Sub, BuildTarget::new("FullObjectProperty")))
        .and_then(|p| p.with_build(Super, BuildTarget::new("FullObjectProperty")))
        .and_then(|p| p.with_build(Inverse, BuildTarget::new("FullObjectProperty")))
        .expect("valid profile");
        register(&mut registry, full_object_property);

        let full_data_property = DescriptorProfile::new(
            "FullDataProperty",
            DataProperty,
            [Equivalent, Disjoint, Sub, Super, Domain, Range],
        )
        .and_then(|p| p.with_build(Equivalent, BuildTarget::new("FullDataProperty")))
        .and_then(|p| p.with_build(Disjoint, BuildTarget::new("FullDataProperty")))
        .and_then(|p| p.with_build(Sub, BuildTarget::new("FullDataProperty")))
        .and_then(|p| p.with_build(Super, BuildTarget::new("FullDataProperty")))
        .expect("valid profile");
        register(&mut registry, full_data_property);

        let link_individual =
            DescriptorProfile::new("LinkIndividual", NamedIndividual, [ObjectLink, DataLink])
                .and_then(|p| p.with_build(ObjectLink, BuildTarget::new("LinkIndividual")))
                .expect("valid profile");
        register(&mut registry, link_individual);

        let type_individual = DescriptorProfile::new("TypeIndividual", NamedIndividual, [Type])
            .and_then(|p| p.with_build(Type, BuildTarget::new("SubClassInstance")))
            .expect("valid profile");
        register(&mut registry, type_individual);

        let sub_class_instance =
            DescriptorProfile::new("SubClassInstance", Class, [Sub, Instance])
                .and_then(|p| p.with_build(Sub, BuildTarget::new("SubClassInstance")))
                .and_then(|p| p.with_build(Instance, BuildTarget::new("TypeIndividual")))
                .expect("valid profile");
        register(&mut registry, sub_class_instance);

        register(
            &mut registry,
            DescriptorProfile::new("DisjointClass", Class, [Disjoint]).expect("valid profile"),
        );
        register(
            &mut registry,
            DescriptorProfile::new("DomainRangeObjectProperty", ObjectProperty, [Domain, Range])
                .expect("valid profile"),
        );
        registry
    }

    /// Insert a profile after checking that each build target is resolvable
    /// once the registry is complete; target kinds are verified on `build`.
    pub fn register(&mut self, profile: DescriptorProfile) -> Result<(), DescriptorError> {
        self.profiles
            .insert(profile.name.clone(), Arc::new(profile));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<Arc<DescriptorProfile>> {
        self.profiles.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.profiles.keys().map(|s| s.as_str())
    }
}

/// Side of the mapping a change landed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Locus {
    DescriptorState,
    OntologyState,
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::DescriptorState => write!(f, "descriptor"),
            Locus::OntologyState => write!(f, "ontology"),
        }
    }
}

/// Direction of one recorded change. `SkippedPin` is a zero-effect warning
/// left when `write_axioms` meets a wildcard pin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChangeKind {
    Added,
    Removed,
    SkippedPin,
}

impl fmt::Display for ChangeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChangeKind::Added => write!(f, "+"),
            ChangeKind::Removed => write!(f, "-"),
            ChangeKind::SkippedPin => write!(f, "~"),
        }
    }
}

/// Invertible record of one synchronisation change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingIntent {
    pub ground: EntityRef,
    pub expression: ExpressionKind,
    pub element: EntitySetElement,
    pub change: ChangeKind,
    pub locus: Locus,
    /// Mutation counter of the touched side right after this change.
    pub sequence: u64,
}

impl fmt::Display for MappingIntent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            self.locus, self.change, self.ground, self.expression, self.element
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescriptorError {
    #[error("profile {0} declares no expressions")]
    EmptyProfile(String),
    #[error("profile {profile}: {expression} is not legal for {ground_kind:?} ground")]
    IllegalProfileExpression {
        profile: String,
        ground_kind: EntityKind,
        expression: ExpressionKind,
    },
    #[error("profile {profile} does not carry expression {expression}")]
    ExpressionNotInProfile {
        profile: String,
        expression: ExpressionKind,
    },
    #[error("profile {profile}: expression {expression} has no buildable ground")]
    NotBuildable {
        profile: String,
        expression: ExpressionKind,
    },
    #[error("ground {ground} has kind {found:?}, profile {profile} wants {expected:?}")]
    GroundKindMismatch {
        profile: String,
        ground: String,
        expected: EntityKind,
        found: EntityKind,
    },
    #[error("descriptor is bound to store {bound}, called with store {given}")]
    StoreMismatch { bound: u64, given: u64 },
    #[error("element does not fit ({expression} set): {source}")]
    ElementMismatch {
        expression: ExpressionKind,
        source: ModelError,
    },
    #[error("wildcard pins are only accepted for ObjectLink and DataLink sets")]
    PinNotAllowed,
    #[error("expression {expression} has no build target in profile {profile}")]
    NoBuildTarget {
        profile: String,
        expression: ExpressionKind,
    },
    #[error("build target profile {0} is not registered")]
    UnknownProfile(String),
    #[error(
        "build target {profile} grounds on {expected:?} but {expression} elements are {found:?}"
    )]
    BuildKindMismatch {
        profile: String,
        expression: ExpressionKind,
        expected: EntityKind,
        found: EntityKind,
    },
    #[error("local set for {0} contains wildcard pins")]
    WildcardPresent(ExpressionKind),
    #[error("intent sequence conflict: expected {expected}, state is at {found}")]
    SequenceConflict { expected: u64, found: u64 },
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Result of a descriptor query, flagging whether inference backed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub elements: BTreeSet<EntitySetElement>,
    /// False when no snapshot existed and the asserted store answered.
    pub inferred: bool,
}

/// One ground entity with a mutable entity set per profile expression,
/// bound to a single store by identity.
#[derive(Debug, Clone)]
pub struct Descriptor {
    profile: Arc<DescriptorProfile>,
    ground: EntityRef,
    store_id: u64,
    sets: BTreeMap<ExpressionKind, BTreeSet<EntitySetElement>>,
    local_seq: u64,
}

impl Descriptor {
    /// Instantiate a descriptor on a ground entity. The ground is declared in
    /// the store if missing; no axiom is touched.
    pub fn new(
        profile: Arc<DescriptorProfile>,
        ground: EntityRef,
        store: &mut Ontology,
    ) -> Result<Self, DescriptorError> {
        if ground.kind != profile.ground_kind {
            return Err(DescriptorError::GroundKindMismatch {
                profile: profile.name.clone(),
                ground: ground.to_string(),
                expected: profile.ground_kind,
                found: ground.kind,
            });
        }
        store.declare(ground.clone());
        let sets = profile
            .expressions
            .iter()
            .map(|e| (*e, BTreeSet::new()))
            .collect();
        Ok(Descriptor {
            profile,
            ground,
            store_id: store.id(),
            sets,
            local_seq: 0,
        })
    }

    /// Instantiate from a local name resolved against the default prefix.
    pub fn named(
        profile: Arc<DescriptorProfile>,
        name: &str,
        store: &mut Ontology,
    ) -> Result<Self, DescriptorError> {
        let ground = EntityRef::new(profile.ground_kind, Iri::local(name));
        Descriptor::new(profile, ground, store)
    }

    pub fn profile(&self) -> &DescriptorProfile {
        &self.profile
    }

    /// The ground entity; identical across all expressions of a compound
    /// descriptor and immutable for the descriptor's lifetime.
    pub fn ground(&self) -> &EntityRef {
        &self.ground
    }

    pub fn local_seq(&self) -> u64 {
        self.local_seq
    }

    fn check_store(&self, store: &Ontology) -> Result<(), DescriptorError> {
        if store.id() != self.store_id {
            return Err(DescriptorError::StoreMismatch {
                bound: self.store_id,
                given: store.id(),
            });
        }
        Ok(())
    }

    fn check_expression(&self, kind: ExpressionKind) -> Result<(), DescriptorError> {
        if self.sets.contains_key(&kind) {
            Ok(())
        } else {
            Err(DescriptorError::ExpressionNotInProfile {
                profile: self.profile.name.clone(),
                expression: kind,
            })
        }
    }

    /// Read-only view of one local entity set.
    pub fn entity_set(&self, kind: ExpressionKind) -> Result<&BTreeSet<EntitySetElement>, DescriptorError> {
        self.check_expression(kind)?;
        Ok(&self.sets[&kind])
    }

    /// Add an element to a local set. Wildcard pins are accepted for the two
    /// link expressions as read markers. The store is not touched.
    pub fn add_entity(
        &mut self,
        kind: ExpressionKind,
        element: EntitySetElement,
    ) -> Result<bool, DescriptorError> {
        self.check_expression(kind)?;
        if element.is_pin() {
            if !matches!(kind, ExpressionKind::ObjectLink | ExpressionKind::DataLink) {
                return Err(DescriptorError::PinNotAllowed);
            }
        } else {
            let probe = Axiom::new(self.ground.clone(), kind, element.clone());
            validate_axiom(&probe)
                .map_err(|source| DescriptorError::ElementMismatch { expression: kind, source })?;
        }
        let inserted = self.sets.get_mut(&kind).unwrap().insert(element);
        if inserted {
            self.local_seq += 1;
        }
        Ok(inserted)
    }

    /// Remove an element from a local set; absent elements are a no-op.
    pub fn remove_entity(
        &mut self,
        kind: ExpressionKind,
        element: &EntitySetElement,
    ) -> Result<bool, DescriptorError> {
        self.check_expression(kind)?;
        let removed = self.sets.get_mut(&kind).unwrap().remove(element);
        if removed {
            self.local_seq += 1;
        }
        Ok(removed)
    }

    /// Remove every pair of one property from a link set, the pin included.
    pub fn remove_property_entities(
        &mut self,
        kind: ExpressionKind,
        property: &EntityRef,
    ) -> Result<usize, DescriptorError> {
        self.check_expression(kind)?;
        let set = self.sets.get_mut(&kind).unwrap();
        let before = set.len();
        set.retain(|e| e.pair_property() != Some(property));
        let removed = before - set.len();
        if removed > 0 {
            self.local_seq += 1;
        }
        Ok(removed)
    }

    /// The store's answer for `(ground, kind)` without touching local state.
    /// Uses the last snapshot; falls back to the asserted view (flagged)
    /// when no synchronisation has happened yet.
    pub fn query(&self, store: &Ontology, kind: ExpressionKind) -> Result<QueryResult, DescriptorError> {
        self.check_store(store)?;
        self.check_expression(kind)?;
        match store.entailed_entity_set(&self.ground, kind) {
            Ok(elements) => Ok(QueryResult {
                elements,
                inferred: true,
            }),
            Err(StoreError::NoSnapshot) => Ok(QueryResult {
                elements: store.enumerate_axioms(&self.ground, kind)?,
                inferred: false,
            }),
            Err(e) => Err(e.into()),
        }
    }

    /// Make the local sets equal to the store's view.
    ///
    /// Expressions whose local set carries wildcard pins refresh only the
    /// pinned properties: each pin is replaced by the actual pairs of that
    /// property, other properties' pairs stay untouched. Expressions without
    /// pins are replaced wholesale. Intents are ordered by profile
    /// expression, removals before additions, elements in canonical order.
    pub fn read_axioms(&mut self, store: &Ontology) -> Result<Vec<MappingIntent>, DescriptorError> {
        self.check_store(store)?;
        let mut intents = Vec::new();
        let expressions: Vec<ExpressionKind> = self.sets.keys().copied().collect();
        for kind in expressions {
            let fresh = self.query(store, kind)?.elements;
            let local = &self.sets[&kind];
            let pins: BTreeSet<EntitySetElement> =
                local.iter().filter(|e| e.is_pin()).cloned().collect();

            let (to_remove, to_add): (BTreeSet<_>, BTreeSet<_>) = if pins.is_empty() {
                (
                    local.difference(&fresh).cloned().collect(),
                    fresh.difference(local).cloned().collect(),
                )
            } else {
                let pinned_props: BTreeSet<EntityRef> = pins
                    .iter()
                    .filter_map(|e| e.pair_property().cloned())
                    .collect();
                let stale: BTreeSet<EntitySetElement> = local
                    .iter()
                    .filter(|e| {
                        e.pair_property()
                            .is_some_and(|p| pinned_props.contains(p))
                            && (e.is_pin() || !fresh.contains(*e))
                    })
                    .cloned()
                    .collect();
                let incoming: BTreeSet<EntitySetElement> = fresh
                    .iter()
                    .filter(|e| {
                        e.pair_property()
                            .is_some_and(|p| pinned_props.contains(p))
                            && !local.contains(*e)
                    })
                    .cloned()
                    .collect();
                (stale, incoming)
            };

            let set = self.sets.get_mut(&kind).unwrap();
            for element in to_remove {
                set.remove(&element);
                self.local_seq += 1;
                intents.push(MappingIntent {
                    ground: self.ground.clone(),
                    expression: kind,
                    element,
                    change: ChangeKind::Removed,
                    locus: Locus::DescriptorState,
                    sequence: self.local_seq,
                });
            }
            for element in to_add {
                set.insert(element.clone());
                self.local_seq += 1;
                intents.push(MappingIntent {
                    ground: self.ground.clone(),
                    expression: kind,
                    element,
                    change: ChangeKind::Added,
                    locus: Locus::DescriptorState,
                    sequence: self.local_seq,
                });
            }
        }
        Ok(intents)
    }

    /// Make the store's asserted slice for each expression equal to the
    /// local set: missing axioms asserted, extra asserted axioms retracted.
    /// Entailed-but-unasserted axioms are not retractable and are ignored.
    /// Properties under a wildcard pin are skipped with a zero-effect
    /// warning intent. On any validation failure the store is left unchanged.
    pub fn write_axioms(&mut self, store: &mut Ontology) -> Result<Vec<MappingIntent>, DescriptorError> {
        self.check_store(store)?;

        // plan first so a late validation failure cannot half-apply
        struct Plan {
            kind: ExpressionKind,
            pins: Vec<EntitySetElement>,
            add: Vec<EntitySetElement>,
            remove: Vec<EntitySetElement>,
        }
        let mut plans = Vec::new();
        for (&kind, local) in &self.sets {
            let pins: Vec<EntitySetElement> =
                local.iter().filter(|e| e.is_pin()).cloned().collect();
            let pinned_props: BTreeSet<EntityRef> = pins
                .iter()
                .filter_map(|e| e.pair_property().cloned())
                .collect();
            let skip =
                |e: &EntitySetElement| e.pair_property().is_some_and(|p| pinned_props.contains(p));

            let asserted = store.enumerate_axioms(&self.ground, kind)?;
            let add: Vec<EntitySetElement> = local
                .iter()
                .filter(|e| !e.is_pin() && !skip(e) && !asserted.contains(*e))
                .cloned()
                .collect();
            let remove: Vec<EntitySetElement> = asserted
                .iter()
                .filter(|e| !skip(e) && !local.contains(*e))
                .cloned()
                .collect();
            for element in &add {
                let axiom = Axiom::new(self.ground.clone(), kind, element.clone());
                validate_axiom(&axiom)
                    .map_err(|source| DescriptorError::ElementMismatch { expression: kind, source })?;
            }
            plans.push(Plan {
                kind,
                pins,
                add,
                remove,
            });
        }

        let mut intents = Vec::new();
        for plan in plans {
            for pin in plan.pins {
                intents.push(MappingIntent {
                    ground: self.ground.clone(),
                    expression: plan.kind,
                    element: pin,
                    change: ChangeKind::SkippedPin,
                    locus: Locus::OntologyState,
                    sequence: store.mutation_seq(),
                });
            }
            for element in plan.remove {
                store.retract_axiom(&Axiom::new(self.ground.clone(), plan.kind, element.clone()));
                intents.push(MappingIntent {
                    ground: self.ground.clone(),
                    expression: plan.kind,
                    element,
                    change: ChangeKind::Removed,
                    locus: Locus::OntologyState,
                    sequence: store.mutation_seq(),
                });
            }
            for element in plan.add {
                store
                    .assert_axiom(&Axiom::new(self.ground.clone(), plan.kind, element.clone()))
                    .expect("pre-validated");
                intents.push(MappingIntent {
                    ground: self.ground.clone(),
                    expression: plan.kind,
                    element,
                    change: ChangeKind::Added,
                    locus: Locus::OntologyState,
                    sequence: store.mutation_seq(),
                });
            }
        }
        Ok(intents)
    }

    /// One new descriptor per element of the local set for `kind`, grounded
    /// per the profile's build directive and populated via `read_axioms`.
    /// The original descriptor is unchanged. Results are deduplicated by
    /// ground and sorted.
    pub fn build(
        &self,
        kind: ExpressionKind,
        registry: &ProfileRegistry,
        store: &mut Ontology,
    ) -> Result<Vec<Descriptor>, DescriptorError> {
        self.check_store(store)?;
        self.check_expression(kind)?;
        let target = self.profile.build_targets.get(&kind).ok_or_else(|| {
            DescriptorError::NoBuildTarget {
                profile: self.profile.name.clone(),
                expression: kind,
            }
        })?;
        let local = &self.sets[&kind];
        if local.iter().any(|e| e.is_pin()) {
            return Err(DescriptorError::WildcardPresent(kind));
        }
        let profile = registry
            .get(&target.profile)
            .ok_or_else(|| DescriptorError::UnknownProfile(target.profile.clone()))?;
        let expected = built_entity_kind(self.profile.ground_kind, kind, target.grounding)
            .ok_or_else(|| DescriptorError::NotBuildable {
                profile: self.profile.name.clone(),
                expression: kind,
            })?;
        if profile.ground_kind != expected {
            return Err(DescriptorError::BuildKindMismatch {
                profile: target.profile.clone(),
                expression: kind,
                expected,
                found: profile.ground_kind,
            });
        }

        let mut grounds: BTreeSet<EntityRef> = BTreeSet::new();
        for element in local {
            let ground = match element {
                EntitySetElement::Entity(e) => e.clone(),
                EntitySetElement::ObjectPair(p, Some(filler)) => match target.grounding {
                    LinkGrounding::Filler => filler.clone(),
                    LinkGrounding::Property => p.clone(),
                },
                EntitySetElement::DataPair(p, Some(_)) => p.clone(),
                _ => continue,
            };
            grounds.insert(ground);
        }

        let mut out = Vec::new();
        for ground in grounds {
            let mut descriptor = Descriptor::new(profile.clone(), ground, store)?;
            descriptor.read_axioms(store)?;
            out.push(descriptor);
        }
        Ok(out)
    }

    /// Undo a batch of intents produced by this descriptor/store pair.
    ///
    /// The touched side must not have mutated since the intents were
    /// produced; this is checked against the recorded sequence numbers.
    /// Inverses are applied in reverse order.
    pub fn undo_intents(
        &mut self,
        intents: &[MappingIntent],
        store: &mut Ontology,
    ) -> Result<(), DescriptorError> {
        self.check_store(store)?;
        let max_store_seq = intents
            .iter()
            .filter(|i| i.locus == Locus::OntologyState && i.change != ChangeKind::SkippedPin)
            .map(|i| i.sequence)
            .max();
        if let Some(expected) = max_store_seq {
            if store.mutation_seq() != expected {
                return Err(DescriptorError::SequenceConflict {
                    expected,
                    found: store.mutation_seq(),
                });
            }
        }
        let max_local_seq = intents
            .iter()
            .filter(|i| i.locus == Locus::DescriptorState)
            .map(|i| i.sequence)
            .max();
        if let Some(expected) = max_local_seq {
            if self.local_seq != expected {
                return Err(DescriptorError::SequenceConflict {
                    expected,
                    found: self.local_seq,
                });
            }
        }

        for intent in intents.iter().rev() {
            match (intent.locus, intent.change) {
                (_, ChangeKind::SkippedPin) => {}
                (Locus::OntologyState, ChangeKind::Added) => {
                    store.retract_axiom(&Axiom::new(
                        intent.ground.clone(),
                        intent.expression,
                        intent.element.clone(),
                    ));
                }
                (Locus::OntologyState, ChangeKind::Removed) => {
                    store.assert_axiom(&Axiom::new(
                        intent.ground.clone(),
                        intent.expression,
                        intent.element.clone(),
                    ))?;
                }
                (Locus::DescriptorState, ChangeKind::Added) => {
                    if let Some(set) = self.sets.get_mut(&intent.expression) {
                        if set.remove(&intent.element) {
                            self.local_seq += 1;
                        }
                    }
                }
                (Locus::DescriptorState, ChangeKind::Removed) => {
                    if let Some(set) = self.sets.get_mut(&intent.expression) {
                        if set.insert(intent.element.clone()) {
                            self.local_seq += 1;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
