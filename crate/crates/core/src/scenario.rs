//! Scripted descriptor walkthroughs replayed by the CLI `demo` command.
//!
//! Both scenarios run against a loaded store and log every synchronisation
//! step deterministically, so repeated runs over the same file produce
//! byte-identical output.

use std::sync::Arc;

use thiserror::Error;

use crate::descriptor::{Descriptor, DescriptorError, MappingIntent, ProfileRegistry};
use crate::model::{EntityKind, EntityRef, EntitySetElement, ExpressionKind, Iri, Restriction};
use crate::reasoner::InferenceSnapshot;
use crate::store::Ontology;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("fixture lacks required entity {0}")]
    MissingEntity(String),
    #[error("expected exactly one isIn filler, found {0}")]
    AmbiguousLocation(usize),
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
}

/// Result of one scenario run.
pub struct ScenarioOutput {
    /// Printed lines, in order.
    pub lines: Vec<String>,
    /// The store after the full scenario.
    pub store: Ontology,
    /// The snapshot taken at the scenario's synchronisation point.
    pub snapshot: Arc<InferenceSnapshot>,
    /// Every mapping intent the scenario produced, in order.
    pub intents: Vec<MappingIntent>,
}

fn require(store: &Ontology, kind: EntityKind, name: &str) -> Result<EntityRef, ScenarioError> {
    let entity = EntityRef::new(kind, Iri::local(name));
    if store.declared(&entity) {
        Ok(entity)
    } else {
        Err(ScenarioError::MissingEntity(entity.to_string()))
    }
}

fn log_intents(
    lines: &mut Vec<String>,
    all: &mut Vec<MappingIntent>,
    header: &str,
    intents: Vec<MappingIntent>,
) {
    lines.push(header.to_string());
    for intent in &intents {
        lines.push(format!("  {intent}"));
    }
    all.extend(intents);
}

/// Write-then-read cycle: links a corridor to two rooms, declares class
/// disjointness and the door property's domain and range, synchronises,
/// reads everything back, then removes the link pairs again.
pub fn write_read_cycle(mut store: Ontology) -> Result<ScenarioOutput, ScenarioError> {
    let registry = ProfileRegistry::builtin();
    for (kind, name) in [
        (EntityKind::NamedIndividual, "Corridor1"),
        (EntityKind::NamedIndividual, "Room1"),
        (EntityKind::NamedIndividual, "Room2"),
        (EntityKind::Class, "ROBOT"),
        (EntityKind::Class, "LOCATION"),
        (EntityKind::Class, "DOOR"),
        (EntityKind::ObjectProperty, "isLinkedTo"),
        (EntityKind::ObjectProperty, "hasDoor"),
    ] {
        require(&store, kind, name)?;
    }
    let mut lines = Vec::new();
    let mut all_intents = Vec::new();

    let is_linked_to = EntityRef::object_property(Iri::local("isLinkedTo"));
    let mut corridor1 = Descriptor::named(
        registry.get("LinkIndividual").unwrap(),
        "Corridor1",
        &mut store,
    )?;
    for room in ["Room1", "Room2"] {
        corridor1.add_entity(
            ExpressionKind::ObjectLink,
            EntitySetElement::object_pair(
                is_linked_to.clone(),
                EntityRef::individual(Iri::local(room)),
            ),
        )?;
    }
    let intents = corridor1.write_axioms(&mut store)?;
    log_intents(&mut lines, &mut all_intents, "write Corridor1", intents);

    let mut robot_class = Descriptor::named(
        registry.get("DisjointClass").unwrap(),
        "ROBOT",
        &mut store,
    )?;
    for class in ["LOCATION", "DOOR"] {
        robot_class.add_entity(
            ExpressionKind::Disjoint,
            EntitySetElement::entity(EntityRef::class(Iri::local(class))),
        )?;
    }
    let intents = robot_class.write_axioms(&mut store)?;
    log_intents(&mut lines, &mut all_intents, "write ROBOT", intents);

    let mut has_door = Descriptor::named(
        registry.get("DomainRangeObjectProperty").unwrap(),
        "hasDoor",
        &mut store,
    )?;
    has_door.add_entity(
        ExpressionKind::Domain,
        EntitySetElement::restriction(
            Restriction::bare_class(EntityRef::class(Iri::local("LOCATION"))).expect("class ref"),
        ),
    )?;
    has_door.add_entity(
        ExpressionKind::Range,
        EntitySetElement::restriction(
            Restriction::bare_class(EntityRef::class(Iri::local("DOOR"))).expect("class ref"),
        ),
    )?;
    let intents = has_door.write_axioms(&mut store)?;
    log_intents(&mut lines, &mut all_intents, "write hasDoor", intents);

    let snapshot = store.synchronise_reasoner();
    lines.push("synchronise".to_string());

    let intents = corridor1.read_axioms(&store)?;
    log_intents(&mut lines, &mut all_intents, "read Corridor1", intents);
    let intents = has_door.read_axioms(&store)?;
    log_intents(&mut lines, &mut all_intents, "read hasDoor", intents);
    let intents = robot_class.read_axioms(&store)?;
    log_intents(&mut lines, &mut all_intents, "read ROBOT", intents);

    corridor1.remove_property_entities(ExpressionKind::ObjectLink, &is_linked_to)?;
    let intents = corridor1.write_axioms(&mut store)?;
    log_intents(&mut lines, &mut all_intents, "write Corridor1", intents);

    Ok(ScenarioOutput {
        lines,
        store,
        snapshot,
        intents: all_intents,
    })
}

/// Locate the robot and name the most specific class of its location:
/// reads the robot's `isIn` filler through a wildcard pin, reads the
/// filler's types, builds class descriptors on them and prints one line per
/// leaf class (a leaf subsumes only the bottom class).
pub fn locate_robot(mut store: Ontology) -> Result<ScenarioOutput, ScenarioError> {
    let registry = ProfileRegistry::builtin();
    require(&store, EntityKind::NamedIndividual, "Robot1")?;
    require(&store, EntityKind::ObjectProperty, "isIn")?;
    let mut lines = Vec::new();

    let snapshot = store.synchronise_reasoner();

    let is_in = EntityRef::object_property(Iri::local("isIn"));
    let mut robot1 = Descriptor::named(
        registry.get("LinkIndividual").unwrap(),
        "Robot1",
        &mut store,
    )?;
    robot1.add_entity(
        ExpressionKind::ObjectLink,
        EntitySetElement::object_pin(is_in.clone()),
    )?;
    let mut all_intents = robot1.read_axioms(&store)?;

    let fillers: Vec<EntityRef> = robot1
        .entity_set(ExpressionKind::ObjectLink)?
        .iter()
        .filter_map(|e| match e {
            EntitySetElement::ObjectPair(p, Some(filler)) if *p == is_in => Some(filler.clone()),
            _ => None,
        })
        .collect();
    let robot_location = match fillers.as_slice() {
        [unique] => unique.clone(),
        other => return Err(ScenarioError::AmbiguousLocation(other.len())),
    };

    let mut location = Descriptor::new(
        registry.get("TypeIndividual").unwrap(),
        robot_location.clone(),
        &mut store,
    )?;
    all_intents.extend(location.read_axioms(&store)?);

    let location_classes = location.build(ExpressionKind::Type, &registry, &mut store)?;
    for class_descriptor in &location_classes {
        // a class whose Sub set holds only the bottom class is a leaf
        if class_descriptor.entity_set(ExpressionKind::Sub)?.len() == 1 {
            lines.push(format!(
                "{} is in {}, which is a {}",
                robot1.ground().iri.local_name(),
                robot_location.iri.local_name(),
                class_descriptor.ground().iri.local_name(),
            ));
        }
    }

    Ok(ScenarioOutput {
        lines,
        store,
        snapshot,
        intents: all_intents,
    })
}
