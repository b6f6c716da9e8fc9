//! Core entity model: IRIs, entities, literals, expressions, restrictions,
//! entity-set elements and axioms, plus axiom validation.
//!
//! Everything in this module is an immutable value type. The only behaviour
//! is shape validation: an axiom is well formed when its ground kind, its
//! expression and its element variant line up with one of the 24 legal
//! combinations (see [`ExpressionKind::legal_rows`]).

use std::fmt;

use thiserror::Error;

/// Namespaced identifier: a prefix label plus a local name.
///
/// The empty prefix is the document default (printed as `:name`). Expansion
/// to a full IRI happens only during serialization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri {
    prefix: String,
    local: String,
}

impl Iri {
    pub fn new(prefix: impl Into<String>, local: impl Into<String>) -> Self {
        Iri {
            prefix: prefix.into(),
            local: local.into(),
        }
    }

    /// Local name under the default prefix.
    pub fn local(name: impl Into<String>) -> Self {
        Iri::new("", name)
    }

    pub fn xsd(name: impl Into<String>) -> Self {
        Iri::new("xsd", name)
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn local_name(&self) -> &str {
        &self.local
    }

    pub fn is_empty(&self) -> bool {
        self.local.is_empty()
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.prefix, self.local)
    }
}

/// The five kinds of named entities an ontology can declare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Class,
    NamedIndividual,
    ObjectProperty,
    DataProperty,
    Datatype,
}

impl EntityKind {
    pub fn label(self) -> &'static str {
        match self {
            EntityKind::Class => "Class",
            EntityKind::NamedIndividual => "NamedIndividual",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::DataProperty => "DataProperty",
            EntityKind::Datatype => "Datatype",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A typed reference to a named entity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityRef {
    pub kind: EntityKind,
    pub iri: Iri,
}

impl EntityRef {
    pub fn new(kind: EntityKind, iri: Iri) -> Self {
        EntityRef { kind, iri }
    }

    pub fn class(iri: Iri) -> Self {
        EntityRef::new(EntityKind::Class, iri)
    }

    pub fn individual(iri: Iri) -> Self {
        EntityRef::new(EntityKind::NamedIndividual, iri)
    }

    pub fn object_property(iri: Iri) -> Self {
        EntityRef::new(EntityKind::ObjectProperty, iri)
    }

    pub fn data_property(iri: Iri) -> Self {
        EntityRef::new(EntityKind::DataProperty, iri)
    }

    pub fn datatype(iri: Iri) -> Self {
        EntityRef::new(EntityKind::Datatype, iri)
    }

    /// The built-in universal class.
    pub fn thing() -> Self {
        EntityRef::class(Iri::new("owl", "Thing"))
    }

    /// The built-in empty class.
    pub fn nothing() -> Self {
        EntityRef::class(Iri::new("owl", "Nothing"))
    }

    pub fn is_thing(&self) -> bool {
        *self == Self::thing()
    }

    pub fn is_nothing(&self) -> bool {
        *self == Self::nothing()
    }
}

impl fmt::Display for EntityRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.iri)
    }
}

/// The four built-in literal datatypes.
pub mod datatypes {
    use super::{EntityKind, EntityRef, Iri};

    pub fn integer() -> EntityRef {
        EntityRef::new(EntityKind::Datatype, Iri::xsd("integer"))
    }

    pub fn decimal() -> EntityRef {
        EntityRef::new(EntityKind::Datatype, Iri::xsd("decimal"))
    }

    pub fn boolean() -> EntityRef {
        EntityRef::new(EntityKind::Datatype, Iri::xsd("boolean"))
    }

    pub fn string() -> EntityRef {
        EntityRef::new(EntityKind::Datatype, Iri::xsd("string"))
    }

    pub fn builtins() -> [EntityRef; 4] {
        [integer(), decimal(), boolean(), string()]
    }
}

/// A typed literal value. The lexical form is kept verbatim; two literals are
/// equal when both lexical form and datatype are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiteralValue {
    lexical: String,
    datatype: EntityRef,
}

impl LiteralValue {
    /// Build a literal with an explicit datatype, checking the lexical shape.
    pub fn typed(lexical: impl Into<String>, datatype: EntityRef) -> Result<Self, ModelError> {
        let lexical = lexical.into();
        if datatype.kind != EntityKind::Datatype {
            return Err(ModelError::KindMismatch {
                expected: EntityKind::Datatype,
                found: datatype.kind,
                entity: datatype.iri.to_string(),
            });
        }
        if !lexical_matches(&lexical, &datatype) {
            return Err(ModelError::BadLexicalForm {
                lexical,
                datatype: datatype.iri.to_string(),
            });
        }
        Ok(LiteralValue { lexical, datatype })
    }

    /// Build a literal inferring the datatype from the lexical shape:
    /// integer, then decimal, then boolean, falling back to string.
    pub fn inferred(lexical: impl Into<String>) -> Self {
        let lexical = lexical.into();
        let datatype = if is_integer_lexical(&lexical) {
            datatypes::integer()
        } else if is_decimal_lexical(&lexical) {
            datatypes::decimal()
        } else if lexical == "true" || lexical == "false" {
            datatypes::boolean()
        } else {
            datatypes::string()
        };
        LiteralValue { lexical, datatype }
    }

    pub fn integer(value: i64) -> Self {
        LiteralValue {
            lexical: value.to_string(),
            datatype: datatypes::integer(),
        }
    }

    pub fn string(value: impl Into<String>) -> Self {
        LiteralValue {
            lexical: value.into(),
            datatype: datatypes::string(),
        }
    }

    pub fn boolean(value: bool) -> Self {
        LiteralValue {
            lexical: value.to_string(),
            datatype: datatypes::boolean(),
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &EntityRef {
        &self.datatype
    }
}

impl fmt::Display for LiteralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"^^{}", self.lexical, self.datatype.iri)
    }
}

fn is_integer_lexical(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

fn is_decimal_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    match body.split_once('.') {
        Some((int, frac)) => {
            !int.is_empty()
                && !frac.is_empty()
                && int.chars().all(|c| c.is_ascii_digit())
                && frac.chars().all(|c| c.is_ascii_digit())
        }
        None => is_integer_lexical(s),
    }
}

fn lexical_matches(lexical: &str, datatype: &EntityRef) -> bool {
    if *datatype == datatypes::integer() {
        is_integer_lexical(lexical)
    } else if *datatype == datatypes::decimal() {
        is_decimal_lexical(lexical)
    } else if *datatype == datatypes::boolean() {
        lexical == "true" || lexical == "false"
    } else {
        // string and custom datatypes accept any lexical form
        true
    }
}

/// The expression kinds a descriptor can map, one per axiom schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExpressionKind {
    Equivalent,
    Disjoint,
    Super,
    Sub,
    Instance,
    EquivalentRestriction,
    Type,
    ObjectLink,
    DataLink,
    Inverse,
    Domain,
    Range,
}

impl ExpressionKind {
    pub const ALL: [ExpressionKind; 12] = [
        ExpressionKind::Equivalent,
        ExpressionKind::Disjoint,
        ExpressionKind::Super,
        ExpressionKind::Sub,
        ExpressionKind::Instance,
        ExpressionKind::EquivalentRestriction,
        ExpressionKind::Type,
        ExpressionKind::ObjectLink,
        ExpressionKind::DataLink,
        ExpressionKind::Inverse,
        ExpressionKind::Domain,
        ExpressionKind::Range,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ExpressionKind::Equivalent => "Equivalent",
            ExpressionKind::Disjoint => "Disjoint",
            ExpressionKind::Super => "Super",
            ExpressionKind::Sub => "Sub",
            ExpressionKind::Instance => "Instance",
            ExpressionKind::EquivalentRestriction => "EquivalentRestriction",
            ExpressionKind::Type => "Type",
            ExpressionKind::ObjectLink => "ObjectLink",
            ExpressionKind::DataLink => "DataLink",
            ExpressionKind::Inverse => "Inverse",
            ExpressionKind::Domain => "Domain",
            ExpressionKind::Range => "Range",
        }
    }

    pub fn parse(label: &str) -> Option<ExpressionKind> {
        Self::ALL.iter().copied().find(|k| k.label() == label)
    }

    /// The legal (ground kind, expression) combinations: six for classes,
    /// five for individuals, seven for object properties and six for data
    /// properties.
    pub fn legal_rows() -> Vec<(EntityKind, ExpressionKind)> {
        use EntityKind::*;
        use ExpressionKind::*;
        vec![
            (Class, Equivalent),
            (Class, Disjoint),
            (Class, Super),
            (Class, Sub),
            (Class, Instance),
            (Class, EquivalentRestriction),
            (NamedIndividual, Type),
            (NamedIndividual, Equivalent),
            (NamedIndividual, Disjoint),
            (NamedIndividual, ObjectLink),
            (NamedIndividual, DataLink),
            (ObjectProperty, Equivalent),
            (ObjectProperty, Disjoint),
            (ObjectProperty, Sub),
            (ObjectProperty, Super),
            (ObjectProperty, Inverse),
            (ObjectProperty, Domain),
            (ObjectProperty, Range),
            (DataProperty, Equivalent),
            (DataProperty, Disjoint),
            (DataProperty, Sub),
            (DataProperty, Super),
            (DataProperty, Domain),
            (DataProperty, Range),
        ]
    }

    pub fn legal_for(self, ground: EntityKind) -> bool {
        Self::legal_rows().contains(&(ground, self))
    }
}

impl fmt::Display for ExpressionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Cardinality marker of a restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinality {
    Some,
    Only,
    Min(u32),
    Max(u32),
    Exact(u32),
}

impl Cardinality {
    pub fn validate(self) -> Result<(), ModelError> {
        match self {
            Cardinality::Min(0) | Cardinality::Max(0) | Cardinality::Exact(0) => {
                Err(ModelError::ZeroCardinality)
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Some => write!(f, "some"),
            Cardinality::Only => write!(f, "only"),
            Cardinality::Min(n) => write!(f, "min {n}"),
            Cardinality::Max(n) => write!(f, "max {n}"),
            Cardinality::Exact(n) => write!(f, "exact {n}"),
        }
    }
}

/// A class-expression component: one of the four restriction shapes.
///
/// `BareClass` normally references a class; as the element of a data-property
/// `Range` axiom it references a datatype instead (there is no separate
/// datatype shape).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Restriction {
    BareClass(EntityRef),
    ClassCardinality(Cardinality, EntityRef),
    ObjectRestriction(Cardinality, EntityRef, EntityRef),
    DataRestriction(Cardinality, EntityRef, EntityRef),
}

impl Restriction {
    pub fn bare_class(class: EntityRef) -> Result<Self, ModelError> {
        expect_kind(&class, EntityKind::Class)?;
        Ok(Restriction::BareClass(class))
    }

    /// A datatype in `BareClass` position, used as a data-property range.
    pub fn bare_datatype(datatype: EntityRef) -> Result<Self, ModelError> {
        expect_kind(&datatype, EntityKind::Datatype)?;
        Ok(Restriction::BareClass(datatype))
    }

    pub fn class_cardinality(card: Cardinality, class: EntityRef) -> Result<Self, ModelError> {
        card.validate()?;
        expect_kind(&class, EntityKind::Class)?;
        Ok(Restriction::ClassCardinality(card, class))
    }

    pub fn object(
        card: Cardinality,
        property: EntityRef,
        filler: EntityRef,
    ) -> Result<Self, ModelError> {
        card.validate()?;
        expect_kind(&property, EntityKind::ObjectProperty)?;
        expect_kind(&filler, EntityKind::Class)?;
        Ok(Restriction::ObjectRestriction(card, property, filler))
    }

    pub fn data(
        card: Cardinality,
        property: EntityRef,
        filler: EntityRef,
    ) -> Result<Self, ModelError> {
        card.validate()?;
        expect_kind(&property, EntityKind::DataProperty)?;
        expect_kind(&filler, EntityKind::Datatype)?;
        Ok(Restriction::DataRestriction(card, property, filler))
    }

    /// Every entity referenced by this restriction.
    pub fn referenced_entities(&self) -> Vec<&EntityRef> {
        match self {
            Restriction::BareClass(c) => vec![c],
            Restriction::ClassCardinality(_, c) => vec![c],
            Restriction::ObjectRestriction(_, p, c) => vec![p, c],
            Restriction::DataRestriction(_, p, t) => vec![p, t],
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Restriction::BareClass(c) => write!(f, "{c}"),
            Restriction::ClassCardinality(card, c) => write!(f, "({card} {c})"),
            Restriction::ObjectRestriction(card, p, c) => write!(f, "({card} {p} {c})"),
            Restriction::DataRestriction(card, p, t) => write!(f, "({card} {p} {t})"),
        }
    }
}

/// One element of an entity set.
///
/// Pair variants with `None` fillers are wildcard pins: placeholders a
/// descriptor uses to restrict `readAxioms` to a single property. Pins are
/// legal only inside descriptor-local sets, never in stored axioms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntitySetElement {
    Entity(EntityRef),
    ObjectPair(EntityRef, Option<EntityRef>),
    DataPair(EntityRef, Option<LiteralValue>),
    Restriction(Restriction),
}

impl EntitySetElement {
    pub fn entity(e: EntityRef) -> Self {
        EntitySetElement::Entity(e)
    }

    pub fn object_pair(property: EntityRef, filler: EntityRef) -> Self {
        EntitySetElement::ObjectPair(property, Some(filler))
    }

    pub fn object_pin(property: EntityRef) -> Self {
        EntitySetElement::ObjectPair(property, None)
    }

    pub fn data_pair(property: EntityRef, literal: LiteralValue) -> Self {
        EntitySetElement::DataPair(property, Some(literal))
    }

    pub fn data_pin(property: EntityRef) -> Self {
        EntitySetElement::DataPair(property, None)
    }

    pub fn restriction(r: Restriction) -> Self {
        EntitySetElement::Restriction(r)
    }

    pub fn is_pin(&self) -> bool {
        matches!(
            self,
            EntitySetElement::ObjectPair(_, None) | EntitySetElement::DataPair(_, None)
        )
    }

    /// The property of a pair element, pin or not.
    pub fn pair_property(&self) -> Option<&EntityRef> {
        match self {
            EntitySetElement::ObjectPair(p, _) | EntitySetElement::DataPair(p, _) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for EntitySetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntitySetElement::Entity(e) => write!(f, "{e}"),
            EntitySetElement::ObjectPair(p, Some(b)) => write!(f, "{p} {b}"),
            EntitySetElement::ObjectPair(p, None) => write!(f, "{p} *"),
            EntitySetElement::DataPair(p, Some(l)) => write!(f, "{p} {l}"),
            EntitySetElement::DataPair(p, None) => write!(f, "{p} *"),
            EntitySetElement::Restriction(r) => write!(f, "{r}"),
        }
    }
}

/// One statement: an expression applied to a ground subject and one element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Axiom {
    pub subject: EntityRef,
    pub expression: ExpressionKind,
    pub object: EntitySetElement,
}

impl Axiom {
    pub fn new(subject: EntityRef, expression: ExpressionKind, object: EntitySetElement) -> Self {
        Axiom {
            subject,
            expression,
            object,
        }
    }

    /// Every entity referenced by this axiom, subject included.
    pub fn referenced_entities(&self) -> Vec<EntityRef> {
        let mut out = vec![self.subject.clone()];
        match &self.object {
            EntitySetElement::Entity(e) => out.push(e.clone()),
            EntitySetElement::ObjectPair(p, filler) => {
                out.push(p.clone());
                if let Some(b) = filler {
                    out.push(b.clone());
                }
            }
            EntitySetElement::DataPair(p, literal) => {
                out.push(p.clone());
                if let Some(l) = literal {
                    out.push(l.datatype().clone());
                }
            }
            EntitySetElement::Restriction(r) => {
                out.extend(r.referenced_entities().into_iter().cloned());
            }
        }
        out
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.expression, self.object)
    }
}

/// Outcome of validating one axiom against the legal rows.
pub type ValidationResult = Result<(), ModelError>;

/// Errors raised by model construction and axiom validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("expression {expression} is not legal for {ground} ground")]
    IllegalExpression {
        ground: EntityKind,
        expression: ExpressionKind,
    },
    #[error("{expression} on {ground} ground requires a {expected} element, found {found}")]
    ElementMismatch {
        ground: EntityKind,
        expression: ExpressionKind,
        expected: &'static str,
        found: String,
    },
    #[error("expected a {expected:?} reference, found {found:?} ({entity})")]
    KindMismatch {
        expected: EntityKind,
        found: EntityKind,
        entity: String,
    },
    #[error("wildcard filler is not storable in an axiom")]
    WildcardNotStorable,
    #[error("literal \"{lexical}\" does not parse under datatype {datatype}")]
    BadLexicalForm { lexical: String, datatype: String },
    #[error("cardinality bound must be at least 1")]
    ZeroCardinality,
    #[error("entity name must not be empty")]
    EmptyName,
}

fn expect_kind(entity: &EntityRef, expected: EntityKind) -> Result<(), ModelError> {
    if entity.kind == expected {
        Ok(())
    } else {
        Err(ModelError::KindMismatch {
            expected,
            found: entity.kind,
            entity: entity.iri.to_string(),
        })
    }
}

fn element_variant_name(element: &EntitySetElement) -> String {
    match element {
        EntitySetElement::Entity(e) => format!("{:?} entity", e.kind),
        EntitySetElement::ObjectPair(..) => "object pair".to_string(),
        EntitySetElement::DataPair(..) => "data pair".to_string(),
        EntitySetElement::Restriction(_) => "restriction".to_string(),
    }
}

/// Check an axiom against the legal (ground, expression, element) rows.
///
/// Total: always returns a result, never panics. The first violated rule is
/// reported.
pub fn validate_axiom(axiom: &Axiom) -> ValidationResult {
    use EntityKind::*;
    use ExpressionKind::*;

    let ground = axiom.subject.kind;
    let expr = axiom.expression;

    if axiom.subject.iri.is_empty() {
        return Err(ModelError::EmptyName);
    }
    if !expr.legal_for(ground) {
        return Err(ModelError::IllegalExpression {
            ground,
            expression: expr,
        });
    }
    if axiom.object.is_pin() {
        return Err(ModelError::WildcardNotStorable);
    }

    let mismatch = |expected: &'static str| ModelError::ElementMismatch {
        ground,
        expression: expr,
        expected,
        found: element_variant_name(&axiom.object),
    };

    let expect_entity = |expected_kind: EntityKind, expected: &'static str| match &axiom.object {
        EntitySetElement::Entity(e) if e.kind == expected_kind => {
            if e.iri.is_empty() {
                Err(ModelError::EmptyName)
            } else {
                Ok(())
            }
        }
        _ => Err(mismatch(expected)),
    };

    match (ground, expr) {
        (Class, Equivalent) | (Class, Disjoint) | (Class, Super) | (Class, Sub) => {
            expect_entity(Class, "Class entity")
        }
        (Class, Instance) => expect_entity(NamedIndividual, "NamedIndividual entity"),
        (Class, EquivalentRestriction) => match &axiom.object {
            EntitySetElement::Restriction(r) => validate_class_restriction(r),
            _ => Err(mismatch("restriction")),
        },
        (NamedIndividual, Type) => expect_entity(Class, "Class entity"),
        (NamedIndividual, Equivalent) | (NamedIndividual, Disjoint) => {
            expect_entity(NamedIndividual, "NamedIndividual entity")
        }
        (NamedIndividual, ObjectLink) => match &axiom.object {
            EntitySetElement::ObjectPair(p, Some(b)) => {
                expect_kind(p, ObjectProperty)?;
                expect_kind(b, NamedIndividual)
            }
            _ => Err(mismatch("object pair")),
        },
        (NamedIndividual, DataLink) => match &axiom.object {
            EntitySetElement::DataPair(p, Some(_)) => expect_kind(p, DataProperty),
            _ => Err(mismatch("data pair")),
        },
        (ObjectProperty, Equivalent)
        | (ObjectProperty, Disjoint)
        | (ObjectProperty, Sub)
        | (ObjectProperty, Super)
        | (ObjectProperty, Inverse) => expect_entity(ObjectProperty, "ObjectProperty entity"),
        (ObjectProperty, Domain) | (ObjectProperty, Range) | (DataProperty, Domain) => {
            match &axiom.object {
                EntitySetElement::Restriction(r) => validate_class_restriction(r),
                _ => Err(mismatch("restriction")),
            }
        }
        (DataProperty, Equivalent)
        | (DataProperty, Disjoint)
        | (DataProperty, Sub)
        | (DataProperty, Super) => expect_entity(DataProperty, "DataProperty entity"),
        (DataProperty, Range) => match &axiom.object {
            // data ranges are datatypes carried in BareClass position
            EntitySetElement::Restriction(Restriction::BareClass(t))
                if t.kind == Datatype =>
            {
                Ok(())
            }
            _ => Err(mismatch("datatype restriction")),
        },
        _ => unreachable!("legal_for already filtered illegal rows"),
    }
}

/// A restriction in class position: BareClass must hold a class; the other
/// shapes are checked by their constructors but re-verified here so raw
/// enum values are also caught.
fn validate_class_restriction(r: &Restriction) -> ValidationResult {
    match r {
        Restriction::BareClass(c) => expect_kind(c, EntityKind::Class),
        Restriction::ClassCardinality(card, c) => {
            card.validate()?;
            expect_kind(c, EntityKind::Class)
        }
        Restriction::ObjectRestriction(card, p, c) => {
            card.validate()?;
            expect_kind(p, EntityKind::ObjectProperty)?;
            expect_kind(c, EntityKind::Class)
        }
        Restriction::DataRestriction(card, p, t) => {
            card.validate()?;
            expect_kind(p, EntityKind::DataProperty)?;
            expect_kind(t, EntityKind::Datatype)
        }
    }
}
