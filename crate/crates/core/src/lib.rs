//! An in-memory OWL knowledge base with a from-scratch rule-fragment
//! reasoner and a descriptor layer that keeps mutable object state
//! synchronised with the ontology.
//!
//! The pieces, bottom up:
//!
//! - [`model`]: entities, literals, restrictions, axioms and validation.
//! - [`store`]: the asserted TBox/RBox/ABox with declarations,
//!   characteristics and individual identity.
//! - [`reasoner`]: explicit-demand inference producing immutable snapshots,
//!   plus consistency checking.
//! - [`oracle`]: an independent naive-fixpoint reference reasoner used to
//!   cross-check the engine.
//! - [`descriptor`]: descriptors `⟨ground, entity sets⟩` with
//!   `query`/`readAxioms`/`writeAxioms`/`build` synchronisation and
//!   invertible mapping intents.
//! - [`syntax`]: a functional-style text format for loading and saving
//!   stores.
//! - [`scenario`]: scripted walkthroughs used by the CLI demo command.

pub mod descriptor;
pub mod model;
pub mod oracle;
pub mod reasoner;
pub mod scenario;
pub mod store;
pub mod syntax;

pub use descriptor::{
    BuildTarget, ChangeKind, Descriptor, DescriptorError, DescriptorProfile, LinkGrounding,
    Locus, MappingIntent, ProfileRegistry, QueryResult,
};
pub use model::{
    validate_axiom, Axiom, Cardinality, EntityKind, EntityRef, EntitySetElement, ExpressionKind,
    Iri, LiteralValue, ModelError, Restriction,
};
pub use oracle::naive_fixpoint_oracle;
pub use reasoner::{ConsistencyReport, InferenceSnapshot, RuleId, Violation};
pub use store::{
    ChangeReport, Characteristic, IdentityPair, IdentityRelation, Ontology, StoreError,
};
pub use syntax::{parse_document, serialize_store, ParseError};
