//! Functional-style text format for ontology stores.
//!
//! The accepted subset covers prefix declarations, an optional `Ontology`
//! wrapper, entity declarations, class/property hierarchy and equivalence
//! statements, assertions, property characteristics and individual
//! identity. `EquivalentClasses` with an `ObjectIntersectionOf` (or a single
//! restriction atom) maps onto the ground class's equivalent-restriction
//! set; the conjunction is order-insensitive. Bare-class cardinality atoms,
//! which have no standard surface form, use the extension heads
//! `ClassSomeValues`, `ClassAllValues`, `ClassMinCardinality`,
//! `ClassMaxCardinality` and `ClassExactCardinality`.
//!
//! Serialization is canonical: prefixes first, one statement per line,
//! statements sorted by form then text, so stores that differ only in
//! assertion order print identically. Only asserted content is written;
//! snapshots never serialize.

mod lexer;
mod parser;
mod writer;

use std::fmt;

use thiserror::Error;

pub use parser::{parse_document, parse_document_counted};
pub use writer::serialize_store;

/// A parse failure with its 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}
