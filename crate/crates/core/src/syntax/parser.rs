//! Recursive-descent parser producing a populated store.

use std::collections::BTreeMap;

use super::lexer::{lex, Tok, Token};
use super::ParseError;
use crate::model::{
    Axiom, Cardinality, EntityKind, EntityRef, EntitySetElement, ExpressionKind, Iri,
    LiteralValue, Restriction,
};
use crate::store::{Characteristic, IdentityPair, Ontology};

/// Parse a document into a fresh store. Every failure carries its position.
pub fn parse_document(text: &str) -> Result<Ontology, ParseError> {
    parse_document_counted(text).map(|(store, _)| store)
}

/// Like [`parse_document`], also reporting the number of statements read.
pub fn parse_document_counted(text: &str) -> Result<(Ontology, usize), ParseError> {
    let tokens = lex(text)?;
    Parser::new(tokens).document()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        Parser {
            tokens,
            pos: 0,
            prefixes: BTreeMap::new(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|t| (t.line, t.col))
            .unwrap_or((1, 1))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError::new(line, col, message))
    }

    fn expect_lparen(&mut self) -> Result<(), ParseError> {
        match self.next() {
            Some(Token { tok: Tok::LParen, .. }) => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.fail("expected (")
            }
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.next() {
            Some(Token { tok: Tok::RParen, .. }) => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.fail("expected )")
            }
        }
    }

    fn name(&mut self) -> Result<Iri, ParseError> {
        match self.next() {
            Some(Token {
                tok: Tok::Name(prefix, local),
                line,
                col,
            }) => {
                if !self.prefixes.contains_key(&prefix)
                    && prefix != "owl"
                    && prefix != "xsd"
                {
                    return Err(ParseError::new(
                        line,
                        col,
                        format!("undeclared prefix {prefix:?}"),
                    ));
                }
                if local.is_empty() {
                    return Err(ParseError::new(line, col, "empty local name"));
                }
                Ok(Iri::new(prefix, local))
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.fail("expected a prefixed name")
            }
        }
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        match self.next() {
            Some(Token { tok: Tok::Int(n), .. }) => Ok(n),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.fail("expected a cardinality integer")
            }
        }
    }

    fn document(mut self) -> Result<(Ontology, usize), ParseError> {
        // Prefix declarations come first
        while let Some(Token {
            tok: Tok::Keyword(k),
            ..
        }) = self.peek()
        {
            if k != "Prefix" {
                break;
            }
            self.next();
            self.expect_lparen()?;
            let (prefix, line, col) = match self.next() {
                Some(Token {
                    tok: Tok::Name(prefix, local),
                    line,
                    col,
                }) if local.is_empty() => (prefix, line, col),
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return self.fail("expected a prefix label like xsd:");
                }
            };
            match self.next() {
                Some(Token { tok: Tok::Equals, .. }) => {}
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return self.fail("expected = in prefix declaration");
                }
            }
            let base = match self.next() {
                Some(Token {
                    tok: Tok::FullIri(iri),
                    ..
                }) => iri,
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return self.fail("expected <iri> in prefix declaration");
                }
            };
            self.expect_rparen()?;
            if self.prefixes.insert(prefix.clone(), base).is_some() {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("duplicate prefix {prefix:?}"),
                ));
            }
        }

        let mut ontology_iri = String::new();
        let mut wrapped = false;
        if let Some(Token {
            tok: Tok::Keyword(k),
            ..
        }) = self.peek()
        {
            if k == "Ontology" {
                wrapped = true;
                self.next();
                self.expect_lparen()?;
                if let Some(Token {
                    tok: Tok::FullIri(iri),
                    ..
                }) = self.peek()
                {
                    ontology_iri = iri.clone();
                    self.next();
                }
            }
        }

        let name = if ontology_iri.is_empty() {
            "ontology".to_string()
        } else {
            ontology_iri.clone()
        };
        let mut store = Ontology::new(name, self.prefixes.clone())
            .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
        store.set_ontology_iri(ontology_iri);

        let mut count = 0usize;
        loop {
            match self.peek() {
                None => {
                    if wrapped {
                        return self.fail("expected ) closing Ontology");
                    }
                    break;
                }
                Some(Token { tok: Tok::RParen, .. }) if wrapped => {
                    self.next();
                    if let Some(t) = self.peek() {
                        return Err(ParseError::new(
                            t.line,
                            t.col,
                            "trailing content after Ontology",
                        ));
                    }
                    break;
                }
                _ => {
                    self.statement(&mut store)?;
                    count += 1;
                }
            }
        }
        Ok((store, count))
    }

    fn statement(&mut self, store: &mut Ontology) -> Result<(), ParseError> {
        let (head, line, col) = match self.next() {
            Some(Token {
                tok: Tok::Keyword(k),
                line,
                col,
            }) => (k, line, col),
            Some(t) => {
                return Err(ParseError::new(t.line, t.col, "expected a statement"));
            }
            None => return self.fail("expected a statement"),
        };
        let positioned = |e: String| ParseError::new(line, col, e);
        self.expect_lparen()?;

        match head.as_str() {
            "Declaration" => {
                let (kind_word, kline, kcol) = match self.next() {
                    Some(Token {
                        tok: Tok::Keyword(k),
                        line,
                        col,
                    }) => (k, line, col),
                    _ => {
                        self.pos = self.pos.saturating_sub(1);
                        return self.fail("expected an entity kind");
                    }
                };
                let kind = match kind_word.as_str() {
                    "Class" => EntityKind::Class,
                    "NamedIndividual" => EntityKind::NamedIndividual,
                    "ObjectProperty" => EntityKind::ObjectProperty,
                    "DataProperty" => EntityKind::DataProperty,
                    "Datatype" => EntityKind::Datatype,
                    other => {
                        return Err(ParseError::new(
                            kline,
                            kcol,
                            format!("unknown entity kind {other}"),
                        ))
                    }
                };
                self.expect_lparen()?;
                let iri = self.name()?;
                self.expect_rparen()?;
                self.expect_rparen()?;
                store.declare(EntityRef::new(kind, iri));
            }
            "SubClassOf" => {
                let sub = self.name()?;
                let sup = self.name()?;
                self.expect_rparen()?;
                store
                    .assert_axiom(&Axiom::new(
                        EntityRef::class(sub),
                        ExpressionKind::Super,
                        EntitySetElement::entity(EntityRef::class(sup)),
                    ))
                    .map_err(|e| positioned(e.to_string()))?;
            }
            "EquivalentClasses" => {
                let first = self.name()?;
                match self.peek().map(|t| t.tok.clone()) {
                    Some(Tok::Name(..)) => {
                        let second = self.name()?;
                        self.expect_rparen()?;
                        store
                            .assert_axiom(&Axiom::new(
                                EntityRef::class(first),
                                ExpressionKind::Equivalent,
                                EntitySetElement::entity(EntityRef::class(second)),
                            ))
                            .map_err(|e| positioned(e.to_string()))?;
                    }
                    _ => {
                        let atoms = if matches!(
                            self.peek(),
                            Some(Token { tok: Tok::Keyword(k), .. }) if k == "ObjectIntersectionOf"
                        ) {
                            self.next();
                            self.expect_lparen()?;
                            let mut atoms = Vec::new();
                            while !matches!(self.peek(), Some(Token { tok: Tok::RParen, .. })) {
                                atoms.push(self.restriction_atom()?);
                            }
                            self.expect_rparen()?;
                            if atoms.is_empty() {
                                return self.fail("empty ObjectIntersectionOf");
                            }
                            atoms
                        } else {
                            vec![self.restriction_atom()?]
                        };
                        self.expect_rparen()?;
                        for atom in atoms {
                            store
                                .assert_axiom(&Axiom::new(
                                    EntityRef::class(first.clone()),
                                    ExpressionKind::EquivalentRestriction,
                                    EntitySetElement::restriction(atom),
                                ))
                                .map_err(|e| positioned(e.to_string()))?;
                        }
                    }
                }
            }
            "DisjointClasses" => {
                self.binary_entity_axiom(store, EntityKind::Class, ExpressionKind::Disjoint, line, col)?;
            }
            "ClassAssertion" => {
                let class = self.name()?;
                let individual = self.name()?;
                self.expect_rparen()?;
                store
                    .assert_axiom(&Axiom::new(
                        EntityRef::individual(individual),
                        ExpressionKind::Type,
                        EntitySetElement::entity(EntityRef::class(class)),
                    ))
                    .map_err(|e| positioned(e.to_string()))?;
            }
            "ObjectPropertyAssertion" => {
                let property = self.name()?;
                let subject = self.name()?;
                let filler = self.name()?;
                self.expect_rparen()?;
                store
                    .assert_axiom(&Axiom::new(
                        EntityRef::individual(subject),
                        ExpressionKind::ObjectLink,
                        EntitySetElement::object_pair(
                            EntityRef::object_property(property),
                            EntityRef::individual(filler),
                        ),
                    ))
                    .map_err(|e| positioned(e.to_string()))?;
            }
            "DataPropertyAssertion" => {
                let property = self.name()?;
                let subject = self.name()?;
                let literal = self.literal()?;
                self.expect_rparen()?;
                store
                    .assert_axiom(&Axiom::new(
                        EntityRef::individual(subject),
                        ExpressionKind::DataLink,
                        EntitySetElement::data_pair(EntityRef::data_property(property), literal),
                    ))
                    .map_err(|e| positioned(e.to_string()))?;
            }
            "SubObjectPropertyOf" => {
                self.sub_property(store, EntityKind::ObjectProperty, line, col)?;
            }
            "SubDataPropertyOf" => {
                self.sub_property(store, EntityKind::DataProperty, line, col)?;
            }
            "EquivalentObjectProperties" => {
                self.binary_entity_axiom(store, EntityKind::ObjectProperty, ExpressionKind::Equivalent, line, col)?;
            }
            "EquivalentDataProperties" => {
                self.binary_entity_axiom(store, EntityKind::DataProperty, ExpressionKind::Equivalent, line, col)?;
            }
            "DisjointObjectProperties" => {
                self.binary_entity_axiom(store, EntityKind::ObjectProperty, ExpressionKind::Disjoint, line, col)?;
            }
            "DisjointDataProperties" => {
                self.binary_entity_axiom(store, EntityKind::DataProperty, ExpressionKind::Disjoint, line, col)?;
            }
            "InverseObjectProperties" => {
                self.binary_entity_axiom(store, EntityKind::ObjectProperty, ExpressionKind::Inverse, line, col)?;
            }
            "ObjectPropertyDomain" | "ObjectPropertyRange" | "DataPropertyDomain" => {
                let (kind, expr) = match head.as_str() {
                    "ObjectPropertyDomain" => (EntityKind::ObjectProperty, ExpressionKind::Domain),
                    "ObjectPropertyRange" => (EntityKind::ObjectProperty, ExpressionKind::Range),
                    _ => (EntityKind::DataProperty, ExpressionKind::Domain),
                };
                let property = self.name()?;
                let atom = self.restriction_atom()?;
                self.expect_rparen()?;
                store
                    .assert_axiom(&Axiom::new(
                        EntityRef::new(kind, property),
                        expr,
                        EntitySetElement::restriction(atom),
                    ))
                    .map_err(|e| positioned(e.to_string()))?;
            }
            "DataPropertyRange" => {
                let property = self.name()?;
                let datatype = self.name()?;
                self.expect_rparen()?;
                store
                    .assert_axiom(&Axiom::new(
                        EntityRef::data_property(property),
                        ExpressionKind::Range,
                        EntitySetElement::restriction(Restriction::BareClass(
                            EntityRef::datatype(datatype),
                        )),
                    ))
                    .map_err(|e| positioned(e.to_string()))?;
            }
            "TransitiveObjectProperty" | "SymmetricObjectProperty" => {
                let flag = if head == "TransitiveObjectProperty" {
                    Characteristic::Transitive
                } else {
                    Characteristic::Symmetric
                };
                let property = self.name()?;
                self.expect_rparen()?;
                store
                    .set_characteristic(&EntityRef::object_property(property), flag, true)
                    .map_err(|e| positioned(e.to_string()))?;
            }
            "SameIndividual" | "DifferentIndividuals" => {
                let a = self.name()?;
                let b = self.name()?;
                self.expect_rparen()?;
                let pair = if head == "SameIndividual" {
                    IdentityPair::same(EntityRef::individual(a), EntityRef::individual(b))
                } else {
                    IdentityPair::different(EntityRef::individual(a), EntityRef::individual(b))
                };
                store
                    .assert_identity(&pair)
                    .map_err(|e| positioned(e.to_string()))?;
            }
            other => {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("unknown statement form {other}"),
                ));
            }
        }
        Ok(())
    }

    fn sub_property(
        &mut self,
        store: &mut Ontology,
        kind: EntityKind,
        line: usize,
        col: usize,
    ) -> Result<(), ParseError> {
        let sub = self.name()?;
        let sup = self.name()?;
        self.expect_rparen()?;
        store
            .assert_axiom(&Axiom::new(
                EntityRef::new(kind, sub),
                ExpressionKind::Super,
                EntitySetElement::entity(EntityRef::new(kind, sup)),
            ))
            .map_err(|e| ParseError::new(line, col, e.to_string()))?;
        Ok(())
    }

    fn binary_entity_axiom(
        &mut self,
        store: &mut Ontology,
        kind: EntityKind,
        expr: ExpressionKind,
        line: usize,
        col: usize,
    ) -> Result<(), ParseError> {
        let a = self.name()?;
        let b = self.name()?;
        self.expect_rparen()?;
        store
            .assert_axiom(&Axiom::new(
                EntityRef::new(kind, a),
                expr,
                EntitySetElement::entity(EntityRef::new(kind, b)),
            ))
            .map_err(|e| ParseError::new(line, col, e.to_string()))?;
        Ok(())
    }

    fn literal(&mut self) -> Result<LiteralValue, ParseError> {
        let (lexical, line, col) = match self.next() {
            Some(Token {
                tok: Tok::Str(s),
                line,
                col,
            }) => (s, line, col),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return self.fail("expected a quoted literal");
            }
        };
        match self.next() {
            Some(Token { tok: Tok::CaretCaret, .. }) => {}
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return self.fail("expected ^^datatype after literal");
            }
        }
        let datatype = self.name()?;
        LiteralValue::typed(lexical, EntityRef::datatype(datatype))
            .map_err(|e| ParseError::new(line, col, e.to_string()))
    }

    /// One restriction atom: a named class or one of the restriction heads.
    fn restriction_atom(&mut self) -> Result<Restriction, ParseError> {
        match self.peek().cloned() {
            Some(Token { tok: Tok::Name(..), .. }) => {
                let class = self.name()?;
                Ok(Restriction::BareClass(EntityRef::class(class)))
            }
            Some(Token {
                tok: Tok::Keyword(head),
                line,
                col,
            }) => {
                self.next();
                self.expect_lparen()?;
                let positioned = |e: String| ParseError::new(line, col, e);
                let atom = match head.as_str() {
                    "ObjectSomeValuesFrom" | "ObjectAllValuesFrom" => {
                        let card = if head == "ObjectSomeValuesFrom" {
                            Cardinality::Some
                        } else {
                            Cardinality::Only
                        };
                        let p = self.name()?;
                        let c = self.name()?;
                        Restriction::object(
                            card,
                            EntityRef::object_property(p),
                            EntityRef::class(c),
                        )
                        .map_err(|e| positioned(e.to_string()))?
                    }
                    "ObjectMinCardinality" | "ObjectMaxCardinality" | "ObjectExactCardinality" => {
                        let n = self.integer()?;
                        let card = match head.as_str() {
                            "ObjectMinCardinality" => Cardinality::Min(n),
                            "ObjectMaxCardinality" => Cardinality::Max(n),
                            _ => Cardinality::Exact(n),
                        };
                        let p = self.name()?;
                        let c = self.name()?;
                        Restriction::object(
                            card,
                            EntityRef::object_property(p),
                            EntityRef::class(c),
                        )
                        .map_err(|e| positioned(e.to_string()))?
                    }
                    "DataSomeValuesFrom" | "DataAllValuesFrom" => {
                        let card = if head == "DataSomeValuesFrom" {
                            Cardinality::Some
                        } else {
                            Cardinality::Only
                        };
                        let p = self.name()?;
                        let t = self.name()?;
                        Restriction::data(
                            card,
                            EntityRef::data_property(p),
                            EntityRef::datatype(t),
                        )
                        .map_err(|e| positioned(e.to_string()))?
                    }
                    "DataMinCardinality" | "DataMaxCardinality" | "DataExactCardinality" => {
                        let n = self.integer()?;
                        let card = match head.as_str() {
                            "DataMinCardinality" => Cardinality::Min(n),
                            "DataMaxCardinality" => Cardinality::Max(n),
                            _ => Cardinality::Exact(n),
                        };
                        let p = self.name()?;
                        let t = self.name()?;
                        Restriction::data(
                            card,
                            EntityRef::data_property(p),
                            EntityRef::datatype(t),
                        )
                        .map_err(|e| positioned(e.to_string()))?
                    }
                    "ClassSomeValues" | "ClassAllValues" => {
                        let card = if head == "ClassSomeValues" {
                            Cardinality::Some
                        } else {
                            Cardinality::Only
                        };
                        let c = self.name()?;
                        Restriction::class_cardinality(card, EntityRef::class(c))
                            .map_err(|e| positioned(e.to_string()))?
                    }
                    "ClassMinCardinality" | "ClassMaxCardinality" | "ClassExactCardinality" => {
                        let n = self.integer()?;
                        let card = match head.as_str() {
                            "ClassMinCardinality" => Cardinality::Min(n),
                            "ClassMaxCardinality" => Cardinality::Max(n),
                            _ => Cardinality::Exact(n),
                        };
                        let c = self.name()?;
                        Restriction::class_cardinality(card, EntityRef::class(c))
                            .map_err(|e| positioned(e.to_string()))?
                    }
                    other => {
                        return Err(ParseError::new(
                            line,
                            col,
                            format!("unknown restriction atom {other}"),
                        ));
                    }
                };
                self.expect_rparen()?;
                Ok(atom)
            }
            _ => self.fail("expected a class name or restriction atom"),
        }
    }
}
