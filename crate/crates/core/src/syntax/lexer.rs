//! Tokenizer for the functional-style format. Total over arbitrary input:
//! every rejection is a positioned error, never a panic.

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Tok {
    /// Bare identifier: a statement or atom head.
    Keyword(String),
    /// Prefixed name `prefix:local`; either part may be empty.
    Name(String, String),
    /// `<...>` full IRI.
    FullIri(String),
    /// Quoted string content, unescaped.
    Str(String),
    /// Unsigned integer (cardinality bounds).
    Int(u32),
    LParen,
    RParen,
    Equals,
    CaretCaret,
}

#[derive(Debug, Clone)]
pub(super) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(super) fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if let Some(c) = c {
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
            }
            c
        }};
    }

    loop {
        let (start_line, start_col) = (line, col);
        let Some(&c) = chars.peek() else { break };
        match c {
            c if c.is_whitespace() => {
                bump!();
            }
            '(' => {
                bump!();
                tokens.push(Token {
                    tok: Tok::LParen,
                    line: start_line,
                    col: start_col,
                });
            }
            ')' => {
                bump!();
                tokens.push(Token {
                    tok: Tok::RParen,
                    line: start_line,
                    col: start_col,
                });
            }
            '=' => {
                bump!();
                tokens.push(Token {
                    tok: Tok::Equals,
                    line: start_line,
                    col: start_col,
                });
            }
            '^' => {
                bump!();
                if chars.peek() == Some(&'^') {
                    bump!();
                    tokens.push(Token {
                        tok: Tok::CaretCaret,
                        line: start_line,
                        col: start_col,
                    });
                } else {
                    return Err(ParseError::new(start_line, start_col, "expected ^^"));
                }
            }
            '<' => {
                bump!();
                let mut iri = String::new();
                loop {
                    match bump!() {
                        Some('>') => break,
                        Some(c) if c != '\n' => iri.push(c),
                        _ => {
                            return Err(ParseError::new(
                                start_line,
                                start_col,
                                "unterminated IRI, expected >",
                            ))
                        }
                    }
                }
                tokens.push(Token {
                    tok: Tok::FullIri(iri),
                    line: start_line,
                    col: start_col,
                });
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        Some('"') => break,
                        Some('\\') => match bump!() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some(other) => {
                                s.push('\\');
                                s.push(other);
                            }
                            None => {
                                return Err(ParseError::new(
                                    start_line,
                                    start_col,
                                    "unterminated string literal",
                                ))
                            }
                        },
                        Some(c) => s.push(c),
                        None => {
                            return Err(ParseError::new(
                                start_line,
                                start_col,
                                "unterminated string literal",
                            ))
                        }
                    }
                }
                tokens.push(Token {
                    tok: Tok::Str(s),
                    line: start_line,
                    col: start_col,
                });
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        bump!();
                    } else {
                        break;
                    }
                }
                let value: u32 = digits.parse().map_err(|_| {
                    ParseError::new(start_line, start_col, "integer out of range")
                })?;
                tokens.push(Token {
                    tok: Tok::Int(value),
                    line: start_line,
                    col: start_col,
                });
            }
            ':' => {
                bump!();
                let local = lex_name_part(&mut chars, &mut line, &mut col);
                tokens.push(Token {
                    tok: Tok::Name(String::new(), local),
                    line: start_line,
                    col: start_col,
                });
            }
            c if is_name_start(c) => {
                let word = lex_name_part(&mut chars, &mut line, &mut col);
                if chars.peek() == Some(&':') {
                    bump!();
                    let local = lex_name_part(&mut chars, &mut line, &mut col);
                    tokens.push(Token {
                        tok: Tok::Name(word, local),
                        line: start_line,
                        col: start_col,
                    });
                } else {
                    tokens.push(Token {
                        tok: Tok::Keyword(word),
                        line: start_line,
                        col: start_col,
                    });
                }
            }
            other => {
                return Err(ParseError::new(
                    start_line,
                    start_col,
                    format!("unexpected character {other:?}"),
                ));
            }
        }
    }
    Ok(tokens)
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.')
}

fn lex_name_part(
    chars: &mut std::iter::Peekable<std::str::Chars<'_>>,
    line: &mut usize,
    col: &mut usize,
) -> String {
    let mut out = String::new();
    while let Some(&c) = chars.peek() {
        if is_name_char(c) {
            out.push(c);
            chars.next();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        } else {
            break;
        }
    }
    out
}
