//! Tokenizer and term reader for the functor-and-parentheses notation:
//! lowercase identifiers (or digit strings, or 'quoted' names) are functors,
//! identifiers starting with an uppercase letter or `_` are variables, and
//! `%` starts a comment running to the end of the line.

use std::collections::HashMap;
use std::fmt;

use crate::term::{Functor, Term, Var, VarGen};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

impl SyntaxError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        SyntaxError { offset, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Atom(String),
    Var(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Atom(s) | Tok::Var(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Arrow => f.write_str("`-->`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'%' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'(' => push(&mut out, Tok::LParen, &mut i, start),
            b')' => push(&mut out, Tok::RParen, &mut i, start),
            b'[' => push(&mut out, Tok::LBracket, &mut i, start),
            b']' => push(&mut out, Tok::RBracket, &mut i, start),
            b'{' => push(&mut out, Tok::LBrace, &mut i, start),
            b'}' => push(&mut out, Tok::RBrace, &mut i, start),
            b',' => push(&mut out, Tok::Comma, &mut i, start),
            b'.' => push(&mut out, Tok::Dot, &mut i, start),
            b'-' if text[i..].starts_with("-->") => {
                out.push((Tok::Arrow, start));
                i += 3;
            }
            b'\'' => {
                i += 1;
                let mut name = String::new();
                loop {
                    match text[i..].chars().next() {
                        None => return Err(SyntaxError::new(text.len(), "unterminated quoted atom")),
                        Some('\'') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            let esc = text[i + 1..]
                                .chars()
                                .next()
                                .ok_or_else(|| SyntaxError::new(text.len(), "unterminated quoted atom"))?;
                            name.push(esc);
                            i += 1 + esc.len_utf8();
                        }
                        Some(ch) => {
                            name.push(ch);
                            i += ch.len_utf8();
                        }
                    }
                }
                if name.is_empty() {
                    return Err(SyntaxError::new(start, "empty quoted atom"));
                }
                out.push((Tok::Atom(name), start));
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = if c.is_ascii_uppercase() || c == b'_' {
                    Tok::Var(word.to_string())
                } else if c.is_ascii_digit() && !word.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(SyntaxError::new(start, format!("malformed number `{word}`")));
                } else {
                    Tok::Atom(word.to_string())
                };
                out.push((tok, start));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError::new(start, format!("unexpected character `{ch}`")));
            }
        }
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

fn push(out: &mut Vec<(Tok, usize)>, t: Tok, i: &mut usize, start: usize) {
    out.push((t, start));
    *i += 1;
}

/// Recursive-descent reader over a token stream. Variable names are scoped
/// until [`Reader::reset_scope`]; `_` is always a fresh variable.
pub(crate) struct Reader<'g> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    gen: &'g mut VarGen,
    scope: HashMap<String, Var>,
    names: Vec<(String, Var)>,
}

impl<'g> Reader<'g> {
    pub(crate) fn new(text: &str, gen: &'g mut VarGen) -> Result<Self, SyntaxError> {
        Ok(Reader { toks: tokenize(text)?, pos: 0, gen, scope: HashMap::new(), names: Vec::new() })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    pub(crate) fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.offset(), message)
    }

    pub(crate) fn expect(&mut self, t: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == t {
            self.advance();
            Ok(())
        } else {
            Err(self.error(format!("expected {t}, found {}", self.peek())))
        }
    }

    pub(crate) fn reset_scope(&mut self) {
        self.scope.clear();
        self.names.clear();
    }

    pub(crate) fn names(&self) -> &[(String, Var)] {
        &self.names
    }

    pub(crate) fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::Var(name) => {
                self.advance();
                if name == "_" {
                    return Ok(Term::Var(self.gen.fresh()));
                }
                let v = match self.scope.get(&name) {
                    Some(v) => *v,
                    None => {
                        let v = self.gen.fresh();
                        self.scope.insert(name.clone(), v);
                        self.names.push((name, v));
                        v
                    }
                };
                Ok(Term::Var(v))
            }
            Tok::Atom(name) => {
                self.advance();
                let functor = Functor::new(&name);
                if *self.peek() != Tok::LParen {
                    return Ok(Term::with_functor(functor, Vec::new()));
                }
                self.advance();
                let mut args = vec![self.term()?];
                loop {
                    match self.peek() {
                        Tok::Comma => {
                            self.advance();
                            args.push(self.term()?);
                        }
                        Tok::RParen => {
                            self.advance();
                            break;
                        }
                        other => return Err(self.error(format!("expected `,` or `)`, found {other}"))),
                    }
                }
                Ok(Term::with_functor(functor, args))
            }
            other => Err(self.error(format!("expected a term, found {other}"))),
        }
    }
}

/// Read a single term. Variables are numbered from 0 in first-occurrence
/// order, so the result is already canonical.
pub fn read_term(text: &str) -> Result<Term, SyntaxError> {
    read_term_named(text).map(|(t, _)| t)
}

/// Read a single term and also return the source name of each variable.
pub fn read_term_named(text: &str) -> Result<(Term, Vec<(String, Var)>), SyntaxError> {
    let mut gen = VarGen::new();
    let mut r = Reader::new(text, &mut gen)?;
    let t = r.term()?;
    if !r.at_eof() {
        return Err(r.error(format!("unexpected {} after term", r.peek())));
    }
    let names = r.names().to_vec();
    Ok((t, names))
}

/// Print a term using the given source names for its variables (falling
/// back to the default naming for unnamed ones).
pub fn print_term_named(t: &Term, names: &[(String, Var)]) -> String {
    let lookup = |v: Var| {
        names
            .iter()
            .find(|(_, w)| *w == v)
            .map(|(n, _)| n.clone())
            .unwrap_or_else(|| crate::term::var_name(v))
    };
    let rendered = t.display_with(&lookup).to_string();
    rendered
}
