//! Reading and printing programs in DCG notation.
//!
//! ```text
//! b(L,Node) -->
//!     bu(R),
//!     {rule(Mother,L,R)},
//!     b(node(Mother,L,R),Node).
//! ```

use std::fmt;

use super::{BodyItem, Clause, Literal, Program, ProgramError};
use crate::syntax::{Reader, Tok};
use crate::term::{canonicalize, VarGen};

/// Read `head --> body.` clauses. The entry predicate is the head of the
/// first clause. Variables are scoped to their clause.
pub fn read_program(text: &str) -> Result<Program, ProgramError> {
    let mut gen = VarGen::new();
    let mut r = Reader::new(text, &mut gen)?;
    let mut clauses = Vec::new();
    while !r.at_eof() {
        r.reset_scope();
        clauses.push(clause(&mut r)?);
    }
    let main = clauses.first().map(|c: &Clause| c.head.pred.clone()).ok_or(ProgramError::Empty)?;
    Program::new(clauses, &main)
}

fn literal(r: &mut Reader<'_>, what: &str) -> Result<Literal, ProgramError> {
    let at = r.offset();
    let t = r.term()?;
    match t.functor() {
        Some(f) => Ok(Literal::new(f.as_str(), t.args().to_vec())),
        None => Err(crate::syntax::SyntaxError { offset: at, message: format!("{what} must not be a variable") }.into()),
    }
}

fn clause(r: &mut Reader<'_>) -> Result<Clause, ProgramError> {
    let head = literal(r, "clause head")?;
    r.expect(Tok::Arrow)?;
    let mut body = Vec::new();
    loop {
        match r.peek() {
            Tok::LBracket => {
                r.advance();
                if *r.peek() != Tok::RBracket {
                    loop {
                        body.push(BodyItem::Terminal(r.term()?));
                        if *r.peek() != Tok::Comma {
                            break;
                        }
                        r.advance();
                    }
                }
                r.expect(Tok::RBracket)?;
            }
            Tok::LBrace => {
                r.advance();
                loop {
                    body.push(BodyItem::Constraint(literal(r, "constraint")?));
                    if *r.peek() != Tok::Comma {
                        break;
                    }
                    r.advance();
                }
                r.expect(Tok::RBrace)?;
            }
            _ => body.push(BodyItem::Call(literal(r, "body goal")?)),
        }
        match r.peek() {
            Tok::Comma => {
                r.advance();
            }
            Tok::Dot => {
                r.advance();
                return Ok(Clause::new(head, body));
            }
            other => return Err(r.error(format!("expected `,` or `.`, found {other}")).into()),
        }
    }
}

fn literal_text(l: &Literal) -> String {
    l.to_term().to_string()
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal_text(self))
    }
}

impl fmt::Display for BodyItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyItem::Terminal(t) => write!(f, "[{t}]"),
            BodyItem::Call(l) => write!(f, "{l}"),
            BodyItem::Constraint(l) => write!(f, "{{{l}}}"),
        }
    }
}

/// One clause, variables renamed A, B, ... in order of first occurrence.
impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = canonicalize(self);
        if c.body.is_empty() {
            return write!(f, "{} --> [].", c.head);
        }
        write!(f, "{} -->", c.head)?;
        for (i, item) in c.body.iter().enumerate() {
            let end = if i + 1 == c.body.len() { "." } else { "," };
            write!(f, "\n    {item}{end}")?;
        }
        Ok(())
    }
}

/// Clauses in order; a blank line wherever the head predicate changes.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut prev = None;
        for c in self.clauses() {
            let key = c.head.key();
            if let Some(p) = &prev {
                f.write_str(if *p == key { "\n" } else { "\n\n" })?;
            }
            write!(f, "{c}")?;
            prev = Some(key);
        }
        f.write_str("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BU: &str = "\
bu(node(PreTerm,lf(Word))) -->
    [Word],
    {word(PreTerm,Word)}.
bu(node(Mother,Left,Right)) -->
    bu(Left),
    bu(Right),
    {rule(Mother,Left,Right)}.
";

    #[test]
    fn reads_clauses_in_order() {
        let p = read_program(BU).unwrap();
        assert_eq!(p.main(), "bu");
        assert_eq!(p.clauses().len(), 2);
        let c = &p.clauses()[1];
        assert!(matches!(&c.body[0], BodyItem::Call(l) if l.pred == "bu"));
        assert!(matches!(&c.body[2], BodyItem::Constraint(l) if l.pred == "rule"));
    }

    #[test]
    fn prints_with_letter_names() {
        let p = read_program(BU).unwrap();
        let expected = "\
bu(node(A,lf(B))) -->
    [B],
    {word(A,B)}.
bu(node(A,B,C)) -->
    bu(B),
    bu(C),
    {rule(A,B,C)}.
";
        assert_eq!(p.to_string(), expected);
    }

    #[test]
    fn printing_round_trips() {
        let src = "bu(N) --> [W], {word(P,W)}, b(node(P,lf(W)),N).\nb(N,N) --> [].\n";
        let p = read_program(src).unwrap();
        let again = read_program(&p.to_string()).unwrap();
        assert_eq!(again.to_string(), p.to_string());
        assert!(p.to_string().contains("b(A,A) --> []."));
        assert!(p.to_string().contains("\n\nb(A,A)"));
    }

    #[test]
    fn multi_item_brackets() {
        let p = read_program("s --> [a, b], {word(x,a), word(y,b)}, [].").unwrap();
        let c = &p.clauses()[0];
        assert_eq!(c.body.len(), 4);
        assert!(c.body[..2].iter().all(|b| matches!(b, BodyItem::Terminal(_))));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_program("").is_err());
        assert!(read_program("X --> [].").is_err());
        assert!(read_program("a --> b").is_err());
        assert!(matches!(read_program("a --> {foo(x)}."), Err(ProgramError::BadConstraint(_))));
        let e = read_program("a --> b c.").unwrap_err();
        assert!(matches!(e, ProgramError::Syntax(s) if s.offset == 8));
    }
}
