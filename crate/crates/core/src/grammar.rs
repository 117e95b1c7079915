//! Grammars of binary `rule(Mother,Left,Right)` facts and `word(PreTerm,Word)`
//! lexicon facts, and the line-oriented file format they are loaded from.

use std::fmt;

use crate::syntax::{Reader, SyntaxError, Tok};
use crate::term::{canonicalize, rename_apart, Structure, Term, Var, VarGen};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleFact {
    pub mother: Term,
    pub left: Term,
    pub right: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexFact {
    pub preterm: Term,
    /// Always an atom.
    pub word: Term,
}

impl RuleFact {
    pub fn to_term(&self) -> Term {
        Term::app("rule", vec![self.mother.clone(), self.left.clone(), self.right.clone()])
    }
}

impl LexFact {
    pub fn to_term(&self) -> Term {
        Term::app("word", vec![self.preterm.clone(), self.word.clone()])
    }
}

impl Structure for RuleFact {
    fn map_vars(&self, f: &mut dyn FnMut(Var) -> Term) -> Self {
        RuleFact { mother: self.mother.map_vars(f), left: self.left.map_vars(f), right: self.right.map_vars(f) }
    }

    fn for_each_var(&self, f: &mut dyn FnMut(Var)) {
        self.mother.for_each_var(f);
        self.left.for_each_var(f);
        self.right.for_each_var(f);
    }
}

impl Structure for LexFact {
    fn map_vars(&self, f: &mut dyn FnMut(Var) -> Term) -> Self {
        LexFact { preterm: self.preterm.map_vars(f), word: self.word.map_vars(f) }
    }

    fn for_each_var(&self, f: &mut dyn FnMut(Var)) {
        self.preterm.for_each_var(f);
        self.word.for_each_var(f);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("line {line}: {source}")]
    Syntax { line: usize, source: SyntaxError },
    #[error("line {line}: expected `rule(M,L,R).` or `word(P,W).`, found `{found}`")]
    BadFact { line: usize, found: String },
    #[error("line {line}: word must be an atom, found `{found}`")]
    WordNotAtom { line: usize, found: String },
}

/// An immutable grammar. Fact order is significant: every engine
/// enumerates facts in this order. Each fact's variables occupy their own
/// id range, so no variable is shared between facts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grammar {
    rules: Vec<RuleFact>,
    lexicon: Vec<LexFact>,
}

impl Grammar {
    /// Build from facts. Fails if a lexicon word is not an atom.
    pub fn new(rules: Vec<RuleFact>, lexicon: Vec<LexFact>) -> Result<Self, LoadError> {
        if let Some((i, bad)) = lexicon.iter().enumerate().find(|(_, l)| !l.word.is_atom()) {
            return Err(LoadError::WordNotAtom { line: rules.len() + i + 1, found: bad.word.to_string() });
        }
        let mut gen = VarGen::new();
        let rules = rules.iter().map(|r| rename_apart(r, &mut gen)).collect();
        let lexicon = lexicon.iter().map(|l| rename_apart(l, &mut gen)).collect();
        Ok(Grammar { rules, lexicon })
    }

    pub fn rules(&self) -> &[RuleFact] {
        &self.rules
    }

    pub fn lexicon(&self) -> &[LexFact] {
        &self.lexicon
    }

    /// Same lexicon, no rules.
    pub fn without_rules(&self) -> Grammar {
        Grammar { rules: Vec::new(), lexicon: self.lexicon.clone() }
    }

    /// Distinct lexicon words in first-occurrence order.
    pub fn words(&self) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        for l in &self.lexicon {
            if !out.contains(&l.word) {
                out.push(l.word.clone());
            }
        }
        out
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{}.", canonicalize(&r.to_term()))?;
        }
        for l in &self.lexicon {
            writeln!(f, "{}.", canonicalize(&l.to_term()))?;
        }
        Ok(())
    }
}

/// Parse a grammar file. Each line holds zero or more period-terminated
/// facts; `%` starts a comment. Variable scope is a single fact.
pub fn load_grammar(text: &str) -> Result<Grammar, LoadError> {
    let mut rules = Vec::new();
    let mut lexicon = Vec::new();
    let mut gen = VarGen::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let syntax = |source| LoadError::Syntax { line: line_no, source };
        let mut r = Reader::new(line, &mut gen).map_err(syntax)?;
        while !r.at_eof() {
            r.reset_scope();
            let fact = r.term().map_err(syntax)?;
            if *r.peek() != Tok::Dot {
                return Err(syntax(r.error(format!("expected `.` after fact, found {}", r.peek()))));
            }
            r.advance();
            if fact.is_app("rule", 3) {
                let a = fact.args();
                rules.push(RuleFact { mother: a[0].clone(), left: a[1].clone(), right: a[2].clone() });
            } else if fact.is_app("word", 2) {
                let a = fact.args();
                if !a[1].is_atom() {
                    return Err(LoadError::WordNotAtom { line: line_no, found: a[1].to_string() });
                }
                lexicon.push(LexFact { preterm: a[0].clone(), word: a[1].clone() });
            } else {
                return Err(LoadError::BadFact { line: line_no, found: fact.to_string() });
            }
        }
    }
    Ok(Grammar { rules, lexicon })
}

/// The grammars used throughout the tests and documentation.
pub mod fixtures {
    use super::{load_grammar, Grammar};

    /// Atomic categories: s, np, vp, det, n, v.
    pub const G0: &str = include_str!("../fixtures/g0.grammar");
    /// One rule whose categories carry their own tree structure.
    pub const G1: &str = include_str!("../fixtures/g1.grammar");
    /// `rule(a,a,a)` with the single word `t`.
    pub const GA: &str = include_str!("../fixtures/ga.grammar");

    pub fn g0() -> Grammar {
        load_grammar(G0).expect("fixture G0")
    }

    pub fn g1() -> Grammar {
        load_grammar(G1).expect("fixture G1")
    }

    pub fn ga() -> Grammar {
        load_grammar(GA).expect("fixture GA")
    }
}
