//! Parser programs as data: definite clauses over string-threaded
//! predicates, with terminals and `rule`/`word` constraint goals in the
//! body. The string positions are implicit, as in DCG notation.

mod builtin;
mod egnf;
mod equal;
mod interp;
mod syntax;

use std::collections::HashMap;

use crate::syntax::SyntaxError;
use crate::term::{canonicalize, Structure, Term, Var};

pub use builtin::{builtin_program, Builtin, UnknownProgram};
pub use egnf::{egnf_transform, improve, left_recursion_free, TransformError};
pub use equal::{program_diff, program_equal, rename_predicate, ProgramDiff};
pub use interp::{run_program, FactBase, Resolution, RunError, RunOptions};
pub use syntax::read_program;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(pred: &str, args: Vec<Term>) -> Self {
        Literal { pred: pred.to_string(), args }
    }

    pub fn key(&self) -> PredKey {
        PredKey { name: self.pred.clone(), arity: self.args.len() }
    }

    pub fn to_term(&self) -> Term {
        Term::app(&self.pred, self.args.clone())
    }
}

/// Predicate name and arity (not counting the implicit string positions).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredKey {
    pub name: String,
    pub arity: usize,
}

impl std::fmt::Display for PredKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BodyItem {
    /// `[t]`: consume one token unifying with `t`.
    Terminal(Term),
    /// A nonterminal goal.
    Call(Literal),
    /// `{rule(M,L,R)}` or `{word(P,W)}`, resolved against the grammar.
    Constraint(Literal),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub head: Literal,
    pub body: Vec<BodyItem>,
}

impl Clause {
    pub fn new(head: Literal, body: Vec<BodyItem>) -> Self {
        Clause { head, body }
    }

    pub fn canonical(&self) -> Clause {
        canonicalize(self)
    }

    pub fn constraints(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().filter_map(|b| match b {
            BodyItem::Constraint(l) => Some(l),
            _ => None,
        })
    }
}

impl Structure for Literal {
    fn map_vars(&self, f: &mut dyn FnMut(Var) -> Term) -> Self {
        Literal { pred: self.pred.clone(), args: self.args.map_vars(f) }
    }

    fn for_each_var(&self, f: &mut dyn FnMut(Var)) {
        self.args.for_each_var(f)
    }
}

impl Structure for BodyItem {
    fn map_vars(&self, f: &mut dyn FnMut(Var) -> Term) -> Self {
        match self {
            BodyItem::Terminal(t) => BodyItem::Terminal(t.map_vars(f)),
            BodyItem::Call(l) => BodyItem::Call(l.map_vars(f)),
            BodyItem::Constraint(l) => BodyItem::Constraint(l.map_vars(f)),
        }
    }

    fn for_each_var(&self, f: &mut dyn FnMut(Var)) {
        match self {
            BodyItem::Terminal(t) => t.for_each_var(f),
            BodyItem::Call(l) | BodyItem::Constraint(l) => l.for_each_var(f),
        }
    }
}

impl Structure for Clause {
    fn map_vars(&self, f: &mut dyn FnMut(Var) -> Term) -> Self {
        let head = self.head.map_vars(f);
        Clause { head, body: self.body.map_vars(f) }
    }

    fn for_each_var(&self, f: &mut dyn FnMut(Var)) {
        self.head.for_each_var(f);
        self.body.for_each_var(f);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProgramError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("program has no clauses")]
    Empty,
    #[error("entry predicate `{0}` heads no clause")]
    NoMain(String),
    #[error("constraint `{0}` is not rule/3 or word/2")]
    BadConstraint(String),
}

/// An ordered list of clauses with a named entry predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    clauses: Vec<Clause>,
    main: String,
}

impl Program {
    pub fn new(clauses: Vec<Clause>, main: &str) -> Result<Self, ProgramError> {
        if clauses.is_empty() {
            return Err(ProgramError::Empty);
        }
        if !clauses.iter().any(|c| c.head.pred == main) {
            return Err(ProgramError::NoMain(main.to_string()));
        }
        for c in &clauses {
            for l in c.constraints() {
                if !is_constraint_key(&l.key()) {
                    return Err(ProgramError::BadConstraint(l.to_term().to_string()));
                }
            }
        }
        Ok(Program { clauses, main: main.to_string() })
    }

    /// The result of specializing a program: facts may have pruned every
    /// clause of the entry predicate, in which case the program defines no
    /// parse at all.
    pub(crate) fn specialized(clauses: Vec<Clause>, main: &str) -> Self {
        Program { clauses, main: main.to_string() }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn main(&self) -> &str {
        &self.main
    }

    /// Head predicates in order of first definition.
    pub fn predicates(&self) -> Vec<PredKey> {
        let mut out: Vec<PredKey> = Vec::new();
        for c in &self.clauses {
            let k = c.head.key();
            if !out.contains(&k) {
                out.push(k);
            }
        }
        out
    }

    /// Clauses grouped by head predicate, each group in program order.
    pub fn by_predicate(&self) -> HashMap<PredKey, Vec<&Clause>> {
        let mut out: HashMap<PredKey, Vec<&Clause>> = HashMap::new();
        for c in &self.clauses {
            out.entry(c.head.key()).or_default().push(c);
        }
        out
    }

    pub fn has_constraints(&self) -> bool {
        self.clauses.iter().any(|c| c.constraints().next().is_some())
    }
}

pub(crate) fn is_constraint_key(k: &PredKey) -> bool {
    (k.name == "rule" && k.arity == 3) || (k.name == "word" && k.arity == 2)
}
