//! Partial execution of parser programs against a fixed grammar.
//!
//! Every `rule` (and optionally `word`) goal is resolved at compile time
//! against the grammar's facts and deleted, leaving one specialized clause
//! per fact. Once that is done to the improved bottom-up and left-corner
//! programs the two coincide, since the constraint position was their only
//! difference.

use crate::clause::{
    builtin_program, program_diff, rename_predicate, BodyItem, Builtin, Clause, FactBase, Literal, Program,
    ProgramDiff, Resolution,
};
use crate::grammar::Grammar;
use crate::term::{canonicalize, shift_vars, unify, var_count, Substitution, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecializeOptions {
    /// Also unfold `word/2` goals. `rule/3` goals are always unfolded.
    pub unfold_lexicon: bool,
    pub resolution: Resolution,
}

impl Default for SpecializeOptions {
    fn default() -> Self {
        SpecializeOptions { unfold_lexicon: true, resolution: Resolution::default() }
    }
}

impl SpecializeOptions {
    /// The grammar a specialized program still needs at run time.
    pub fn residual_grammar(&self, g: &Grammar) -> Grammar {
        if self.unfold_lexicon {
            Grammar::new(Vec::new(), Vec::new()).expect("the empty grammar is valid")
        } else {
            g.without_rules()
        }
    }
}

fn unfolds(l: &Literal, opts: &SpecializeOptions) -> bool {
    l.pred == "rule" || (opts.unfold_lexicon && l.pred == "word")
}

fn first_unfoldable(c: &Clause, opts: &SpecializeOptions) -> Option<usize> {
    c.body.iter().position(|item| matches!(item, BodyItem::Constraint(l) if unfolds(l, opts)))
}

/// Resolve the constraint at `at` with each fact in turn.
fn unfold_at(c: &Clause, at: usize, facts: &FactBase) -> Vec<Clause> {
    let BodyItem::Constraint(goal) = &c.body[at] else { unreachable!("caller passes a constraint index") };
    let base = var_count(c) as u32;
    let mut out = Vec::new();
    for fact in facts.facts(&goal.pred, goal.args.len()) {
        let fact: Vec<Term> = shift_vars(&fact.to_vec(), base);
        let mut s = Some(Substitution::new());
        for (a, b) in goal.args.iter().zip(&fact) {
            s = s.and_then(|s| unify(a, b, &s));
        }
        let Some(s) = s else { continue };
        let mut rest = c.clone();
        rest.body.remove(at);
        out.push(canonicalize(&s.apply_to(&rest)));
    }
    out
}

/// Unfold constraints left to right; the clauses for a later constraint
/// nest inside those of an earlier one, and facts go in grammar order.
fn specialize_clause(c: &Clause, facts: &FactBase, opts: &SpecializeOptions) -> Vec<Clause> {
    let mut done = Vec::new();
    let mut todo = vec![canonicalize(c)];
    // depth-first keeps the nesting order
    while let Some(c) = todo.pop() {
        match first_unfoldable(&c, opts) {
            None => done.push(c),
            Some(at) => todo.extend(unfold_at(&c, at, facts).into_iter().rev()),
        }
    }
    done
}

pub fn partially_execute(p: &Program, g: &Grammar, opts: &SpecializeOptions) -> Program {
    let facts = FactBase::new(g, opts.resolution);
    let clauses = p.clauses().iter().flat_map(|c| specialize_clause(c, &facts, opts)).collect();
    Program::specialized(clauses, p.main())
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub identical: bool,
    /// Left is the specialized bottom-up program, right the left-corner one.
    pub diff: ProgramDiff,
}

/// Specialize the improved bottom-up and left-corner programs to `g` and
/// compare them, with `bu` renamed to `lc`.
pub fn specialization_identity(g: &Grammar, resolution: Resolution) -> Identity {
    let opts = SpecializeOptions { unfold_lexicon: true, resolution };
    let bu = partially_execute(&builtin_program(Builtin::EgnfBuImproved), g, &opts);
    let lc = partially_execute(&builtin_program(Builtin::EgnfLcImproved), g, &opts);
    let diff = program_diff(&rename_predicate(&bu, "bu", "lc"), &lc);
    Identity { identical: diff.is_empty(), diff }
}
