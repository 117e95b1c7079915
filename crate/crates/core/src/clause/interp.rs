//! Resolution over programs with implicit string threading, on the same
//! search kernel as the hand-coded engines.

use std::collections::HashMap;
use std::str::FromStr;

use super::{BodyItem, PredKey, Program};
use crate::engine::kernel::{Expand, Goal, Kernel};
use crate::engine::{filter_root, outcome_to_result, ParseError, ParseResult, DEFAULT_BUDGET};
use crate::grammar::Grammar;
use crate::store::{Ref, Store, Symbols, Template};
use crate::term::{canonicalize, var_count, Functor, Term, Var};

/// How `rule/3` goals meet the grammar's rule facts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Resolution {
    /// `rule(M,L,R)` holds of a mother category and two daughter *trees*
    /// whose root categories match the fact's daughters. Each fact stands
    /// for four clauses, one per daughter shape (lexical `node(C,_)` or
    /// branching `node(C,_,_)`): lex/lex, lex/branch, branch/lex,
    /// branch/branch.
    #[default]
    Licensed,
    /// `rule(M,L,R)` unifies with the fact as written.
    Literal,
}

impl FromStr for Resolution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "licensed" => Ok(Resolution::Licensed),
            "literal" => Ok(Resolution::Literal),
            _ => Err(format!("unknown resolution `{s}` (expected licensed or literal)")),
        }
    }
}

#[derive(Clone, Debug)]
struct Fact {
    args: Vec<Term>,
}

impl Fact {
    fn new(args: Vec<Term>) -> Self {
        Fact { args: canonicalize(&args) }
    }
}

/// The grammar seen as clauses for `rule/3` and `word/2`, in grammar order.
#[derive(Clone, Debug)]
pub struct FactBase {
    rules: Vec<Fact>,
    words: Vec<Fact>,
}

impl FactBase {
    pub fn new(g: &Grammar, resolution: Resolution) -> Self {
        let mut rules = Vec::new();
        for r in g.rules() {
            match resolution {
                Resolution::Literal => rules.push(Fact::new(vec![r.mother.clone(), r.left.clone(), r.right.clone()])),
                Resolution::Licensed => {
                    let n = var_count(r) as u32;
                    let daughter = |cat: &Term, branching: bool, next: &mut u32| {
                        let mut fresh = || {
                            *next += 1;
                            Term::Var(Var(*next - 1))
                        };
                        let mut args = vec![cat.clone(), fresh()];
                        if branching {
                            args.push(fresh());
                        }
                        Term::app("node", args)
                    };
                    let r = canonicalize(r);
                    for shape in 0..4 {
                        let mut next = n;
                        let left = daughter(&r.left, shape >= 2, &mut next);
                        let right = daughter(&r.right, shape % 2 == 1, &mut next);
                        rules.push(Fact::new(vec![r.mother.clone(), left, right]));
                    }
                }
            }
        }
        let words = g.lexicon().iter().map(|l| Fact::new(vec![l.preterm.clone(), l.word.clone()])).collect();
        FactBase { rules, words }
    }

    /// Facts for a constraint predicate, each with canonically numbered
    /// variables. Empty for anything but `rule/3` and `word/2`.
    pub fn facts(&self, pred: &str, arity: usize) -> impl Iterator<Item = &[Term]> {
        let list: &[Fact] = match (pred, arity) {
            ("rule", 3) => &self.rules,
            ("word", 2) => &self.words,
            _ => &[],
        };
        list.iter().map(|f| f.args.as_slice())
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub root: Option<Term>,
    pub budget: u64,
    pub resolution: Resolution,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { root: None, budget: DEFAULT_BUDGET, resolution: Resolution::default() }
    }
}

impl RunOptions {
    pub fn with_root(mut self, root: Term) -> Self {
        self.root = Some(root);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_resolution(mut self, resolution: Resolution) -> Self {
        self.resolution = resolution;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("entry predicate must take one argument, the parse tree")]
    MainArity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FactKind {
    Rule,
    Word,
}

#[derive(Clone, Copy, Debug)]
enum Item {
    Terminal,
    Call(usize),
    Fact(FactKind),
}

/// Root 0 of the template is the head literal, root `i + 1` body item `i`.
#[derive(Clone, Debug)]
struct CClause {
    template: Template,
    body: Vec<Item>,
}

/// Each goal refers to its whole literal on the heap.
#[derive(Clone, Copy)]
enum IGoal {
    Call(usize, Ref),
    Fact(FactKind, Ref),
}

struct Interp {
    preds: Vec<Vec<CClause>>,
    rules: Vec<Template>,
    words: Vec<Template>,
    main_sym: u32,
}

impl Interp {
    /// Predicates that are called but have no clauses simply fail.
    fn compile(p: &Program, facts: &FactBase, symbols: &mut Symbols) -> Result<(Self, usize), RunError> {
        let mut keys = p.predicates();
        if !keys.iter().any(|k| k.name == p.main()) {
            keys.push(PredKey { name: p.main().to_string(), arity: 1 });
        }
        for c in p.clauses() {
            for item in &c.body {
                if let BodyItem::Call(l) = item {
                    if !keys.contains(&l.key()) {
                        keys.push(l.key());
                    }
                }
            }
        }
        let index: HashMap<&PredKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut preds = vec![Vec::new(); keys.len()];
        for c in p.clauses() {
            let mut roots = vec![c.head.to_term()];
            let mut body = Vec::with_capacity(c.body.len());
            for item in &c.body {
                let (kind, root) = match item {
                    BodyItem::Terminal(t) => (Item::Terminal, t.clone()),
                    BodyItem::Call(l) => (Item::Call(index[&l.key()]), l.to_term()),
                    BodyItem::Constraint(l) => {
                        let kind = if l.pred == "rule" { FactKind::Rule } else { FactKind::Word };
                        (Item::Fact(kind), l.to_term())
                    }
                };
                body.push(kind);
                roots.push(root);
            }
            let template = Template::compile(&roots, symbols);
            preds[index[&c.head.key()]].push(CClause { template, body });
        }
        let main = keys.iter().position(|k| k.name == p.main()).expect("entry predicate is indexed");
        if keys[main].arity != 1 {
            return Err(RunError::MainArity);
        }
        let mut literals = |pred: &str| -> Vec<Template> {
            let arity = if pred == "rule" { 3 } else { 2 };
            facts.facts(pred, arity).map(|args| Template::compile(&[Term::app(pred, args.to_vec())], symbols)).collect()
        };
        let rules = literals("rule");
        let words = literals("word");
        let main_sym = symbols.intern(&Functor::new(p.main()));
        Ok((Interp { preds, rules, words, main_sym }, main))
    }

    fn facts(&self, kind: FactKind) -> &[Template] {
        match kind {
            FactKind::Rule => &self.rules,
            FactKind::Word => &self.words,
        }
    }
}

impl Expand for Interp {
    type Goal = IGoal;

    fn is_call(&self, goal: &IGoal) -> bool {
        matches!(goal, IGoal::Call(..))
    }

    fn alternatives(&self, goal: &IGoal) -> usize {
        match *goal {
            IGoal::Call(p, _) => self.preds[p].len(),
            IGoal::Fact(kind, _) => self.facts(kind).len(),
        }
    }

    fn attempt(&self, goal: &IGoal, alt: usize, store: &mut Store, out: &mut Vec<Goal<IGoal>>) -> bool {
        match *goal {
            IGoal::Call(p, lit) => {
                let c = &self.preds[p][alt];
                if !store.may_match(lit, &c.template, 0) {
                    return false;
                }
                let base = store.instantiate(&c.template);
                if !store.unify(lit, base + c.template.root(0)) {
                    return false;
                }
                for (i, item) in c.body.iter().enumerate() {
                    let r = base + c.template.root(i + 1);
                    out.push(match *item {
                        Item::Terminal => Goal::Token(r),
                        Item::Call(q) => Goal::User(IGoal::Call(q, r)),
                        Item::Fact(k) => Goal::User(IGoal::Fact(k, r)),
                    });
                }
                true
            }
            IGoal::Fact(kind, lit) => {
                let t = &self.facts(kind)[alt];
                if !store.may_match(lit, t, 0) {
                    return false;
                }
                let base = store.instantiate(t);
                store.unify(lit, base + t.root(0))
            }
        }
    }
}

/// Query the entry predicate with a fresh variable over the whole input and
/// collect the trees it is bound to.
pub fn run_program(p: &Program, g: &Grammar, words: &[Term], opts: &RunOptions) -> Result<ParseResult, RunError> {
    if opts.budget == 0 {
        return Err(ParseError::ZeroBudget.into());
    }
    let mut symbols = Symbols::default();
    let (interp, main) = Interp::compile(p, &FactBase::new(g, opts.resolution), &mut symbols)?;
    let outcome = Kernel::new(&interp, symbols, words, opts.budget).run(|store| {
        let tree = store.fresh();
        (IGoal::Call(main, store.app(interp.main_sym, &[tree])), tree)
    });
    let result = outcome_to_result(outcome)?;
    Ok(filter_root(result, opts.root.as_ref()))
}
