//! The parser programs hand-coded as search front ends.
//!
//! Each goal variant is one predicate of one program, and each alternative
//! is one of its clauses, taken in listing order:
//!
//! ```text
//! td(node(P,lf(W)))   --> [W], {word(P,W)}.
//! td(node(M,L,R))     --> {rule(M,L,R)}, td(L), td(R).
//! bu(node(P,lf(W)))   --> [W], {word(P,W)}.
//! bu(node(M,L,R))     --> bu(L), bu(R), {rule(M,L,R)}.
//! lc(node(P,lf(W)))   --> [W], {word(P,W)}.
//! lc(node(M,L,R))     --> lc(L), {rule(M,L,R)}, lc(R).
//!
//! bu(N) --> [W], {word(P,W)}, b(node(P,lf(W)),N).
//! b(N,N) --> [].
//! b(L,N) --> bu(R), {rule(M,L,R)}, b(node(M,L,R),N).      (lc: {rule}, lc(R), b)
//! ```
//!
//! `rule(M,L,R)` licenses the daughter trees `L` and `R` by their root
//! categories. A daughter is either `node(C,_)` or `node(C,_,_)`, so each
//! rule fact is tried in four shapes: lex/lex, lex/branch, branch/lex,
//! branch/branch.

use super::kernel::{Expand, Goal, Kernel, Outcome};
use super::Strategy;
use crate::grammar::Grammar;
use crate::store::{Ref, Store, Symbols, Template};
use crate::term::{Functor, Term};

#[derive(Clone, Copy)]
enum DGoal {
    Td(Ref),
    BuNaive(Ref),
    LcNaive(Ref),
    Bu(Ref),
    Lc(Ref),
    /// Accumulated left corner, final tree.
    BBu(Ref, Ref),
    BLc(Ref, Ref),
    Word(Ref, Ref),
    Rule(Ref, Ref, Ref),
}

struct Direct {
    node: u32,
    lf: u32,
    /// Four shapes per rule, roots mother, left daughter, right daughter.
    rules: Vec<Template>,
    /// Roots preterminal, word.
    lexicon: Vec<Template>,
}

/// A daughter tree with root category `cat`: lexical or branching.
fn daughter(cat: &Term, branching: bool, next: &mut u32) -> Term {
    let mut fresh = || {
        *next += 1;
        Term::Var(crate::term::Var(*next - 1))
    };
    if branching {
        Term::app("node", vec![cat.clone(), fresh(), fresh()])
    } else {
        Term::app("node", vec![cat.clone(), fresh()])
    }
}

impl Direct {
    fn new(g: &Grammar, symbols: &mut Symbols) -> Self {
        let node = symbols.intern(&Functor::new("node"));
        let lf = symbols.intern(&Functor::new("lf"));
        let mut rules = Vec::with_capacity(g.rules().len() * 4);
        for r in g.rules() {
            let next = r.mother.vars().into_iter().chain(r.left.vars()).chain(r.right.vars()).map(|v| v.0 + 1).max().unwrap_or(0);
            for shape in 0..4 {
                let mut n = next;
                let left = daughter(&r.left, shape >= 2, &mut n);
                let right = daughter(&r.right, shape % 2 == 1, &mut n);
                rules.push(Template::compile(&[r.mother.clone(), left, right], symbols));
            }
        }
        let lexicon = g.lexicon().iter().map(|l| Template::compile(&[l.preterm.clone(), l.word.clone()], symbols)).collect();
        Direct { node, lf, rules, lexicon }
    }

    /// `node(P,lf(W))` over fresh `P` and `W`.
    fn leaf_tree(&self, store: &mut Store) -> (Ref, Ref, Ref) {
        let p = store.fresh();
        let w = store.fresh();
        let lf = store.app(self.lf, &[w]);
        (store.app(self.node, &[p, lf]), p, w)
    }

    /// Clause 1 of td, naive bu and naive lc: a lexical leaf.
    fn leaf(&self, tree: Ref, store: &mut Store, out: &mut Vec<Goal<DGoal>>) -> bool {
        let (t, p, w) = self.leaf_tree(store);
        if !store.unify(tree, t) {
            return false;
        }
        out.push(Goal::Token(w));
        out.push(Goal::User(DGoal::Word(p, w)));
        true
    }

    /// Head of clause 2 of td, naive bu and naive lc: `node(M,L,R)`.
    fn branch(&self, tree: Ref, store: &mut Store) -> Option<(Ref, Ref, Ref)> {
        let m = store.fresh();
        let l = store.fresh();
        let r = store.fresh();
        let t = store.app(self.node, &[m, l, r]);
        store.unify(tree, t).then_some((m, l, r))
    }

    /// Body of the Greibach-form main predicate.
    fn scan(&self, node: Ref, store: &mut Store, out: &mut Vec<Goal<DGoal>>, left_corner: bool) {
        let (acc, p, w) = self.leaf_tree(store);
        out.push(Goal::Token(w));
        out.push(Goal::User(DGoal::Word(p, w)));
        out.push(Goal::User(if left_corner { DGoal::BLc(acc, node) } else { DGoal::BBu(acc, node) }));
    }
}

impl Expand for Direct {
    type Goal = DGoal;

    fn is_call(&self, goal: &DGoal) -> bool {
        !matches!(goal, DGoal::Word(..) | DGoal::Rule(..))
    }

    fn alternatives(&self, goal: &DGoal) -> usize {
        match goal {
            DGoal::Td(_) | DGoal::BuNaive(_) | DGoal::LcNaive(_) => 2,
            DGoal::Bu(_) | DGoal::Lc(_) => 1,
            DGoal::BBu(..) | DGoal::BLc(..) => 2,
            DGoal::Word(..) => self.lexicon.len(),
            DGoal::Rule(..) => self.rules.len(),
        }
    }

    fn attempt(&self, goal: &DGoal, alt: usize, store: &mut Store, out: &mut Vec<Goal<DGoal>>) -> bool {
        match *goal {
            DGoal::Td(t) | DGoal::BuNaive(t) | DGoal::LcNaive(t) if alt == 0 => self.leaf(t, store, out),
            DGoal::Td(t) => {
                let Some((m, l, r)) = self.branch(t, store) else { return false };
                out.push(Goal::User(DGoal::Rule(m, l, r)));
                out.push(Goal::User(DGoal::Td(l)));
                out.push(Goal::User(DGoal::Td(r)));
                true
            }
            DGoal::BuNaive(t) => {
                let Some((m, l, r)) = self.branch(t, store) else { return false };
                out.push(Goal::User(DGoal::BuNaive(l)));
                out.push(Goal::User(DGoal::BuNaive(r)));
                out.push(Goal::User(DGoal::Rule(m, l, r)));
                true
            }
            DGoal::LcNaive(t) => {
                let Some((m, l, r)) = self.branch(t, store) else { return false };
                out.push(Goal::User(DGoal::LcNaive(l)));
                out.push(Goal::User(DGoal::Rule(m, l, r)));
                out.push(Goal::User(DGoal::LcNaive(r)));
                true
            }
            DGoal::Bu(n) => {
                self.scan(n, store, out, false);
                true
            }
            DGoal::Lc(n) => {
                self.scan(n, store, out, true);
                true
            }
            DGoal::BBu(acc, n) | DGoal::BLc(acc, n) if alt == 0 => store.unify(acc, n),
            DGoal::BBu(acc, n) => {
                let r = store.fresh();
                let m = store.fresh();
                let next = store.app(self.node, &[m, acc, r]);
                out.push(Goal::User(DGoal::Bu(r)));
                out.push(Goal::User(DGoal::Rule(m, acc, r)));
                out.push(Goal::User(DGoal::BBu(next, n)));
                true
            }
            DGoal::BLc(acc, n) => {
                let r = store.fresh();
                let m = store.fresh();
                let next = store.app(self.node, &[m, acc, r]);
                out.push(Goal::User(DGoal::Rule(m, acc, r)));
                out.push(Goal::User(DGoal::Lc(r)));
                out.push(Goal::User(DGoal::BLc(next, n)));
                true
            }
            DGoal::Word(p, w) => {
                let t = &self.lexicon[alt];
                if !store.may_match(p, t, 0) || !store.may_match(w, t, 1) {
                    return false;
                }
                let base = store.instantiate(t);
                store.unify(p, base + t.root(0)) && store.unify(w, base + t.root(1))
            }
            DGoal::Rule(m, l, r) => {
                let t = &self.rules[alt];
                if !store.may_match(m, t, 0) || !store.may_match(l, t, 1) || !store.may_match(r, t, 2) {
                    return false;
                }
                let base = store.instantiate(t);
                store.unify(m, base + t.root(0)) && store.unify(l, base + t.root(1)) && store.unify(r, base + t.root(2))
            }
        }
    }
}

pub(super) fn search(g: &Grammar, words: &[Term], strategy: Strategy, budget: u64) -> Outcome {
    let mut symbols = Symbols::default();
    let engine = Direct::new(g, &mut symbols);
    Kernel::new(&engine, symbols, words, budget).run(|store| {
        let tree = store.fresh();
        let goal = match strategy {
            Strategy::Td => DGoal::Td(tree),
            Strategy::BuNaive => DGoal::BuNaive(tree),
            Strategy::LcNaive => DGoal::LcNaive(tree),
            Strategy::BuEgnf => DGoal::Bu(tree),
            Strategy::LcEgnf => DGoal::Lc(tree),
            Strategy::Oracle => unreachable!("the chart parser does not search"),
        };
        (goal, tree)
    })
}
