//! Executable parsers: the top-down, bottom-up and left-corner programs
//! coded directly as search front ends, their left-recursion-free
//! Greibach-form variants, and a chart parser used as ground truth.

mod direct;
pub(crate) mod kernel;
mod oracle;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::grammar::Grammar;
use crate::term::{rename_apart, unify, Structure, Substitution, Term, Var, VarGen};

pub use oracle::oracle_parse;

/// Default step budget for searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A parse tree: `node(PreTerm,lf(Word))` for a lexical leaf,
/// `node(Mother,Left,Right)` for a binary branch.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParseTree {
    Lex { preterm: Term, word: Term },
    Branch { mother: Term, left: Box<ParseTree>, right: Box<ParseTree> },
}

impl ParseTree {
    pub fn lex(preterm: Term, word: Term) -> ParseTree {
        ParseTree::Lex { preterm, word }
    }

    pub fn branch(mother: Term, left: ParseTree, right: ParseTree) -> ParseTree {
        ParseTree::Branch { mother, left: Box::new(left), right: Box::new(right) }
    }

    /// The category at the root.
    pub fn category(&self) -> &Term {
        match self {
            ParseTree::Lex { preterm, .. } => preterm,
            ParseTree::Branch { mother, .. } => mother,
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            ParseTree::Lex { preterm, word } => {
                Term::app("node", vec![preterm.clone(), Term::app("lf", vec![word.clone()])])
            }
            ParseTree::Branch { mother, left, right } => {
                Term::app("node", vec![mother.clone(), left.to_term(), right.to_term()])
            }
        }
    }

    pub fn from_term(t: &Term) -> Option<ParseTree> {
        if t.is_app("node", 2) {
            let a = t.args();
            if a[1].is_app("lf", 1) && a[1].args()[0].is_atom() {
                return Some(ParseTree::lex(a[0].clone(), a[1].args()[0].clone()));
            }
            None
        } else if t.is_app("node", 3) {
            let a = t.args();
            Some(ParseTree::branch(a[0].clone(), ParseTree::from_term(&a[1])?, ParseTree::from_term(&a[2])?))
        } else {
            None
        }
    }

    /// Indented rendering, one node per line.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.pretty_into(0, &mut out);
        out
    }

    fn pretty_into(&self, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match self {
            ParseTree::Lex { preterm, word } => out.push_str(&format!("{pad}{preterm} {word}\n")),
            ParseTree::Branch { mother, left, right } => {
                out.push_str(&format!("{pad}{mother}\n"));
                left.pretty_into(indent + 1, out);
                right.pretty_into(indent + 1, out);
            }
        }
    }
}

impl Structure for ParseTree {
    fn map_vars(&self, f: &mut dyn FnMut(Var) -> Term) -> Self {
        match self {
            ParseTree::Lex { preterm, word } => ParseTree::lex(preterm.map_vars(f), word.clone()),
            ParseTree::Branch { mother, left, right } => {
                let mother = mother.map_vars(f);
                let left = left.map_vars(f);
                ParseTree::branch(mother, left, right.map_vars(f))
            }
        }
    }

    fn for_each_var(&self, f: &mut dyn FnMut(Var)) {
        match self {
            ParseTree::Lex { preterm, .. } => preterm.for_each_var(f),
            ParseTree::Branch { mother, left, right } => {
                mother.for_each_var(f);
                left.for_each_var(f);
                right.for_each_var(f);
            }
        }
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// The words at the leaves, left to right.
pub fn yield_words(tree: &ParseTree) -> Vec<Term> {
    fn go(t: &ParseTree, out: &mut Vec<Term>) {
        match t {
            ParseTree::Lex { word, .. } => out.push(word.clone()),
            ParseTree::Branch { left, right, .. } => {
                go(left, out);
                go(right, out);
            }
        }
    }
    let mut out = Vec::new();
    go(tree, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Rule first, then daughters (preorder).
    Td,
    /// Daughters first, then rule (postorder). Left-recursive.
    BuNaive,
    /// Left daughter, rule, right daughter (inorder). Left-recursive.
    LcNaive,
    /// Bottom-up in extended Greibach form with the optional continuation
    /// folded into the auxiliary predicate.
    BuEgnf,
    /// Left-corner, same transformation.
    LcEgnf,
    /// Chart parser over spans.
    Oracle,
}

impl Strategy {
    pub const ALL: [Strategy; 6] =
        [Strategy::Td, Strategy::BuNaive, Strategy::LcNaive, Strategy::BuEgnf, Strategy::LcEgnf, Strategy::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Td => "td",
            Strategy::BuNaive => "bu-naive",
            Strategy::LcNaive => "lc-naive",
            Strategy::BuEgnf => "bu",
            Strategy::LcEgnf => "lc",
            Strategy::Oracle => "oracle",
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "td" => Strategy::Td,
            "bu-naive" => Strategy::BuNaive,
            "lc-naive" => Strategy::LcNaive,
            "bu" | "bu-egnf" => Strategy::BuEgnf,
            "lc" | "lc-egnf" => Strategy::LcEgnf,
            "oracle" => Strategy::Oracle,
            other => {
                return Err(format!(
                    "unknown strategy `{other}` (expected td, bu-naive, lc-naive, bu, lc or oracle)"
                ))
            }
        })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct ParseOptions {
    /// Keep only trees whose root category unifies with this term.
    pub root: Option<Term>,
    /// Maximum number of search steps.
    pub budget: u64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { root: None, budget: DEFAULT_BUDGET }
    }
}

impl ParseOptions {
    pub fn with_root(mut self, root: Term) -> Self {
        self.root = Some(root);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseResult {
    /// Distinct trees with canonically numbered variables, in the order the
    /// search found them.
    pub trees: Vec<ParseTree>,
    /// False iff the step budget ran out before the search space did.
    pub complete: bool,
    pub steps: u64,
}

impl ParseResult {
    pub fn tree_set(&self) -> BTreeSet<ParseTree> {
        self.trees.iter().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("search produced `{0}`, which is not a parse tree")]
    NotATree(Term),
}

/// All trees spanning exactly `words` under `strategy`.
pub fn parse(g: &Grammar, words: &[Term], strategy: Strategy, opts: &ParseOptions) -> Result<ParseResult, ParseError> {
    if opts.budget == 0 {
        return Err(ParseError::ZeroBudget);
    }
    let result = match strategy {
        Strategy::Oracle => {
            ParseResult { trees: oracle::oracle_parse(g, words, None), complete: true, steps: 0 }
        }
        _ => {
            let outcome = direct::search(g, words, strategy, opts.budget);
            outcome_to_result(outcome)?
        }
    };
    Ok(filter_root(result, opts.root.as_ref()))
}

pub(crate) fn outcome_to_result(outcome: kernel::Outcome) -> Result<ParseResult, ParseError> {
    let trees = outcome
        .answers
        .into_iter()
        .map(|t| ParseTree::from_term(&t).ok_or(ParseError::NotATree(t)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ParseResult { trees, complete: outcome.complete, steps: outcome.steps })
}

/// Does the tree's root category unify with `root`? Neither side is bound.
pub fn root_matches(tree: &ParseTree, root: &Term) -> bool {
    let mut max = 0;
    tree.for_each_var(&mut |v| max = max.max(v.0 + 1));
    let mut gen = VarGen::starting_at(max);
    let root = rename_apart(root, &mut gen);
    unify(tree.category(), &root, &Substitution::new()).is_some()
}

pub(crate) fn filter_root(mut result: ParseResult, root: Option<&Term>) -> ParseResult {
    if let Some(root) = root {
        result.trees.retain(|t| root_matches(t, root));
    }
    result
}

/// Atoms for a whitespace-free list of word strings.
pub fn words(ws: &[&str]) -> Vec<Term> {
    ws.iter().map(|w| Term::atom(w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::fixtures;
    use crate::syntax::read_term;

    fn t(s: &str) -> Term {
        read_term(s).unwrap()
    }

    fn tree(s: &str) -> ParseTree {
        ParseTree::from_term(&t(s)).unwrap()
    }

    fn sentence_tree() -> ParseTree {
        tree("node(s,node(np,node(det,lf(the)),node(n,lf(dog))),node(vp,node(v,lf(chased)),node(np,node(det,lf(the)),node(n,lf(cat)))))")
    }

    #[test]
    fn egnf_bottom_up_parses_sentence() {
        let ws = words(&["the", "dog", "chased", "the", "cat"]);
        let r = parse(&fixtures::g0(), &ws, Strategy::BuEgnf, &ParseOptions::default().with_root(t("s"))).unwrap();
        assert_eq!(r.trees, vec![sentence_tree()]);
        assert!(r.complete);
    }

    #[test]
    fn egnf_left_corner_on_ambiguous_grammar() {
        let r = parse(&fixtures::ga(), &words(&["t", "t", "t"]), Strategy::LcEgnf, &ParseOptions::default()).unwrap();
        assert_eq!(r.trees.len(), 2);
        assert!(r.complete);
    }

    #[test]
    fn empty_input_has_no_parse() {
        let r = parse(&fixtures::g0(), &[], Strategy::Td, &ParseOptions::default()).unwrap();
        assert!(r.trees.is_empty());
        assert!(r.complete);
    }

    #[test]
    fn top_down_loops_on_left_recursive_rule() {
        let g = fixtures::ga();
        let small = parse(&g, &words(&["t"]), Strategy::Td, &ParseOptions::default().with_budget(100_000)).unwrap();
        assert_eq!(small.trees, vec![tree("node(a,lf(t))")]);
        assert!(!small.complete);
        let big = parse(&g, &words(&["t"]), Strategy::Td, &ParseOptions::default().with_budget(200_000)).unwrap();
        assert_eq!(big.tree_set(), small.tree_set());
        assert!(!big.complete);
    }

    #[test]
    fn categories_carrying_trees() {
        let r = parse(&fixtures::g1(), &words(&["it", "ran"]), Strategy::BuEgnf, &ParseOptions::default()).unwrap();
        assert_eq!(r.trees.len(), 1);
        assert_eq!(r.trees[0].category(), &t("s(tree(s,tree(np,it),tree(vp,ran)))"));
    }

    #[test]
    fn zero_budget_is_rejected() {
        let e = parse(&fixtures::g0(), &[], Strategy::Td, &ParseOptions::default().with_budget(0));
        assert_eq!(e, Err(ParseError::ZeroBudget));
    }

    #[test]
    fn unknown_word_gives_no_trees() {
        let r = parse(&fixtures::g0(), &words(&["the", "unicorn"]), Strategy::LcEgnf, &ParseOptions::default())
            .unwrap();
        assert!(r.trees.is_empty());
        assert!(r.complete);
    }

    #[test]
    fn yields() {
        assert_eq!(yield_words(&tree("node(n,lf(dog))")), words(&["dog"]));
        assert_eq!(yield_words(&tree("node(np,node(det,lf(the)),node(n,lf(dog)))")), words(&["the", "dog"]));
        assert_eq!(yield_words(&sentence_tree()), words(&["the", "dog", "chased", "the", "cat"]));
    }

    #[test]
    fn root_filter_uses_unifiability_only() {
        let tr = tree("node(s(A),lf(x))");
        assert!(root_matches(&tr, &t("s(b)")));
        assert!(root_matches(&tr, &t("A")));
        assert!(!root_matches(&tr, &t("np(b)")));
    }

    #[test]
    fn naive_strategies_never_complete() {
        let g = fixtures::g0();
        for s in [Strategy::BuNaive, Strategy::LcNaive] {
            let r = parse(&g, &words(&["the", "dog"]), s, &ParseOptions::default().with_budget(20_000)).unwrap();
            assert!(!r.complete, "{s}");
            assert_eq!(r.trees, vec![tree("node(np,node(det,lf(the)),node(n,lf(dog)))")], "{s}");
        }
    }
}
