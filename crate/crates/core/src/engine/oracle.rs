//! Span chart parser. Each cell holds every tree over its span; longer
//! spans combine two adjacent cells through every rule fact whose daughter
//! categories unify with the subtrees' root categories. Nothing here shares
//! code with the search kernel: it uses the substitution-based unifier.

use std::collections::HashSet;

use super::{filter_root, ParseResult, ParseTree};
use crate::grammar::Grammar;
use crate::term::{canonicalize, rename_apart, unify, Substitution, Term, VarGen};

pub fn oracle_parse(g: &Grammar, words: &[Term], root: Option<&Term>) -> Vec<ParseTree> {
    let n = words.len();
    if n == 0 {
        return Vec::new();
    }
    // chart[i][len - 1]: trees over words[i..i + len]
    let mut chart: Vec<Vec<Vec<ParseTree>>> = vec![vec![Vec::new(); n]; n];
    for (i, w) in words.iter().enumerate() {
        let mut cell = Cell::default();
        for lex in g.lexicon() {
            if &lex.word == w {
                cell.insert(ParseTree::lex(lex.preterm.clone(), w.clone()));
            }
        }
        chart[i][0] = cell.trees;
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let mut cell = Cell::default();
            for k in 1..len {
                for left in &chart[i][k - 1] {
                    for right in &chart[i + k][len - k - 1] {
                        for rule in g.rules() {
                            if let Some(t) = combine(rule, left, right) {
                                cell.insert(t);
                            }
                        }
                    }
                }
            }
            chart[i][len - 1] = cell.trees;
        }
    }
    let result = ParseResult { trees: std::mem::take(&mut chart[0][n - 1]), complete: true, steps: 0 };
    filter_root(result, root).trees
}

fn combine(rule: &crate::grammar::RuleFact, left: &ParseTree, right: &ParseTree) -> Option<ParseTree> {
    let mut gen = VarGen::new();
    let left = rename_apart(left, &mut gen);
    let right = rename_apart(right, &mut gen);
    let rule = rename_apart(rule, &mut gen);
    let s = unify(&rule.left, left.category(), &Substitution::new())?;
    let s = unify(&rule.right, right.category(), &s)?;
    Some(s.apply_to(&ParseTree::branch(rule.mother, left, right)))
}

#[derive(Default)]
struct Cell {
    trees: Vec<ParseTree>,
    seen: HashSet<ParseTree>,
}

impl Cell {
    fn insert(&mut self, t: ParseTree) {
        let t = canonicalize(&t);
        if self.seen.insert(t.clone()) {
            self.trees.push(t);
        }
    }
}
