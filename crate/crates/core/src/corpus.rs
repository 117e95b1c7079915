//! Seeded random grammars and sentences for differential testing.

use std::collections::HashSet;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grammar::{Grammar, LexFact, RuleFact};
use crate::term::{canonicalize, Structure, Term, Var};

#[derive(Clone, Debug)]
pub struct GrammarShape {
    pub max_categories: usize,
    pub max_rules: usize,
    pub max_lexicon: usize,
    pub max_words: usize,
    /// Let categories carry arguments (atoms, variables shared across a
    /// rule, and `f(_)` wrappers), up to nesting depth 2.
    pub term_categories: bool,
}

impl Default for GrammarShape {
    fn default() -> Self {
        GrammarShape { max_categories: 8, max_rules: 10, max_lexicon: 6, max_words: 5, term_categories: true }
    }
}

const ATOMS: [&str; 2] = ["a", "b"];

fn category_name(i: usize) -> String {
    format!("c{i}")
}

/// A category over `name`, with arguments drawn from `vars` when given.
fn category(rng: &mut impl Rng, name: &str, vars: Option<&[Var]>) -> Term {
    let Some(vars) = vars else { return Term::atom(name) };
    let arity = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=2) };
    let args = (0..arity)
        .map(|_| {
            let leaf = |rng: &mut dyn rand::RngCore| -> Term {
                if !vars.is_empty() && rng.gen_bool(0.6) {
                    Term::Var(vars[rng.gen_range(0..vars.len())])
                } else {
                    Term::atom(ATOMS[rng.gen_range(0..ATOMS.len())])
                }
            };
            if rng.gen_bool(0.25) {
                Term::app("f", vec![leaf(rng)])
            } else {
                leaf(rng)
            }
        })
        .collect();
    Term::app(name, args)
}

pub fn random_grammar(rng: &mut impl Rng, shape: &GrammarShape) -> Grammar {
    let ncat = rng.gen_range(1..=shape.max_categories.max(1));
    let nrules = rng.gen_range(0..=shape.max_rules);
    let nlex = rng.gen_range(1..=shape.max_lexicon.max(1));
    let nwords = rng.gen_range(1..=shape.max_words.max(1));
    let pick = |rng: &mut dyn rand::RngCore| category_name(rng.gen_range(0..ncat));
    let vars = [Var(0), Var(1)];
    // repeated facts only multiply derivations, so draws that repeat one
    // (up to variable names) are dropped
    let rules = distinct((0..nrules).map(|_| {
        let v = shape.term_categories.then_some(&vars[..]);
        let (m, l, r) = (pick(rng), pick(rng), pick(rng));
        RuleFact { mother: category(rng, &m, v), left: category(rng, &l, v), right: category(rng, &r, v) }
    }));
    let lexicon = distinct((0..nlex).map(|_| {
        let v = shape.term_categories.then_some(&vars[..1]);
        let p = pick(rng);
        LexFact { preterm: category(rng, &p, v), word: Term::atom(&format!("w{}", rng.gen_range(0..nwords))) }
    }));
    Grammar::new(rules, lexicon).expect("generated words are atoms")
}

fn distinct<T: Structure + Eq + Hash>(facts: impl Iterator<Item = T>) -> Vec<T> {
    let mut seen = HashSet::new();
    facts.filter(|f| seen.insert(canonicalize(f))).collect()
}

/// Yield of a random derivation (matching categories by name only, so it
/// may or may not parse), or uniformly random words from the lexicon.
pub fn random_sentence(rng: &mut impl Rng, g: &Grammar, max_len: usize) -> Vec<Term> {
    let words = g.words();
    if words.is_empty() || max_len == 0 {
        return Vec::new();
    }
    if rng.gen_bool(0.6) {
        if let Some(start) = g.rules().choose(rng).map(|r| r.mother.clone()).or_else(|| {
            g.lexicon().choose(rng).map(|l| l.preterm.clone())
        }) {
            let mut out = Vec::new();
            if derive(rng, g, &start, max_len, &mut out) && !out.is_empty() {
                return out;
            }
        }
    }
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| words.choose(rng).expect("nonempty").clone()).collect()
}

fn name_of(t: &Term) -> &str {
    t.functor().map(|f| f.as_str()).unwrap_or("")
}

fn derive(rng: &mut impl Rng, g: &Grammar, cat: &Term, budget: usize, out: &mut Vec<Term>) -> bool {
    let name = name_of(cat);
    let lex: Vec<&LexFact> = g.lexicon().iter().filter(|l| name_of(&l.preterm) == name).collect();
    let rules: Vec<&RuleFact> = g.rules().iter().filter(|r| name_of(&r.mother) == name).collect();
    let room = budget.saturating_sub(out.len());
    if room == 0 {
        return false;
    }
    if room >= 2 && !rules.is_empty() && (lex.is_empty() || rng.gen_bool(0.5)) {
        let r = rules.choose(rng).expect("nonempty");
        return derive(rng, g, &r.left, budget - 1, out) && derive(rng, g, &r.right, budget, out);
    }
    match lex.choose(rng) {
        Some(l) => {
            out.push(l.word.clone());
            true
        }
        None => false,
    }
}

/// `n` (grammar, sentence) pairs, deterministic in `seed`.
pub fn corpus(seed: u64, n: usize, shape: &GrammarShape, max_len: usize) -> Vec<(Grammar, Vec<Term>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let g = random_grammar(&mut rng, shape);
            let s = random_sentence(&mut rng, &g, max_len);
            (g, s)
        })
        .collect()
}

/// `n` grammars, deterministic in `seed`.
pub fn grammars(seed: u64, n: usize, shape: &GrammarShape) -> Vec<Grammar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_grammar(&mut rng, shape)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::oracle_parse;

    #[test]
    fn grammars_respect_the_shape() {
        let shape = GrammarShape::default();
        for g in grammars(7, 200, &shape) {
            assert!(g.rules().len() <= 10);
            assert!((1..=6).contains(&g.lexicon().len()));
            let mut cats: Vec<&str> = g.rules().iter().flat_map(|r| [&r.mother, &r.left, &r.right]).map(name_of).collect();
            cats.extend(g.lexicon().iter().map(|l| name_of(&l.preterm)));
            cats.sort();
            cats.dedup();
            assert!(cats.len() <= 8);
            for r in g.rules() {
                for t in [&r.mother, &r.left, &r.right] {
                    assert!(t.depth() <= 2, "{t}");
                }
            }
        }
    }

    #[test]
    fn facts_are_distinct() {
        let shape = GrammarShape::default();
        for g in grammars(9, 300, &shape) {
            let rules: HashSet<_> = g.rules().iter().map(canonicalize).collect();
            let lex: HashSet<_> = g.lexicon().iter().map(canonicalize).collect();
            assert_eq!(rules.len(), g.rules().len(), "{g}");
            assert_eq!(lex.len(), g.lexicon().len(), "{g}");
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let shape = GrammarShape::default();
        let a = corpus(3, 20, &shape, 6);
        let b = corpus(3, 20, &shape, 6);
        for ((ga, sa), (gb, sb)) in a.iter().zip(&b) {
            assert_eq!(ga.to_string(), gb.to_string());
            assert_eq!(sa, sb);
        }
    }

    #[test]
    fn sentences_are_short_and_often_parse() {
        let shape = GrammarShape::default();
        let pairs = corpus(11, 200, &shape, 6);
        assert!(pairs.iter().all(|(_, s)| s.len() <= 6));
        let parsed = pairs.iter().filter(|(g, s)| !oracle_parse(g, s, None).is_empty()).count();
        assert!(parsed >= 40, "only {parsed} of 200 parse");
        assert!(pairs.iter().any(|(_, s)| s.len() >= 4));
    }

    #[test]
    fn shared_variables_occur() {
        let shape = GrammarShape::default();
        let shared = grammars(5, 100, &shape).iter().flat_map(|g| g.rules().to_vec()).any(|r| {
            let m = r.mother.vars();
            m.iter().any(|v| r.left.contains_var(*v) || r.right.contains_var(*v))
        });
        assert!(shared);
    }
}
