//! Left-recursion removal by conversion to extended Greibach normal form,
//! and the improvement that folds the optional continuation into `b`.
//!
//! For a predicate `a/1` with non-left-recursive clauses `a(H) --> beta`
//! and left-recursive clauses `a(H) --> a(A), alpha`, the transform emits
//!
//! ```text
//! a(H) --> beta.            b(A,H) --> alpha.
//! a(N) --> beta, b(H,N).    b(A,N) --> alpha, b(H,N).
//! ```
//!
//! so `b` carries the tree built so far and the final tree. Constraint goals
//! keep their places among the other body items.

use std::collections::{HashMap, HashSet};

use super::{BodyItem, Clause, Literal, PredKey, Program};
use crate::term::{canonicalize, var_count, Term, Var};

const AUX: &str = "b";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct TransformError {
    pub message: String,
}

fn reject(message: String) -> TransformError {
    TransformError { message }
}

fn is_self_call(c: &Clause) -> bool {
    matches!(c.body.first(), Some(BodyItem::Call(l)) if l.key() == c.head.key())
}

fn fresh_var(c: &Clause) -> Term {
    Term::Var(Var(var_count(c) as u32))
}

fn b_call(acc: Term, fin: Term) -> BodyItem {
    BodyItem::Call(Literal::new(AUX, vec![acc, fin]))
}

pub fn egnf_transform(p: &Program) -> Result<Program, TransformError> {
    let main = p.main();
    for (i, c) in p.clauses().iter().enumerate() {
        if c.head.pred != main {
            return Err(reject(format!("clause {} defines `{}`; only single-predicate programs are supported:\n{c}", i + 1, c.head.key())));
        }
        if c.head.args.len() != 1 {
            return Err(reject(format!("clause {} head has arity {}, expected 1:\n{c}", i + 1, c.head.args.len())));
        }
    }
    if main == AUX {
        return Err(reject(format!("the entry predicate may not be named `{AUX}`")));
    }
    let clauses: Vec<Clause> = p.clauses().iter().map(canonicalize).collect();
    let (rec, base): (Vec<&Clause>, Vec<&Clause>) = clauses.iter().partition(|c| is_self_call(c));
    if rec.is_empty() {
        return Err(reject(format!("no clause of `{main}` is left-recursive")));
    }
    if base.is_empty() {
        return Err(reject(format!("every clause of `{main}` is left-recursive")));
    }

    let mut out = Vec::new();
    for c in &base {
        let n = fresh_var(c);
        out.push((*c).clone());
        let mut body = c.body.clone();
        body.push(b_call(c.head.args[0].clone(), n.clone()));
        out.push(Clause::new(Literal::new(main, vec![n]), body));
    }
    for c in &rec {
        let BodyItem::Call(first) = &c.body[0] else { unreachable!() };
        let acc = first.args[0].clone();
        let built = c.head.args[0].clone();
        let alpha = c.body[1..].to_vec();
        let n = fresh_var(c);
        out.push(Clause::new(Literal::new(AUX, vec![acc.clone(), built.clone()]), alpha.clone()));
        let mut body = alpha;
        body.push(b_call(built, n.clone()));
        out.push(Clause::new(Literal::new(AUX, vec![acc, n]), body));
    }
    Ok(Program::new(out.iter().map(canonicalize).collect(), main).expect("transform keeps the entry predicate"))
}

/// Replace each pair `h(X) --> gamma` / `h(N) --> gamma, b(X,N)` by its
/// second member, and give `b` the unit clause `b(N,N) --> []`.
pub fn improve(p: &Program) -> Result<Program, TransformError> {
    let main = p.main();
    let by_pred = p.by_predicate();
    let main_key = PredKey { name: main.to_string(), arity: 1 };
    let aux_key = PredKey { name: AUX.to_string(), arity: 2 };
    if by_pred.len() != 2 || !by_pred.contains_key(&main_key) || !by_pred.contains_key(&aux_key) {
        let found: Vec<String> = p.predicates().iter().map(|k| k.to_string()).collect();
        return Err(reject(format!("expected exactly {main_key} and {aux_key}, found {}", found.join(", "))));
    }
    for key in [&main_key, &aux_key] {
        let cs = &by_pred[key];
        if cs.len() != 2 {
            return Err(reject(format!("{key} has {} clauses, expected a plain clause and its continuation", cs.len())));
        }
        if !is_continuation_of(cs[0], cs[1]) {
            return Err(reject(format!(
                "clauses of {key} do not differ only by a final call to {AUX}:\n{}\n{}",
                cs[0], cs[1]
            )));
        }
    }
    let unit = Clause::new(Literal::new(AUX, vec![Term::Var(Var(0)), Term::Var(Var(0))]), Vec::new());
    let mut out = Vec::new();
    let mut emitted = HashSet::new();
    for c in p.clauses() {
        let key = c.head.key();
        if !emitted.insert(key.clone()) {
            continue;
        }
        let keep = by_pred[&key][1];
        if key == aux_key {
            out.push(unit.clone());
        }
        out.push(canonicalize(keep));
    }
    Ok(Program::new(out, main).expect("improve keeps the entry predicate"))
}

/// Is `cont` a variant of `plain` with head argument `X` replaced by a
/// fresh `N` and `b(X,N)` appended?
fn is_continuation_of(plain: &Clause, cont: &Clause) -> bool {
    let plain = canonicalize(plain);
    let Some((last, rest)) = plain.head.args.split_last() else { return false };
    let n = fresh_var(&plain);
    let mut args = rest.to_vec();
    args.push(n.clone());
    let mut body = plain.body.clone();
    body.push(b_call(last.clone(), n));
    canonicalize(&Clause::new(Literal::new(&plain.head.pred, args), body)) == canonicalize(cont)
}

/// True iff no predicate can reach a call to itself without consuming a
/// token first. Constraints and calls to predicates that can succeed on
/// empty input are looked through.
pub fn left_recursion_free(p: &Program) -> bool {
    let nullable = nullable_predicates(p);
    let mut edges: HashMap<PredKey, Vec<PredKey>> = HashMap::new();
    for c in p.clauses() {
        let targets = edges.entry(c.head.key()).or_default();
        for item in &c.body {
            match item {
                BodyItem::Terminal(_) => break,
                BodyItem::Constraint(_) => {}
                BodyItem::Call(l) => {
                    targets.push(l.key());
                    if !nullable.contains(&l.key()) {
                        break;
                    }
                }
            }
        }
    }
    // depth-first cycle detection
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    fn cyclic(k: &PredKey, edges: &HashMap<PredKey, Vec<PredKey>>, marks: &mut HashMap<PredKey, Mark>) -> bool {
        match marks.get(k) {
            Some(Mark::Open) => return true,
            Some(Mark::Done) => return false,
            None => {}
        }
        marks.insert(k.clone(), Mark::Open);
        for t in edges.get(k).into_iter().flatten() {
            if cyclic(t, edges, marks) {
                return true;
            }
        }
        marks.insert(k.clone(), Mark::Done);
        false
    }
    let mut marks = HashMap::new();
    let mut keys: Vec<&PredKey> = edges.keys().collect();
    keys.sort();
    !keys.into_iter().any(|k| cyclic(k, &edges, &mut marks))
}

fn nullable_predicates(p: &Program) -> HashSet<PredKey> {
    let mut nullable = HashSet::new();
    loop {
        let before = nullable.len();
        for c in p.clauses() {
            let all = c.body.iter().all(|item| match item {
                BodyItem::Terminal(_) => false,
                BodyItem::Constraint(_) => true,
                BodyItem::Call(l) => nullable.contains(&l.key()),
            });
            if all {
                nullable.insert(c.head.key());
            }
        }
        if nullable.len() == before {
            return nullable;
        }
    }
}
