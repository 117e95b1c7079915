//! Structural program equality up to variable names and a renaming of
//! predicates that maps entry to entry.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{BodyItem, Clause, Literal, PredKey, Program};
use crate::term::canonicalize;

/// Names predicates `0`, `1`, ... in the order a breadth-first walk from the
/// entry predicate first calls them (clauses in program order, body items
/// left to right). Unreached predicates follow in order of definition.
/// Two programs related by a predicate bijection fixing the entry get the
/// same names, because the walk only looks at clause structure.
fn canonical_names(p: &Program) -> HashMap<PredKey, String> {
    let groups = p.by_predicate();
    let mut names: HashMap<PredKey, String> = HashMap::new();
    let mut queue = VecDeque::new();
    let visit = |k: PredKey, names: &mut HashMap<PredKey, String>, queue: &mut VecDeque<PredKey>| {
        if !names.contains_key(&k) {
            names.insert(k.clone(), format!("{}", names.len()));
            queue.push_back(k);
        }
    };
    if let Some(main) = p.predicates().into_iter().find(|k| k.name == p.main()) {
        visit(main, &mut names, &mut queue);
    }
    loop {
        while let Some(k) = queue.pop_front() {
            for c in groups.get(&k).into_iter().flatten() {
                for item in &c.body {
                    if let BodyItem::Call(l) = item {
                        visit(l.key(), &mut names, &mut queue);
                    }
                }
            }
        }
        match p.predicates().into_iter().find(|k| !names.contains_key(k)) {
            Some(k) => visit(k, &mut names, &mut queue),
            None => return names,
        }
    }
}

fn rename_clause(c: &Clause, names: &HashMap<PredKey, String>) -> Clause {
    let rename = |l: &Literal| Literal { pred: names[&l.key()].clone(), args: l.args.clone() };
    let body = c
        .body
        .iter()
        .map(|item| match item {
            BodyItem::Call(l) => BodyItem::Call(rename(l)),
            other => other.clone(),
        })
        .collect();
    canonicalize(&Clause::new(rename(&c.head), body))
}

/// Per canonical predicate name, its clauses in order, paired with the
/// original clauses for reporting.
fn canonical_groups(p: &Program) -> Vec<(PredKey, Vec<(Clause, &Clause)>)> {
    let names = canonical_names(p);
    let mut groups: Vec<(PredKey, Vec<(Clause, &Clause)>)> = Vec::new();
    for c in p.clauses() {
        let key = PredKey { name: names[&c.head.key()].clone(), arity: c.head.args.len() };
        let entry = match groups.iter().position(|(k, _)| *k == key) {
            Some(i) => &mut groups[i].1,
            None => {
                groups.push((key, Vec::new()));
                &mut groups.last_mut().unwrap().1
            }
        };
        entry.push((rename_clause(c, &names), c));
    }
    groups.sort_by(|a, b| a.0.cmp(&b.0));
    groups
}

/// True iff the programs have the same clauses, in the same order within
/// each predicate, up to variable renaming and a bijective renaming of
/// predicates that maps entry to entry.
pub fn program_equal(p: &Program, q: &Program) -> bool {
    program_diff(p, q).is_empty()
}

/// Clauses of either program without a counterpart at the same position
/// in the other.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProgramDiff {
    pub only_left: Vec<Clause>,
    pub only_right: Vec<Clause>,
}

impl ProgramDiff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

impl fmt::Display for ProgramDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.only_left {
            writeln!(f, "< {}", c.to_string().replace('\n', "\n< "))?;
        }
        for c in &self.only_right {
            writeln!(f, "> {}", c.to_string().replace('\n', "\n> "))?;
        }
        Ok(())
    }
}

pub fn program_diff(p: &Program, q: &Program) -> ProgramDiff {
    let left = canonical_groups(p);
    let right = canonical_groups(q);
    let mut diff = ProgramDiff::default();
    let empty = Vec::new();
    let mut keys: Vec<&PredKey> = left.iter().chain(right.iter()).map(|(k, _)| k).collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        let find = |gs: &'_ [(PredKey, Vec<(Clause, &'_ Clause)>)]| gs.iter().position(|(k, _)| k == key);
        let l = find(&left).map(|i| &left[i].1).unwrap_or(&empty);
        let r = find(&right).map(|i| &right[i].1).unwrap_or(&empty);
        for i in 0..l.len().max(r.len()) {
            match (l.get(i), r.get(i)) {
                (Some(a), Some(b)) if a.0 == b.0 => {}
                (a, b) => {
                    diff.only_left.extend(a.map(|(_, c)| (*c).clone()));
                    diff.only_right.extend(b.map(|(_, c)| (*c).clone()));
                }
            }
        }
    }
    diff
}

/// Rename every occurrence of predicate `from` (heads and calls).
pub fn rename_predicate(p: &Program, from: &str, to: &str) -> Program {
    let swap = |l: &Literal| {
        let pred = if l.pred == from { to.to_string() } else { l.pred.clone() };
        Literal { pred, args: l.args.clone() }
    };
    let clauses = p
        .clauses()
        .iter()
        .map(|c| {
            let body = c
                .body
                .iter()
                .map(|item| match item {
                    BodyItem::Call(l) => BodyItem::Call(swap(l)),
                    other => other.clone(),
                })
                .collect();
            Clause::new(swap(&c.head), body)
        })
        .collect();
    let main = if p.main() == from { to } else { p.main() };
    Program::new(clauses, main).expect("renaming keeps the entry predicate")
}
