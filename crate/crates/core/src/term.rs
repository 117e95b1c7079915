//! First-order terms, substitutions, unification and variable renaming.
//!
//! Terms are immutable and cheap to clone (argument lists are reference
//! counted), so they can be shared freely between threads. Fresh variables
//! come from an explicit [`VarGen`]; nothing here touches global state.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A logic variable, identified by a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    pub fn id(self) -> u32 {
        self.0
    }
}

/// Monotone source of fresh variables.
#[derive(Clone, Debug, Default)]
pub struct VarGen {
    next: u32,
}

impl VarGen {
    pub fn new() -> Self {
        VarGen { next: 0 }
    }

    /// A generator whose first fresh variable is `Var(start)`.
    pub fn starting_at(start: u32) -> Self {
        VarGen { next: start }
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        v
    }

    /// Reserve `n` consecutive ids and return the first.
    pub fn fresh_block(&mut self, n: u32) -> u32 {
        let base = self.next;
        self.next += n;
        base
    }

    /// The id the next call to [`VarGen::fresh`] will return.
    pub fn peek(&self) -> u32 {
        self.next
    }
}

/// A functor or atom name. Never empty.
#[derive(Clone, Debug)]
pub struct Functor(Arc<str>);

impl Functor {
    pub fn new(name: &str) -> Self {
        assert!(!name.is_empty(), "functor names must be nonempty");
        Functor(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Functor {}

impl Hash for Functor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialOrd for Functor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Functor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if is_plain_atom(&self.0) {
            f.write_str(&self.0)
        } else {
            write!(f, "'{}'", self.0.replace('\\', "\\\\").replace('\'', "\\'"))
        }
    }
}

/// Atoms that print without quotes: a lowercase identifier or a digit string.
pub(crate) fn is_plain_atom(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        }
        Some(c) if c.is_ascii_digit() => chars.all(|c| c.is_ascii_digit()),
        _ => false,
    }
}

/// A first-order term: a variable, or a functor applied to arguments.
/// Atoms are applications with no arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Functor, Arc<[Term]>),
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    pub fn atom(name: &str) -> Term {
        Term::App(Functor::new(name), Arc::from(Vec::new()))
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Functor::new(name), Arc::from(args))
    }

    pub fn with_functor(functor: Functor, args: Vec<Term>) -> Term {
        Term::App(functor, Arc::from(args))
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(..) => None,
        }
    }

    pub fn functor(&self) -> Option<&Functor> {
        match self {
            Term::App(f, _) => Some(f),
            Term::Var(_) => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::App(_, args) => args,
            Term::Var(_) => &[],
        }
    }

    pub fn arity(&self) -> usize {
        self.args().len()
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Term::App(_, args) if args.is_empty())
    }

    /// True if this is an application of `name` with `arity` arguments.
    pub fn is_app(&self, name: &str, arity: usize) -> bool {
        matches!(self, Term::App(f, args) if f.as_str() == name && args.len() == arity)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// Nesting depth: variables and atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    /// Variables in first-occurrence order, left to right, depth first.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.for_each_var(&mut |v| {
            if !out.contains(&v) {
                out.push(v)
            }
        });
        out
    }

    /// Render with a custom variable naming.
    pub fn display_with<'a>(&'a self, names: &'a dyn Fn(Var) -> String) -> impl fmt::Display + 'a {
        Named { term: self, names }
    }
}

struct Named<'a> {
    term: &'a Term,
    names: &'a dyn Fn(Var) -> String,
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self.term, self.names)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term, names: &dyn Fn(Var) -> String) -> fmt::Result {
    match t {
        Term::Var(v) => f.write_str(&names(*v)),
        Term::App(func, args) => {
            write!(f, "{func}")?;
            if !args.is_empty() {
                f.write_str("(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_term(f, a, names)?;
                }
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

/// Default variable name: A..Z, then A1..Z1, and so on.
pub fn var_name(v: Var) -> String {
    let letter = (b'A' + (v.0 % 26) as u8) as char;
    match v.0 / 26 {
        0 => letter.to_string(),
        n => format!("{letter}{n}"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, &var_name)
    }
}

/// Anything built from terms: terms themselves, facts, clauses, programs.
pub trait Structure: Sized {
    /// Rebuild with every variable replaced by `f(var)`.
    fn map_vars(&self, f: &mut dyn FnMut(Var) -> Term) -> Self;
    /// Visit variable occurrences left to right, depth first.
    fn for_each_var(&self, f: &mut dyn FnMut(Var));
}

impl Structure for Term {
    fn map_vars(&self, f: &mut dyn FnMut(Var) -> Term) -> Self {
        match self {
            Term::Var(v) => f(*v),
            Term::App(func, args) => {
                if args.is_empty() {
                    self.clone()
                } else {
                    let mapped: Vec<Term> = args.iter().map(|a| a.map_vars(f)).collect();
                    Term::App(func.clone(), Arc::from(mapped))
                }
            }
        }
    }

    fn for_each_var(&self, f: &mut dyn FnMut(Var)) {
        match self {
            Term::Var(v) => f(*v),
            Term::App(_, args) => args.iter().for_each(|a| a.for_each_var(f)),
        }
    }
}

impl<S: Structure> Structure for Vec<S> {
    fn map_vars(&self, f: &mut dyn FnMut(Var) -> Term) -> Self {
        self.iter().map(|s| s.map_vars(f)).collect()
    }

    fn for_each_var(&self, f: &mut dyn FnMut(Var)) {
        self.iter().for_each(|s| s.for_each_var(f))
    }
}

/// Renumber variables 0,1,2,… in first-occurrence order. Two structures are
/// variants of each other iff their canonical forms are equal.
pub fn canonicalize<S: Structure>(s: &S) -> S {
    let mut seen: HashMap<Var, Var> = HashMap::new();
    s.map_vars(&mut |v| {
        let n = seen.len() as u32;
        Term::Var(*seen.entry(v).or_insert(Var(n)))
    })
}

/// Number of distinct variables.
pub fn var_count<S: Structure>(s: &S) -> usize {
    let mut seen = Vec::new();
    s.for_each_var(&mut |v| {
        if !seen.contains(&v) {
            seen.push(v)
        }
    });
    seen.len()
}

/// A copy of `s` whose variables are fresh, with internal sharing preserved.
pub fn rename_apart<S: Structure>(s: &S, gen: &mut VarGen) -> S {
    let mut seen: HashMap<Var, Var> = HashMap::new();
    s.map_vars(&mut |v| Term::Var(*seen.entry(v).or_insert_with(|| gen.fresh())))
}

/// Shift every variable id by `base`. Applied to a canonical structure this
/// instantiates it into the block reserved by [`VarGen::fresh_block`].
pub fn shift_vars<S: Structure>(s: &S, base: u32) -> S {
    s.map_vars(&mut |v| Term::Var(Var(v.0 + base)))
}

pub fn is_variant<S: Structure + PartialEq>(a: &S, b: &S) -> bool {
    canonicalize(a) == canonicalize(b)
}

/// Variable bindings that unification can consult and extend.
pub trait Binder {
    fn lookup(&self, v: Var) -> Option<&Term>;
    fn bind(&mut self, v: Var, t: Term);
}

/// Follow variable bindings until an unbound variable or an application.
pub fn walk<B: Binder + ?Sized>(b: &B, t: &Term) -> Term {
    let mut cur = t;
    while let Term::Var(v) = cur {
        match b.lookup(*v) {
            Some(next) => cur = next,
            None => break,
        }
    }
    cur.clone()
}

fn occurs<B: Binder + ?Sized>(b: &B, v: Var, t: &Term) -> bool {
    match walk(b, t) {
        Term::Var(w) => w == v,
        Term::App(_, args) => args.iter().any(|a| occurs(b, v, a)),
    }
}

/// Robinson unification with occurs check, extending `b` in place.
///
/// When both sides are unbound variables, or either side is, the variable on
/// the left is bound first. On failure `b` may hold partial bindings; callers
/// that need to recover either work on a copy or undo via a trail.
pub fn unify_in<B: Binder + ?Sized>(b: &mut B, x: &Term, y: &Term) -> bool {
    let x = walk(b, x);
    let y = walk(b, y);
    match (&x, &y) {
        (Term::Var(a), Term::Var(c)) if a == c => true,
        (Term::Var(a), _) => {
            if occurs(b, *a, &y) {
                return false;
            }
            b.bind(*a, y);
            true
        }
        (_, Term::Var(c)) => {
            if occurs(b, *c, &x) {
                return false;
            }
            b.bind(*c, x);
            true
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys.iter()).all(|(p, q)| unify_in(b, p, q))
        }
    }
}

/// Resolve every bound variable in `t` through `b`.
pub fn resolve<B: Binder + ?Sized>(b: &B, t: &Term) -> Term {
    match walk(b, t) {
        v @ Term::Var(_) => v,
        Term::App(f, args) => {
            if args.is_empty() {
                Term::App(f, args)
            } else {
                let mapped: Vec<Term> = args.iter().map(|a| resolve(b, a)).collect();
                Term::App(f, Arc::from(mapped))
            }
        }
    }
}

/// A finite map from variables to terms, kept in triangular form: a binding
/// may mention variables bound elsewhere, and [`Substitution::apply`]
/// resolves to the fixed point. The occurs check in [`unify`] rules out
/// cycles, so applying twice equals applying once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: HashMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.map.keys().copied()
    }

    pub fn apply(&self, t: &Term) -> Term {
        resolve(self, t)
    }

    pub fn apply_to<S: Structure>(&self, s: &S) -> S {
        s.map_vars(&mut |v| resolve(self, &Term::Var(v)))
    }

    /// The same substitution with every binding fully resolved.
    pub fn normalized(&self) -> Substitution {
        Substitution {
            map: self.map.keys().map(|v| (*v, self.apply(&Term::Var(*v)))).collect(),
        }
    }
}

impl Binder for Substitution {
    fn lookup(&self, v: Var) -> Option<&Term> {
        self.map.get(&v)
    }

    fn bind(&mut self, v: Var, t: Term) {
        self.map.insert(v, t);
    }
}

/// Most general unifier of `a` and `b` extending `s`, or `None`.
pub fn unify(a: &Term, b: &Term, s: &Substitution) -> Option<Substitution> {
    let mut out = s.clone();
    unify_in(&mut out, a, b).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: u32) -> Term {
        Term::Var(Var(n))
    }

    #[test]
    fn binds_variable_to_atom() {
        let s = unify(&v(0), &Term::atom("a"), &Substitution::new()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.get(Var(0)), Some(&Term::atom("a")));
    }

    #[test]
    fn decomposes_compounds_binding_left_variables() {
        let lhs = Term::app("node", vec![v(0), v(1), v(2)]);
        let rhs = Term::app("node", vec![Term::atom("s"), v(3), v(4)]);
        let s = unify(&lhs, &rhs, &Substitution::new()).unwrap();
        assert_eq!(s.get(Var(0)), Some(&Term::atom("s")));
        assert_eq!(s.get(Var(1)), Some(&v(3)));
        assert_eq!(s.get(Var(2)), Some(&v(4)));
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn distinct_atoms_fail() {
        assert!(unify(&Term::atom("a"), &Term::atom("b"), &Substitution::new()).is_none());
    }

    #[test]
    fn occurs_check_rejects_cyclic_binding() {
        let fx = Term::app("f", vec![v(0)]);
        assert!(unify(&v(0), &fx, &Substitution::new()).is_none());
        assert!(unify(&fx, &v(0), &Substitution::new()).is_none());
    }

    #[test]
    fn arity_mismatch_fails() {
        let a = Term::app("f", vec![v(0)]);
        let b = Term::app("f", vec![v(0), v(1)]);
        assert!(unify(&a, &b, &Substitution::new()).is_none());
    }

    #[test]
    fn apply_examples() {
        let mut s = Substitution::new();
        s.bind(Var(0), Term::atom("a"));
        let t = Term::app("f", vec![v(0), v(1)]);
        assert_eq!(s.apply(&t), Term::app("f", vec![Term::atom("a"), v(1)]));
        assert_eq!(Substitution::new().apply(&t), t);

        let mut s = Substitution::new();
        s.bind(Var(0), Term::app("g", vec![v(1)]));
        s.bind(Var(1), Term::atom("b"));
        assert_eq!(s.apply(&v(0)), Term::app("g", vec![Term::atom("b")]));
        let once = s.apply(&v(0));
        assert_eq!(s.apply(&once), once);
    }

    #[test]
    fn rename_apart_preserves_sharing() {
        let mut gen = VarGen::starting_at(100);
        let t = Term::app("f", vec![v(0), v(0)]);
        let r = rename_apart(&t, &mut gen);
        assert_eq!(r.args()[0], r.args()[1]);
        assert_ne!(r.args()[0], v(0));

        let t = Term::app("f", vec![v(0), v(1)]);
        let r = rename_apart(&t, &mut gen);
        assert_ne!(r.args()[0], r.args()[1]);
        assert!(r.vars().iter().all(|x| x.0 >= 100));

        assert_eq!(rename_apart(&Term::atom("a"), &mut gen), Term::atom("a"));
    }

    #[test]
    fn canonical_forms() {
        let t = Term::app("f", vec![v(7), v(3), v(7)]);
        assert_eq!(canonicalize(&t), Term::app("f", vec![v(0), v(1), v(0)]));
        let a = Term::app("f", vec![v(5), v(9)]);
        let b = Term::app("f", vec![v(1), v(2)]);
        assert!(is_variant(&a, &b));
        let shared = Term::app("f", vec![v(5), v(5)]);
        assert!(!is_variant(&shared, &b));
    }

    #[test]
    fn display_uses_letters() {
        let t = Term::app("node", vec![Term::atom("s"), v(0), v(27)]);
        assert_eq!(t.to_string(), "node(s,A,B1)");
        assert_eq!(Term::atom("Big atom").to_string(), "'Big atom'");
    }

    #[test]
    fn depth_counts_nesting() {
        assert_eq!(Term::atom("a").depth(), 0);
        assert_eq!(Term::app("f", vec![Term::app("g", vec![v(0)])]).depth(), 2);
    }
}
