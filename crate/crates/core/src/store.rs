//! The term heap used by the backtracking search.
//!
//! Terms live in a flat vector of cells and are named by the index of their
//! root cell. A variable is a `Ref` cell pointing at itself; binding it
//! points it elsewhere and records it on the trail. Undoing to a mark resets
//! the trailed cells and truncates the heap, so everything built after the
//! mark disappears at once.
//!
//! Clause and fact bodies are compiled once into [`Template`]s and copied
//! onto the heap with their indices relocated.

use std::collections::HashMap;
use std::sync::Arc;

use crate::term::{Functor, Term, Var};

pub(crate) type Ref = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Cell {
    /// Unbound when it points at itself, otherwise bound to its target.
    Ref(Ref),
    /// A functor applied to the `arity` cells starting at `args`.
    App { sym: u32, arity: u32, args: Ref },
}

/// Functor names as dense ids.
#[derive(Clone, Debug, Default)]
pub(crate) struct Symbols {
    ids: HashMap<Functor, u32>,
    names: Vec<Functor>,
}

impl Symbols {
    pub(crate) fn intern(&mut self, f: &Functor) -> u32 {
        if let Some(&id) = self.ids.get(f) {
            return id;
        }
        let id = self.names.len() as u32;
        self.ids.insert(f.clone(), id);
        self.names.push(f.clone());
        id
    }

    pub(crate) fn name(&self, id: u32) -> &Functor {
        &self.names[id as usize]
    }
}

/// Terms sharing one variable scope, laid out as relocatable cells.
#[derive(Clone, Debug)]
pub(crate) struct Template {
    cells: Vec<Cell>,
    roots: Vec<Ref>,
}

impl Template {
    /// Variables with the same number in different roots are shared.
    pub(crate) fn compile(roots: &[Term], symbols: &mut Symbols) -> Template {
        let mut t = Template { cells: Vec::new(), roots: Vec::with_capacity(roots.len()) };
        let mut homes: HashMap<Var, Ref> = HashMap::new();
        let slots: Vec<Ref> = roots.iter().map(|_| t.reserve(1)).collect();
        for (term, slot) in roots.iter().zip(slots) {
            t.place(term, slot, &mut homes, symbols);
            t.roots.push(slot);
        }
        t
    }

    fn reserve(&mut self, n: usize) -> Ref {
        let start = self.cells.len() as Ref;
        self.cells.extend(std::iter::repeat_n(Cell::Ref(0), n));
        start
    }

    fn place(&mut self, term: &Term, slot: Ref, homes: &mut HashMap<Var, Ref>, symbols: &mut Symbols) {
        self.cells[slot as usize] = match term {
            Term::Var(v) => Cell::Ref(*homes.entry(*v).or_insert(slot)),
            Term::App(f, args) => {
                let start = self.reserve(args.len());
                for (i, a) in args.iter().enumerate() {
                    self.place(a, start + i as Ref, homes, symbols);
                }
                Cell::App { sym: symbols.intern(f), arity: args.len() as u32, args: start }
            }
        };
    }

    pub(crate) fn root(&self, i: usize) -> Ref {
        self.roots[i]
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Mark {
    trail: usize,
    heap: u32,
}

#[derive(Debug, Default)]
pub(crate) struct Store {
    heap: Vec<Cell>,
    trail: Vec<Ref>,
    pairs: Vec<(Ref, Ref)>,
    stack: Vec<Ref>,
}

impl Store {
    pub(crate) fn new() -> Self {
        Store::default()
    }

    pub(crate) fn fresh(&mut self) -> Ref {
        let r = self.heap.len() as Ref;
        self.heap.push(Cell::Ref(r));
        r
    }

    pub(crate) fn atom(&mut self, sym: u32) -> Ref {
        let r = self.heap.len() as Ref;
        self.heap.push(Cell::App { sym, arity: 0, args: 0 });
        r
    }

    /// `sym` applied to existing cells.
    pub(crate) fn app(&mut self, sym: u32, args: &[Ref]) -> Ref {
        let start = self.heap.len() as Ref;
        // each argument cell is a bound reference to its term
        self.heap.extend(args.iter().map(|&a| Cell::Ref(a)));
        let r = self.heap.len() as Ref;
        self.heap.push(Cell::App { sym, arity: args.len() as u32, args: start });
        r
    }

    /// False only if the term at `r` certainly fails to unify with root `i`
    /// of `t`, judged from the top two levels of structure. Lets callers
    /// skip copying templates that cannot match.
    pub(crate) fn may_match(&self, r: Ref, t: &Template, i: usize) -> bool {
        self.shallow(r, t, t.roots[i], 2)
    }

    fn shallow(&self, r: Ref, t: &Template, c: Ref, depth: u32) -> bool {
        let Cell::App { sym: g, arity: m, args: ys } = t.cells[c as usize] else { return true };
        let r = self.deref(r);
        match self.heap[r as usize] {
            Cell::Ref(_) => true,
            Cell::App { sym: f, arity: n, args: xs } => {
                f == g && n == m && (depth == 0 || (0..n).all(|k| self.shallow(xs + k, t, ys + k, depth - 1)))
            }
        }
    }

    /// Copy a template onto the heap; its root `i` is then at `base + root(i)`.
    pub(crate) fn instantiate(&mut self, t: &Template) -> Ref {
        let base = self.heap.len() as Ref;
        self.heap.extend(t.cells.iter().map(|c| match *c {
            Cell::Ref(r) => Cell::Ref(r + base),
            Cell::App { sym, arity, args } => Cell::App { sym, arity, args: args + base },
        }));
        base
    }

    pub(crate) fn mark(&self) -> Mark {
        Mark { trail: self.trail.len(), heap: self.heap.len() as u32 }
    }

    /// Undo every binding made since `m` and drop every cell built since.
    pub(crate) fn undo(&mut self, m: Mark) {
        for i in m.trail..self.trail.len() {
            let r = self.trail[i];
            if (r as usize) < self.heap.len() {
                self.heap[r as usize] = Cell::Ref(r);
            }
        }
        self.trail.truncate(m.trail);
        self.heap.truncate(m.heap as usize);
    }

    pub(crate) fn clear(&mut self) {
        self.heap.clear();
        self.trail.clear();
    }

    fn deref(&self, mut r: Ref) -> Ref {
        loop {
            match self.heap[r as usize] {
                Cell::Ref(next) if next != r => r = next,
                _ => return r,
            }
        }
    }

    fn bind(&mut self, var: Ref, to: Ref) {
        self.heap[var as usize] = Cell::Ref(to);
        self.trail.push(var);
    }

    fn occurs(&mut self, var: Ref, t: Ref) -> bool {
        self.stack.clear();
        self.stack.push(t);
        while let Some(r) = self.stack.pop() {
            let r = self.deref(r);
            match self.heap[r as usize] {
                Cell::Ref(_) => {
                    if r == var {
                        return true;
                    }
                }
                Cell::App { arity, args, .. } => self.stack.extend(args..args + arity),
            }
        }
        false
    }

    /// Unification with occurs check. On failure the caller undoes to a
    /// mark taken before the call.
    pub(crate) fn unify(&mut self, a: Ref, b: Ref) -> bool {
        self.pairs.clear();
        self.pairs.push((a, b));
        while let Some((a, b)) = self.pairs.pop() {
            let a = self.deref(a);
            let b = self.deref(b);
            if a == b {
                continue;
            }
            match (self.heap[a as usize], self.heap[b as usize]) {
                (Cell::Ref(_), _) => {
                    if self.occurs(a, b) {
                        return false;
                    }
                    self.bind(a, b);
                }
                (_, Cell::Ref(_)) => {
                    if self.occurs(b, a) {
                        return false;
                    }
                    self.bind(b, a);
                }
                (Cell::App { sym: f, arity: n, args: xs }, Cell::App { sym: g, arity: m, args: ys }) => {
                    if f != g || n != m {
                        return false;
                    }
                    // reversed, so arguments are unified left to right
                    for i in (0..n).rev() {
                        self.pairs.push((xs + i, ys + i));
                    }
                }
            }
        }
        true
    }

    /// The term at `r`, with unbound cells as variables numbered by heap
    /// index.
    pub(crate) fn to_term(&self, r: Ref, symbols: &Symbols) -> Term {
        let r = self.deref(r);
        match self.heap[r as usize] {
            Cell::Ref(_) => Term::Var(Var(r)),
            Cell::App { sym, arity, args } => {
                let f = symbols.name(sym).clone();
                if arity == 0 {
                    return Term::App(f, Arc::from(Vec::new()));
                }
                let args: Vec<Term> = (args..args + arity).map(|a| self.to_term(a, symbols)).collect();
                Term::App(f, Arc::from(args))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::read_term;
    use crate::term::canonicalize;

    fn roots(src: &str) -> Vec<Term> {
        read_term(&format!("t({src})")).unwrap().args().to_vec()
    }

    #[test]
    fn templates_round_trip() {
        let mut syms = Symbols::default();
        let t = Template::compile(&roots("node(P,lf(W)), W, f(P,P,g(X))"), &mut syms);
        let mut s = Store::new();
        let base = s.instantiate(&t);
        let back: Vec<Term> = (0..3).map(|i| s.to_term(base + t.root(i), &syms)).collect();
        let expected = roots("node(P,lf(W)), W, f(P,P,g(X))");
        let wrap = |v: Vec<Term>| canonicalize(&Term::app("t", v));
        assert_eq!(wrap(back), wrap(expected));
    }

    #[test]
    fn unify_binds_and_undo_restores() {
        let mut syms = Symbols::default();
        let t = Template::compile(&roots("f(X,g(Y)), f(a,Z)"), &mut syms);
        let mut s = Store::new();
        let base = s.instantiate(&t);
        let m = s.mark();
        assert!(s.unify(base + t.root(0), base + t.root(1)));
        let both = s.to_term(base + t.root(1), &syms);
        assert_eq!(canonicalize(&both), read_term("f(a,g(A))").unwrap());
        s.undo(m);
        let x = s.to_term(base + t.root(0), &syms);
        assert!(x.args()[0].as_var().is_some());
    }

    #[test]
    fn may_match_never_rejects_a_unifiable_pair() {
        let mut syms = Symbols::default();
        let pats = roots("node(a,X), node(b,Y,Z), node(A,lf(w)), f(g(h(a))), X");
        let t = Template::compile(&pats, &mut syms);
        let probes = Template::compile(&roots("node(a,lf(w)), node(b,c,d), node(c,lf(v)), f(g(h(b))), q"), &mut syms);
        let mut s = Store::new();
        let base = s.instantiate(&probes);
        let mut rejected = 0;
        for p in 0..5 {
            for i in 0..5 {
                let m = s.mark();
                let tb = s.instantiate(&t);
                let ok = s.unify(base + probes.root(p), tb + t.root(i));
                s.undo(m);
                let may = s.may_match(base + probes.root(p), &t, i);
                assert!(may || !ok, "probe {p} vs pattern {i}");
                rejected += usize::from(!may);
            }
        }
        assert!(rejected > 10);
    }

    #[test]
    fn occurs_check() {
        let mut syms = Symbols::default();
        let t = Template::compile(&roots("X, f(X)"), &mut syms);
        let mut s = Store::new();
        let base = s.instantiate(&t);
        assert!(!s.unify(base + t.root(0), base + t.root(1)));
    }

    #[test]
    fn clash() {
        let mut syms = Symbols::default();
        let t = Template::compile(&roots("f(a,X), f(b,Y), g(a,X)"), &mut syms);
        let mut s = Store::new();
        let base = s.instantiate(&t);
        assert!(!s.unify(base + t.root(0), base + t.root(1)));
        let m = s.mark();
        assert!(!s.unify(base + t.root(0), base + t.root(2)));
        s.undo(m);
        assert!(s.unify(base + t.root(1), base + t.root(1)));
    }
}
