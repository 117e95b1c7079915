//! Backtracking search shared by the hand-coded engines and the clause
//! interpreter.
//!
//! A front end ([`Expand`]) says how many alternatives a goal has and what
//! trying one of them does. The kernel owns the rest: the goal list, choice
//! points, the binding trail, token consumption, the step budget and the
//! depth bound.
//!
//! Each pass is plain depth-first search in alternative order, cut off at a
//! call depth. If a pass hit the cutoff, the bound doubles and the search
//! restarts, keeping the answers found so far. Left-recursive programs never
//! finish a pass without a cutoff, but every answer is eventually reached at
//! some depth, so their answer sets grow monotonically with the budget.
//!
//! One step is charged per alternative tried (clause head, fact, terminal).

use std::collections::HashSet;

use crate::store::{Mark, Ref, Store, Symbols};
use crate::term::{canonicalize, Term};

const INITIAL_DEPTH: u32 = 8;
/// Passes never go deeper than this. Whole-input parses of any realistic
/// sentence need far less; it keeps term nesting, and with it the recursion
/// in answer extraction, bounded on divergent programs.
const MAX_DEPTH: u32 = 1024;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Goal<G> {
    /// Consume the next word, which must unify with the term at this cell.
    Token(Ref),
    User(G),
}

pub(crate) trait Expand {
    type Goal: Copy;

    /// Whether the goal counts toward the depth bound (predicate calls do,
    /// constraints over facts do not).
    fn is_call(&self, goal: &Self::Goal) -> bool;

    fn alternatives(&self, goal: &Self::Goal) -> usize;

    /// Try alternative `alt`. On success push the child goals, in execution
    /// order, and return true. Bindings and cells made by a failed attempt
    /// are undone by the kernel.
    fn attempt(&self, goal: &Self::Goal, alt: usize, store: &mut Store, out: &mut Vec<Goal<Self::Goal>>) -> bool;
}

const NIL: u32 = u32::MAX;

/// Goal lists are linked frames in an arena. Frames made after a choice
/// point are unreachable once it is resumed, so resuming truncates the
/// arena back to where it stood.
#[derive(Clone, Copy)]
struct Frame<G> {
    goal: Goal<G>,
    depth: u32,
    next: u32,
}

struct ChoicePoint {
    frame: u32,
    alt: usize,
    pos: usize,
    mark: Mark,
    frames: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    /// Canonicalized answers in discovery order, without duplicates.
    pub answers: Vec<Term>,
    pub complete: bool,
    pub steps: u64,
}

pub(crate) struct Kernel<'a, E: Expand> {
    expander: &'a E,
    symbols: Symbols,
    words: Vec<u32>,
    budget: u64,
    steps: u64,
    bound: u32,
    cutoff: bool,
    exhausted: bool,
    store: Store,
    pos: usize,
    goals: u32,
    frames: Vec<Frame<E::Goal>>,
    choices: Vec<ChoicePoint>,
    scratch: Vec<Goal<E::Goal>>,
    answers: Vec<Term>,
    seen: HashSet<Term>,
}

impl<'a, E: Expand> Kernel<'a, E> {
    /// `symbols` must cover every functor in the expander's templates; the
    /// words are added to it.
    pub(crate) fn new(expander: &'a E, mut symbols: Symbols, words: &[Term], budget: u64) -> Self {
        let words = words
            .iter()
            .map(|w| symbols.intern(w.functor().expect("words are atoms")))
            .collect();
        Kernel {
            expander,
            symbols,
            words,
            budget,
            steps: 0,
            bound: INITIAL_DEPTH,
            cutoff: false,
            exhausted: false,
            store: Store::new(),
            pos: 0,
            goals: NIL,
            frames: Vec::new(),
            choices: Vec::new(),
            scratch: Vec::new(),
            answers: Vec::new(),
            seen: HashSet::new(),
        }
    }

    /// Prove `make_query`'s goal over the whole input, collecting the
    /// resolved term at the returned cell for every proof. The query is
    /// rebuilt for each pass because the store is cleared between passes.
    pub(crate) fn run(mut self, make_query: impl Fn(&mut Store) -> (E::Goal, Ref)) -> Outcome {
        loop {
            self.store.clear();
            self.frames.clear();
            self.choices.clear();
            self.cutoff = false;
            self.pos = 0;
            // the words sit below every mark, so undo never removes them
            for i in 0..self.words.len() {
                let r = self.store.atom(self.words[i]);
                debug_assert_eq!(r as usize, i);
            }
            let (goal, answer) = make_query(&mut self.store);
            self.frames.push(Frame { goal: Goal::User(goal), depth: 1, next: NIL });
            self.goals = 0;
            self.pass(answer);
            if self.exhausted {
                return self.finish(false);
            }
            if !self.cutoff {
                return self.finish(true);
            }
            self.bound = (self.bound * 2).min(MAX_DEPTH);
        }
    }

    fn finish(self, complete: bool) -> Outcome {
        Outcome { answers: self.answers, complete, steps: self.steps }
    }

    fn pass(&mut self, answer: Ref) {
        loop {
            let proceeded = if self.goals == NIL {
                if self.pos == self.words.len() {
                    let t = canonicalize(&self.store.to_term(answer, &self.symbols));
                    if self.seen.insert(t.clone()) {
                        self.answers.push(t);
                    }
                }
                false
            } else {
                self.enter(self.goals, 0)
            };
            if self.exhausted {
                return;
            }
            if !proceeded && !self.backtrack() {
                return;
            }
        }
    }

    /// Retry choice points until one yields a further alternative.
    fn backtrack(&mut self) -> bool {
        while let Some(cp) = self.choices.pop() {
            self.store.undo(cp.mark);
            self.frames.truncate(cp.frames as usize);
            self.pos = cp.pos;
            if self.enter(cp.frame, cp.alt) {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }

    /// Try the frame's goal from alternative `first` on. On success the goal
    /// list holds the children followed by the frame's continuation.
    fn enter(&mut self, frame: u32, first: usize) -> bool {
        let Frame { goal, depth, next } = self.frames[frame as usize];
        let count = match &goal {
            Goal::Token(_) => 1,
            Goal::User(g) => {
                if self.expander.is_call(g) && depth > self.bound {
                    self.cutoff = true;
                    return false;
                }
                self.expander.alternatives(g)
            }
        };
        let mark = self.store.mark();
        let pos = self.pos;
        let frames = self.frames.len() as u32;
        for alt in first..count {
            if self.steps >= self.budget {
                self.exhausted = true;
                return false;
            }
            self.steps += 1;
            self.scratch.clear();
            let ok = match &goal {
                Goal::Token(t) => {
                    if self.pos < self.words.len() && self.store.unify(*t, self.pos as Ref) {
                        self.pos += 1;
                        true
                    } else {
                        false
                    }
                }
                Goal::User(g) => self.expander.attempt(g, alt, &mut self.store, &mut self.scratch),
            };
            if !ok {
                self.store.undo(mark);
                continue;
            }
            if alt + 1 < count {
                self.choices.push(ChoicePoint { frame, alt: alt + 1, pos, mark, frames });
            }
            let mut list = next;
            for i in (0..self.scratch.len()).rev() {
                self.frames.push(Frame { goal: self.scratch[i], depth: depth + 1, next: list });
                list = self.frames.len() as u32 - 1;
            }
            self.goals = list;
            return true;
        }
        false
    }
}
