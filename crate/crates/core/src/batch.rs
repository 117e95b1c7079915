//! Many independent jobs at once: one sentence set against a grammar, or
//! one check across a corpus. A single parse is always single-threaded;
//! parallelism is only across jobs.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on
//! the rayon pool. Without it every batch runs sequentially.

use crate::engine::{parse, ParseError, ParseOptions, ParseResult, Strategy};
use crate::grammar::Grammar;
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// `f` over every item, results in input order whichever executor runs.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn parse_batch(
    g: &Grammar,
    sentences: &[Vec<Term>],
    strategy: Strategy,
    opts: &ParseOptions,
    exec: Exec,
) -> Vec<Result<ParseResult, ParseError>> {
    map(exec, sentences, |s| parse(g, s, strategy, opts))
}
