//! Top-down, bottom-up and left-corner parsing read as preorder, postorder
//! and inorder traversal of the parse tree.
//!
//! The crate runs the three strategies directly, rewrites the left-recursive
//! bottom-up and left-corner programs into extended Greibach normal form,
//! and partially executes parser programs against a grammar, at which point
//! the bottom-up and left-corner programs become the same program.

pub mod batch;
pub mod clause;
pub mod corpus;
pub mod engine;
pub mod grammar;
pub mod specialize;
pub(crate) mod store;
pub mod syntax;
pub mod term;
pub mod traversal;

pub use engine::{oracle_parse, parse, yield_words, ParseError, ParseOptions, ParseResult, ParseTree, Strategy};
pub use grammar::{load_grammar, Grammar, LexFact, LoadError, RuleFact};
pub use syntax::{read_term, SyntaxError};
pub use term::{canonicalize, rename_apart, unify, Substitution, Term, Var, VarGen};
pub use traversal::{invert, traverse, Order, TravTree};
