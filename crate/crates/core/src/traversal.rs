//! Preorder, postorder and inorder traversal of labelled binary trees, run
//! in both directions: a tree to its label sequence, and a label sequence
//! back to every tree that traverses to it.

use std::fmt;
use std::str::FromStr;

use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TravTree {
    Empty,
    Node(Term, Box<TravTree>, Box<TravTree>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Pre,
    Post,
    In,
}

impl Order {
    pub const ALL: [Order; 3] = [Order::Pre, Order::Post, Order::In];
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pre" => Ok(Order::Pre),
            "post" => Ok(Order::Post),
            "in" => Ok(Order::In),
            other => Err(format!("unknown order `{other}` (expected pre, post or in)")),
        }
    }
}

impl TravTree {
    pub fn leaf(label: Term) -> TravTree {
        TravTree::node(label, TravTree::Empty, TravTree::Empty)
    }

    pub fn node(label: Term, left: TravTree, right: TravTree) -> TravTree {
        TravTree::Node(label, Box::new(left), Box::new(right))
    }

    pub fn size(&self) -> usize {
        match self {
            TravTree::Empty => 0,
            TravTree::Node(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// `empty` or `node(Label,Left,Right)`.
    pub fn to_term(&self) -> Term {
        match self {
            TravTree::Empty => Term::atom("empty"),
            TravTree::Node(label, l, r) => Term::app("node", vec![label.clone(), l.to_term(), r.to_term()]),
        }
    }

    pub fn from_term(t: &Term) -> Option<TravTree> {
        if t.is_app("empty", 0) {
            Some(TravTree::Empty)
        } else if t.is_app("node", 3) {
            let a = t.args();
            Some(TravTree::node(a[0].clone(), TravTree::from_term(&a[1])?, TravTree::from_term(&a[2])?))
        } else {
            None
        }
    }
}

impl fmt::Display for TravTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

pub fn traverse(order: Order, tree: &TravTree) -> Vec<Term> {
    let mut out = Vec::with_capacity(tree.size());
    walk(order, tree, &mut out);
    out
}

fn walk(order: Order, tree: &TravTree, out: &mut Vec<Term>) {
    if let TravTree::Node(label, l, r) = tree {
        if order == Order::Pre {
            out.push(label.clone());
        }
        walk(order, l, out);
        if order == Order::In {
            out.push(label.clone());
        }
        walk(order, r, out);
        if order == Order::Post {
            out.push(label.clone());
        }
    }
}

/// Every tree whose `order` traversal is `labels`, each exactly once.
///
/// Works by splitting rather than by running the traversal backwards: the
/// root is the first (pre), last (post) or any (in) label, and the rest is
/// split between the subtrees. Splits are enumerated with the smallest left
/// subtree first. A tree fixes its left subtree's size, so distinct splits
/// never yield the same tree.
pub fn invert(order: Order, labels: &[Term]) -> Vec<TravTree> {
    if labels.is_empty() {
        return vec![TravTree::Empty];
    }
    let n = labels.len();
    let mut out = Vec::new();
    match order {
        Order::Pre => {
            let rest = &labels[1..];
            for k in 0..=rest.len() {
                combine(&labels[0], &invert(order, &rest[..k]), &invert(order, &rest[k..]), &mut out);
            }
        }
        Order::Post => {
            let rest = &labels[..n - 1];
            for k in 0..=rest.len() {
                combine(&labels[n - 1], &invert(order, &rest[..k]), &invert(order, &rest[k..]), &mut out);
            }
        }
        Order::In => {
            for k in 0..n {
                combine(&labels[k], &invert(order, &labels[..k]), &invert(order, &labels[k + 1..]), &mut out);
            }
        }
    }
    out
}

fn combine(label: &Term, lefts: &[TravTree], rights: &[TravTree], out: &mut Vec<TravTree>) {
    for l in lefts {
        for r in rights {
            out.push(TravTree::node(label.clone(), l.clone(), r.clone()));
        }
    }
}
