//! The parser programs, as printed.

use std::fmt;
use std::str::FromStr;

use super::{read_program, Program};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    NaiveTd,
    NaiveBu,
    NaiveLc,
    EgnfBu,
    EgnfBuImproved,
    EgnfLcImproved,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::NaiveTd,
        Builtin::NaiveBu,
        Builtin::NaiveLc,
        Builtin::EgnfBu,
        Builtin::EgnfBuImproved,
        Builtin::EgnfLcImproved,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::NaiveTd => "naive_td",
            Builtin::NaiveBu => "naive_bu",
            Builtin::NaiveLc => "naive_lc",
            Builtin::EgnfBu => "egnf_bu",
            Builtin::EgnfBuImproved => "egnf_bu_improved",
            Builtin::EgnfLcImproved => "egnf_lc_improved",
        }
    }

    pub fn source(self) -> &'static str {
        match self {
            Builtin::NaiveTd => NAIVE_TD,
            Builtin::NaiveBu => NAIVE_BU,
            Builtin::NaiveLc => NAIVE_LC,
            Builtin::EgnfBu => EGNF_BU,
            Builtin::EgnfBuImproved => EGNF_BU_IMPROVED,
            Builtin::EgnfLcImproved => EGNF_LC_IMPROVED,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown program `{0}` (expected one of naive_td, naive_bu, naive_lc, egnf_bu, egnf_bu_improved, egnf_lc_improved)")]
pub struct UnknownProgram(pub String);

impl FromStr for Builtin {
    type Err = UnknownProgram;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| UnknownProgram(s.to_string()))
    }
}

pub fn builtin_program(b: Builtin) -> Program {
    read_program(b.source()).expect("builtin programs are well formed")
}

const NAIVE_TD: &str = "\
% top-down parser
td(node(PreTerm,lf(Word))) -->
    [Word],
    {word(PreTerm,Word)}.
td(node(Mother,Left,Right)) -->
    {rule(Mother,Left,Right)},
    td(Left),
    td(Right).
";

const NAIVE_BU: &str = "\
% bottom-up parser
bu(node(PreTerm,lf(Word))) -->
    [Word],
    {word(PreTerm,Word)}.
bu(node(Mother,Left,Right)) -->
    bu(Left),
    bu(Right),
    {rule(Mother,Left,Right)}.
";

const NAIVE_LC: &str = "\
% left-corner parser
lc(node(PreTerm,lf(Word))) -->
    [Word],
    {word(PreTerm,Word)}.
lc(node(Mother,Left,Right)) -->
    lc(Left),
    {rule(Mother,Left,Right)},
    lc(Right).
";

const EGNF_BU: &str = "\
% EGNF bottom-up
bu(node(PreTerm,lf(Word))) -->
    [Word],
    {word(PreTerm,Word)}.
bu(Node) -->
    [Word],
    {word(PreTerm,Word)},
    b(node(PreTerm,lf(Word)),Node).

b(L,node(Mother,L,R)) -->
    bu(R),
    {rule(Mother,L,R)}.
b(L,Node) -->
    bu(R),
    {rule(Mother,L,R)},
    b(node(Mother,L,R),Node).
";

const EGNF_BU_IMPROVED: &str = "\
% Improved EGNF bottom-up
bu(Node) -->
    [Word],
    {word(PreTerm,Word)},
    b(node(PreTerm,lf(Word)),Node).

b(Node,Node) --> [].
b(L,Node) -->
    bu(R),
    {rule(Mother,L,R)},
    b(node(Mother,L,R),Node).
";

const EGNF_LC_IMPROVED: &str = "\
% Improved EGNF Left-corner
lc(Node) -->
    [Word],
    {word(PreTerm,Word)},
    b(node(PreTerm,lf(Word)),Node).

b(Node,Node) --> [].
b(L,Node) -->
  {rule(Mother,L,R)},
  lc(R),
  b(node(Mother,L,R),Node).
";
