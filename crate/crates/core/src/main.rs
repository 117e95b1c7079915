use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use travparse::clause::{builtin_program, egnf_transform, improve, Builtin, Resolution};
use travparse::grammar::fixtures;
use travparse::specialize::{partially_execute, specialization_identity, SpecializeOptions};
use travparse::{
    canonicalize, invert, load_grammar, parse, read_term, traverse, Grammar, Order, ParseOptions, Strategy, Term,
    TravTree,
};

#[derive(Parser)]
#[command(name = "travparse", version, about = "Parsing strategies as tree traversals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the words with a grammar and print every tree.
    Parse {
        /// Grammar file, or one of the built-in fixtures G0, G1, GA.
        #[arg(long)]
        grammar: String,
        /// td, bu-naive, lc-naive, bu, lc or oracle.
        #[arg(long)]
        strategy: Strategy,
        /// Keep only trees whose root category unifies with this term.
        #[arg(long)]
        root: Option<String>,
        #[arg(long, default_value_t = travparse::engine::DEFAULT_BUDGET)]
        budget: u64,
        /// Indent trees instead of printing them on one line.
        #[arg(long)]
        pretty: bool,
        words: Vec<String>,
    },
    /// Read a tree term from standard input and print its labels in order.
    Traverse {
        #[arg(long)]
        order: Order,
    },
    /// Print every tree whose traversal is the given labels.
    Invert {
        #[arg(long)]
        order: Order,
        labels: Vec<String>,
    },
    /// Print the Greibach-form transform of a naive program.
    Transform {
        /// naive_bu or naive_lc.
        #[arg(long)]
        program: Builtin,
        #[arg(long)]
        improve: bool,
    },
    /// Partially execute a parser program against a grammar.
    Specialize {
        #[arg(long)]
        grammar: String,
        /// egnf_bu or egnf_lc, or any built-in program name.
        #[arg(long, value_parser = parse_program)]
        program: Builtin,
        /// Leave word/2 goals in place.
        #[arg(long)]
        keep_lexicon: bool,
        #[arg(long, default_value = "licensed")]
        resolution: Resolution,
    },
    /// Specialize both improved programs to a grammar and compare them.
    Compare {
        #[arg(long)]
        grammar: String,
        #[arg(long, default_value = "licensed")]
        resolution: Resolution,
    },
}

/// The improved programs are the ones worth specializing, so the short
/// names refer to them.
fn parse_program(s: &str) -> Result<Builtin, String> {
    match s {
        "egnf_bu" => Ok(Builtin::EgnfBuImproved),
        "egnf_lc" => Ok(Builtin::EgnfLcImproved),
        other => other.parse().map_err(|e: travparse::clause::UnknownProgram| e.to_string()),
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(spec: &str) -> Result<Grammar, Failure> {
    let text = match spec {
        "G0" | "g0" if !Path::new(spec).exists() => fixtures::G0.to_string(),
        "G1" | "g1" if !Path::new(spec).exists() => fixtures::G1.to_string(),
        "GA" | "ga" if !Path::new(spec).exists() => fixtures::GA.to_string(),
        path => std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read grammar {path}: {e}")))?,
    };
    load_grammar(&text).map_err(|e| Failure(format!("grammar {spec}: {e}")))
}

fn atoms(words: &[String]) -> Result<Vec<Term>, Failure> {
    words
        .iter()
        .map(|w| {
            let t = read_term(w).map_err(|e| Failure(format!("bad word `{w}`: {e}")))?;
            if t.is_atom() {
                Ok(t)
            } else {
                Err(Failure(format!("bad word `{w}`: words are atoms")))
            }
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Parse { grammar, strategy, root, budget, pretty, words } => {
            let g = load(&grammar)?;
            let mut opts = ParseOptions::default().with_budget(budget);
            if let Some(root) = root {
                opts = opts.with_root(read_term(&root).map_err(|e| Failure(format!("bad root `{root}`: {e}")))?);
            }
            let result = parse(&g, &atoms(&words)?, strategy, &opts)?;
            let mut trees: Vec<_> = result.trees.iter().map(|t| (canonicalize(t).to_term().to_string(), t)).collect();
            trees.sort_by(|a, b| a.0.cmp(&b.0));
            for (text, tree) in &trees {
                if pretty {
                    println!("{}", tree.pretty());
                } else {
                    println!("{text}");
                }
            }
            println!("trees={} complete={}", trees.len(), result.complete);
            Ok(if !result.complete {
                3
            } else if trees.is_empty() {
                2
            } else {
                0
            })
        }
        Command::Traverse { order } => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            let term = read_term(text.trim().trim_end_matches('.'))?;
            let tree = TravTree::from_term(&term).ok_or_else(|| Failure(format!("`{term}` is not a tree")))?;
            let labels: Vec<String> = traverse(order, &tree).iter().map(Term::to_string).collect();
            println!("{}", labels.join(" "));
            Ok(0)
        }
        Command::Invert { order, labels } => {
            let labels = labels
                .iter()
                .map(|l| read_term(l).map_err(|e| Failure(format!("bad label `{l}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let trees = invert(order, &labels);
            for t in &trees {
                println!("{}", t.to_term());
            }
            println!("trees={}", trees.len());
            Ok(0)
        }
        Command::Transform { program, improve: improved } => {
            let mut p = egnf_transform(&builtin_program(program))?;
            if improved {
                p = improve(&p)?;
            }
            print!("{p}");
            Ok(0)
        }
        Command::Specialize { grammar, program, keep_lexicon, resolution } => {
            let g = load(&grammar)?;
            let opts = SpecializeOptions { unfold_lexicon: !keep_lexicon, resolution };
            print!("{}", partially_execute(&builtin_program(program), &g, &opts));
            Ok(0)
        }
        Command::Compare { grammar, resolution } => {
            let id = specialization_identity(&load(&grammar)?, resolution);
            println!("identical={}", id.identical);
            if !id.identical {
                print!("{}", id.diff);
            }
            Ok(if id.identical { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
