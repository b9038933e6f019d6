//! Batch driver: evaluate combinator terms, transform set-code files, run
//! realizability checks and axiom suites, and emit reproducible reports.
//!
//! Exit codes: 0 all realized/ok, 1 any refutation or code violation,
//! 2 any undecided verdict, 3 usage or parse error.

use std::fs;

use clap::{Args, Parser, Subcommand};

use crate::axioms::{omega_set, package_by_name, package_names, pair_set, union_set};
use crate::formula::parse as parse_formula;
use crate::pca::{nat, parse_term, EvalBudget, Nat, Pca};
use crate::realize::{check_sentence, CheckBudget, Scope, Verdict};
use crate::treeset::{enumerate_hf, fmt_tuple, TreeSet, Tuple};

#[derive(Parser, Debug)]
#[command(name = "czfr", about = "Realizability engine over tree-coded sets", version)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArgs {
    /// Evaluation step budget.
    #[arg(long, default_value_t = 100_000)]
    pub fuel: u64,
    /// Rank bound for unbounded quantifier instances.
    #[arg(long, default_value_t = 2)]
    pub hf_rank: u32,
    /// Width bound for unbounded quantifier instances.
    #[arg(long, default_value_t = 2)]
    pub hf_width: u32,
    /// Size cap on the implication candidate pool.
    #[arg(long, default_value_t = 256)]
    pub realizer_bound: u64,
}

impl BudgetArgs {
    fn to_budget(self) -> CheckBudget {
        CheckBudget {
            fuel: self.fuel,
            hf_rank: self.hf_rank,
            hf_width: self.hf_width,
            realizer_bound: self.realizer_bound,
        }
    }

    fn header(self) -> String {
        format!(
            "budget: fuel={} hf-rank={} hf-width={} realizer-bound={}",
            self.fuel, self.hf_rank, self.hf_width, self.realizer_bound
        )
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Evaluate the application of one closed term to another.
    PcaEval {
        term: String,
        arg: String,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
    },
    /// Validate and transform set-code files.
    Set {
        #[command(subcommand)]
        op: SetOp,
    },
    /// Check one realizer against one formula.
    Check {
        /// Realizer as a closed term (a numeral is a term).
        #[arg(long)]
        realizer: String,
        #[arg(long)]
        formula: String,
        /// Parameter bindings `NAME=path` to set-code files.
        #[arg(long = "env")]
        env: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run a named axiom verification suite.
    Axiom {
        name: String,
        #[arg(long, default_value_t = 2)]
        suite_rank: u32,
        #[arg(long, default_value_t = 2)]
        suite_width: u32,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
        #[arg(long, default_value_t = 256)]
        realizer_bound: u64,
    },
    /// List every set code within the given rank and width bounds.
    EnumerateHf {
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        width: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum SetOp {
    /// Check a file for the tuple-code invariants.
    Validate { file: String },
    /// Print the member labels of a coded set.
    Members { file: String },
    /// Print the subtree under a comma-separated tuple prefix.
    Subtree { file: String, prefix: String },
    /// Build the pair of two coded sets.
    Pair { left: String, right: String },
    /// Build the union of a coded set.
    Union { file: String },
    /// Build the finite von Neumann numeral n.
    Omega { n: u64 },
    /// Print the extensional value of a coded set.
    Decode { file: String },
}

fn load_set(path: &str) -> Result<TreeSet, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    TreeSet::parse_file_str(&text).map_err(|e| format!("{path}: {e}"))
}

fn usage(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    3
}

fn verdict_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Realized => 0,
        Verdict::Refuted => 1,
        Verdict::Unknown(_) => 2,
    }
}

pub fn run(cli: Cli) -> i32 {
    match cli.cmd {
        Cmd::PcaEval { term, arg, fuel } => {
            let mut pca = Pca::new();
            let b = EvalBudget::new(fuel);
            let t = match parse_term(&term).map_err(|e| e.to_string()).and_then(|t| {
                pca.eval_closed(&t, b).map_err(|e| e.to_string())
            }) {
                Ok(n) => n,
                Err(e) => return usage(format!("term: {e}")),
            };
            let a = match parse_term(&arg).map_err(|e| e.to_string()).and_then(|t| {
                pca.eval_closed(&t, b).map_err(|e| e.to_string())
            }) {
                Ok(n) => n,
                Err(e) => return usage(format!("arg: {e}")),
            };
            match pca.apply(&t, &a, b) {
                Ok(v) => {
                    println!("{v}");
                    0
                }
                Err(e) => {
                    eprintln!("evaluation failed: {e}");
                    2
                }
            }
        }
        Cmd::Set { op } => run_set(op),
        Cmd::Check {
            realizer,
            formula,
            env,
            budget,
        } => {
            let mut pca = Pca::new();
            let b = budget.to_budget();
            let e: Nat = match parse_term(&realizer)
                .map_err(|e| e.to_string())
                .and_then(|t| pca.eval_closed(&t, EvalBudget::new(b.fuel)).map_err(|e| e.to_string()))
            {
                Ok(n) => n,
                Err(e) => return usage(format!("realizer: {e}")),
            };
            let f = match parse_formula(&formula) {
                Ok(f) => f,
                Err(e) => return usage(format!("formula: {e}")),
            };
            let mut scope = Scope::new();
            for binding in &env {
                let Some((name, path)) = binding.split_once('=') else {
                    return usage(format!("malformed binding `{binding}`, expected NAME=path"));
                };
                match load_set(path) {
                    Ok(s) => scope = scope.with_param(name, s),
                    Err(e) => return usage(e),
                }
            }
            println!("{}", budget.header());
            match check_sentence(&mut pca, &e, &f, &scope, b, &[]) {
                Ok(r) => {
                    println!("check: {}", r.summary_line());
                    verdict_code(&r.verdict)
                }
                Err(e) => usage(e),
            }
        }
        Cmd::Axiom {
            name,
            suite_rank,
            suite_width,
            fuel,
            realizer_bound,
        } => {
            let budget = BudgetArgs {
                fuel,
                hf_rank: suite_rank,
                hf_width: suite_width,
                realizer_bound,
            };
            let b = budget.to_budget();
            let mut pca = Pca::new();
            let Some(pkg) = package_by_name(&mut pca, &name, b) else {
                return usage(format!(
                    "unknown axiom `{name}`; expected one of: {}",
                    package_names().join(", ")
                ));
            };
            println!("{}", budget.header());
            println!("axiom: {}", pkg.name);
            let results = pkg.run(&mut pca, b);
            let mut code = 0;
            for (instance, r) in &results {
                println!("{instance}: {}", r.summary_line());
                let c = match &r.verdict {
                    Verdict::Unknown(bound) if pkg.allowed_unknown.contains(bound) => 0,
                    v => verdict_code(v),
                };
                code = code.max(c);
            }
            println!(
                "result: {}",
                if code == 0 { "ok" } else if code == 1 { "refuted" } else { "unknown" }
            );
            code
        }
        Cmd::EnumerateHf { rank, width } => {
            for s in enumerate_hf(rank, width) {
                println!("{} = {}", s, s.decode());
            }
            0
        }
    }
}

fn run_set(op: SetOp) -> i32 {
    match op {
        SetOp::Validate { file } => match load_set(&file) {
            Ok(_) => {
                println!("ok");
                0
            }
            Err(e) => {
                eprintln!("invalid: {e}");
                1
            }
        },
        SetOp::Members { file } => match load_set(&file) {
            Ok(s) => {
                for m in s.members() {
                    println!("{m}");
                }
                0
            }
            Err(e) => usage(e),
        },
        SetOp::Subtree { file, prefix } => {
            let s = match load_set(&file) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let tuple: Result<Tuple, _> = prefix
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| p.trim().parse::<u64>().map(nat))
                .collect();
            let tuple = match tuple {
                Ok(t) => t,
                Err(e) => return usage(format!("prefix: {e}")),
            };
            if !s.contains(&tuple) {
                eprintln!("prefix {} is not in the code", fmt_tuple(&tuple));
                return 1;
            }
            print!("{}", s.subtree(&tuple).to_file_string());
            0
        }
        SetOp::Pair { left, right } => match (load_set(&left), load_set(&right)) {
            (Ok(a), Ok(b)) => {
                print!("{}", pair_set(&a, &b).to_file_string());
                0
            }
            (Err(e), _) | (_, Err(e)) => usage(e),
        },
        SetOp::Union { file } => match load_set(&file) {
            Ok(s) => {
                print!("{}", union_set(&s).to_file_string());
                0
            }
            Err(e) => usage(e),
        },
        SetOp::Omega { n } => {
            print!("{}", omega_set(n).to_file_string());
            0
        }
        SetOp::Decode { file } => match load_set(&file) {
            Ok(s) => {
                println!("{}", s.decode());
                0
            }
            Err(e) => usage(e),
        },
    }
}

/// Parse arguments and run, mapping clap's own failures to the usage code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            // help and version are not usage errors
            use clap::error::ErrorKind::*;
            let kind = e.kind();
            let _ = e.print();
            if matches!(kind, DisplayHelp | DisplayVersion) {
                0
            } else {
                3
            }
        }
    }
}
