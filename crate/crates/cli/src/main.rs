//! `latsemi`: every library operation behind a subcommand, JSON in and out.
//!
//! Exit codes: 0 success, 2 invalid input or failed precondition, 3 budget
//! exceeded.

mod input;
mod ops;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latsemi::{Budget, Error};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "latsemi", version, about = "Lattices, orders and ideal classes in commutative Q-algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// JSON input file ("-" reads standard input).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Inline JSON input.
    #[arg(long, global = true)]
    pub json: Option<String>,
    /// Polynomial f selecting A_f = Q[t]/(f), e.g. "t^2+5".
    #[arg(long, global = true)]
    pub poly: Option<String>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized operations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for enumeration sweeps (results are merged in a fixed order).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest finite quotient ring or local search space.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_quotient: u64,
    /// Search-node cap for lattice enumeration.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_enumeration: usize,
    /// Coefficient box for ε-searches outside the decisive domain.
    #[arg(long, global = true, default_value_t = 50)]
    pub eps_box: u64,
    /// Add wall-clock time ("timing_ms") to the output.
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Global {
    pub fn budget(&self) -> Budget {
        Budget { quotient: self.max_quotient, enumeration: self.max_enumeration, eps_box: self.eps_box }
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Structure of an algebra: input {"algebra"} or --poly.
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Lattice arithmetic.
    Lattice {
        #[command(subcommand)]
        op: LatticeCmd,
    },
    /// The lattice semigroup: invertibility and equivalences.
    Semigroup {
        #[command(subcommand)]
        op: SemigroupOp,
    },
    /// Localization at primes.
    Localize {
        #[command(subcommand)]
        op: LocalizeOp,
    },
    /// Maximal orders, class sets and Picard groups.
    Classify {
        #[command(subcommand)]
        op: ClassifyOp,
    },
    /// Integer matrices with characteristic polynomial f.
    Latmac {
        #[command(subcommand)]
        op: LatmacOp,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum AlgebraOp {
    Inspect,
    Decompose,
    Filtrations,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum LatticeCmd {
    /// Binary and unary operations on {"l1", "l2"}.
    Op {
        #[arg(value_enum)]
        kind: LatticeOpKind,
    },
    /// A random full lattice (uses --seed).
    Random {
        #[arg(long, default_value_t = 3)]
        max_entry: i64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum LatticeOpKind {
    Product,
    Colon,
    Order,
    Dual,
    Index,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum SemigroupOp {
    Invertible,
    Weq,
    Epseq,
    PowerIndex,
    Invertibilize,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum LocalizeOp {
    BadPrimes,
    Glue,
    LocalPrincipal,
    LiftUnit,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum ClassifyOp {
    MaximalOrder,
    Classes,
    Picard,
    Conductor,
    IndexFormula,
    PrfIso,
    Faddeev,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum LatmacOp {
    Companion,
    ToLattice,
    ToMatrix,
    Conjugate,
    Count,
    Semigroup,
}

fn exit_code(e: &Error) -> u8 {
    if e.is_budget() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = input::Input::load(&cli.global).and_then(|inp| ops::run(&cli.cmd, &inp));
    match result {
        Ok(mut v) => {
            if cli.global.timing {
                if let Some(m) = v.as_object_mut() {
                    m.insert("timing_ms".into(), (start.elapsed().as_millis() as u64).into());
                }
            }
            let text = serde_json::to_string(&v).expect("JSON values serialize");
            match &cli.global.output {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text + "\n") {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
                None => println!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
