//! Command-line front end. [`run`] parses arguments, performs one
//! subcommand and returns the exit code with everything that should be
//! written to stdout and stderr; `main` only prints.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use redheffer_core::counting::enumerate_contributing_permutations;
use redheffer_core::error::Error;
use redheffer_core::numtheory::{self, moebius_sieve, ordered_factorization_counts};
use redheffer_core::poset::{boolean_lattice, divisor_poset, Poset};
use redheffer_core::redheffer::{det_via_moebius, redheffer_classic, redheffer_general, redheffer_inverse};
use redheffer_core::{count_chains_through_zero, permanent_formula};

mod verify;

pub use verify::{Check, Suite};

#[derive(Parser, Debug)]
#[command(name = "redheffer", version, about = "Exact Redheffer matrices of posets")]
struct Cli {
    /// Reserved for machine-readable output; not implemented.
    #[arg(long, global = true, hide = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classical n x n Redheffer matrix (divisibility)
    Classic {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        what: ClassicOutput,
    },
    /// Redheffer matrix of a poset read from a JSON file
    Poset {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        what: PosetOutput,
    },
    /// Boolean lattice on n atoms
    Boolean {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        what: BooleanOutput,
    },
    /// Print `n<TAB>value` for n = 1..=upto
    Sequence {
        #[arg(long)]
        kind: SequenceKind,
        #[arg(long)]
        upto: usize,
    },
    /// Run a suite of identity cross-checks
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Fitted exponent of perm R_n ~ C n^a over [lo, hi]
    Growth {
        #[arg(long)]
        lo: usize,
        #[arg(long)]
        hi: usize,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct ClassicOutput {
    /// Determinant (the default)
    #[arg(long)]
    det: bool,
    #[arg(long)]
    perm: bool,
    /// Print the matrix as TSV
    #[arg(long)]
    dump_matrix: bool,
    /// Print the exact inverse as TSV
    #[arg(long)]
    inverse: bool,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct PosetOutput {
    /// Determinant (the default)
    #[arg(long)]
    det: bool,
    #[arg(long)]
    perm: bool,
    #[arg(long)]
    inverse: bool,
    /// Chains through the 0 element with their contributing permutations
    #[arg(long)]
    chains: bool,
    /// mu(0, x) for every element x
    #[arg(long)]
    moebius: bool,
    #[arg(long)]
    dump_matrix: bool,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct BooleanOutput {
    /// Determinant (the default)
    #[arg(long)]
    det: bool,
    #[arg(long)]
    perm: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SequenceKind {
    /// perm R_n
    Permanent,
    /// M(n)
    Mertens,
    /// ordered factorizations of n (1 for n = 1)
    Factorizations,
}

/// Result of one invocation.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Module(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            e => Failure::Module(e),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stderr: text, ..Default::default() }
            } else {
                Outcome { code, stdout: text, ..Default::default() }
            };
        }
    };
    let mut out = String::new();
    let result = if cli.json {
        Err(Failure::Usage("--json output is not implemented".into()))
    } else {
        execute(cli.command, &mut out)
    };
    match result {
        Ok(()) => Outcome { code: 0, stdout: out, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: out, stderr: format!("error: {msg}\n") },
        Err(Failure::Module(e)) => Outcome { code: 1, stdout: out, stderr: format!("error: {e}\n") },
        Err(Failure::Verification(msg)) => Outcome { code: 1, stdout: out, stderr: format!("{msg}\n") },
    }
}

fn execute(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Classic { n, what } => classic(n, &what, out),
        Command::Poset { file, what } => {
            let poset = Poset::load(&file)?;
            poset_report(&poset, &what, out)
        }
        Command::Boolean { n, what } => {
            let b = boolean_lattice(n)?;
            if what.perm {
                writeln!(out, "{}", count_chains_through_zero(&b)).unwrap();
            } else {
                writeln!(out, "{}", det_via_moebius(&b)).unwrap();
            }
            Ok(())
        }
        Command::Sequence { kind, upto } => sequence(kind, upto, out),
        Command::Verify { suite, max } => {
            let checks = verify::run_suite(suite, max)?;
            let mut failed = Vec::new();
            for c in &checks {
                writeln!(out, "{c}").unwrap();
                if !c.ok {
                    failed.push(c.name);
                }
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("verification failed: {}", failed.join(", "))))
            }
        }
        Command::Growth { lo, hi } => {
            let slope = numtheory::growth_exponent_estimate(lo, hi)?;
            writeln!(out, "{slope:.6}").unwrap();
            Ok(())
        }
    }
}

fn need_positive(n: usize) -> Result<(), Failure> {
    if n == 0 {
        Err(Failure::Usage("--n must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn classic(n: usize, what: &ClassicOutput, out: &mut String) -> Result<(), Failure> {
    need_positive(n)?;
    if what.perm {
        writeln!(out, "{}", permanent_formula(n)?).unwrap();
    } else if what.dump_matrix {
        out.push_str(&redheffer_classic(n)?.matrix().to_tsv());
    } else if what.inverse {
        out.push_str(&redheffer_inverse(&divisor_poset(n)?)?.to_tsv());
    } else {
        writeln!(out, "{}", numtheory::mertens(n)?).unwrap();
    }
    Ok(())
}

fn poset_report(poset: &Poset, what: &PosetOutput, out: &mut String) -> Result<(), Failure> {
    if what.perm {
        writeln!(out, "{}", count_chains_through_zero(poset)).unwrap();
    } else if what.inverse {
        out.push_str(&redheffer_inverse(poset)?.to_tsv());
    } else if what.chains {
        for perm in enumerate_contributing_permutations(poset)? {
            let names: Vec<&str> = perm
                .cycle()
                .iter()
                .map(|&p| poset.name(poset.at_position(p)))
                .collect();
            writeln!(out, "{}\t{}", names.join(" "), perm.display_with(poset)).unwrap();
        }
    } else if what.moebius {
        let row = poset.moebius_row(poset.zero());
        for &x in poset.order() {
            writeln!(out, "{}\t{}", poset.name(x), row[x]).unwrap();
        }
    } else if what.dump_matrix {
        out.push_str(&redheffer_general(poset).matrix().to_tsv());
    } else {
        writeln!(out, "{}", det_via_moebius(poset)).unwrap();
    }
    Ok(())
}

fn sequence(kind: SequenceKind, upto: usize, out: &mut String) -> Result<(), Failure> {
    if upto == 0 {
        return Err(Failure::Usage("--upto must be at least 1".into()));
    }
    match kind {
        SequenceKind::Permanent | SequenceKind::Factorizations => {
            let table = ordered_factorization_counts(upto)?;
            for n in 1..=upto {
                let v = match kind {
                    SequenceKind::Permanent => table.prefix_sum(n),
                    _ => table.count(n),
                };
                writeln!(out, "{n}\t{v}").unwrap();
            }
        }
        SequenceKind::Mertens => {
            let sieve = moebius_sieve(upto)?;
            for n in 1..=upto {
                writeln!(out, "{n}\t{}", sieve.mertens(n)).unwrap();
            }
        }
    }
    Ok(())
}
