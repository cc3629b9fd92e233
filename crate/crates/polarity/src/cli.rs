//! The `polarity` command line.
//!
//! ```text
//! polarity <command> [--flavor full|closed|open] [--dot out.dot] [--seed N] [--size-cap N] <inputs...>
//! ```
//!
//! Exit status is 0 on success, 1 when a verification fails (with a witness on
//! stderr) and 2 on usage, parse or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::contexts::{concept_lattice, concepts_json, parse_cxt};
use crate::fibration::{diamond, verify_oef_axioms, OefConfig};
use crate::galois::{parse_adjunction_maps, verify_adjunction, Adjunction};
use crate::order::{to_dot, MonotoneMap, Poset, Preorder};
use crate::polar::{check_factorization_system, factorize, Flavor};
use crate::sample;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Verify an adjunction and print its classification.
    Check,
    /// Print a polar factorization of an adjunction.
    Factorize,
    /// Print the diamond diagram of an adjunction.
    Diamond,
    /// Print the poset quotient of a preorder.
    Quotient,
    /// Print the concepts of a `.cxt` context.
    Concepts,
    /// Run the law checkers on seeded random instances.
    Laws,
}

#[derive(Debug, Parser)]
#[command(
    name = "polarity",
    version,
    about = "Polar factorizations of finite Galois connections"
)]
struct Args {
    command: Command,
    #[arg(long, default_value = "full")]
    flavor: Flavor,
    /// Also write a DOT rendering of the resulting order to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest carrier size used by `laws`.
    #[arg(long, default_value_t = 4)]
    size_cap: usize,
    inputs: Vec<PathBuf>,
}

enum Failure {
    /// Bad invocation or unreadable input.
    Usage(String),
    /// The input was read but a check failed.
    Verification(String),
}

type Outcome = std::result::Result<(), Failure>;

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Verification(e.to_string())
    }
}

/// Runs the command line with process streams and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&args, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            1
        }
    }
}

fn single_input(args: &Args) -> std::result::Result<&Path, Failure> {
    match args.inputs.as_slice() {
        [one] => Ok(one),
        other => Err(Failure::Usage(format!(
            "`{}` takes exactly one input, got {}",
            args.command
                .to_possible_value()
                .expect("no skipped variants")
                .get_name(),
            other.len()
        ))),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Outcome {
    let value = serde_json::to_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Failure::Usage(e.to_string()))?;
    text.push('\n');
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn write_dot(args: &Args, poset: &Poset) -> Outcome {
    if let Some(path) = &args.dot {
        std::fs::write(path, to_dot(poset))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn load_adjunction(path: &Path) -> std::result::Result<Adjunction, Failure> {
    let text = read(path)?;
    let (left, right) = parse_adjunction_maps(&text)
        .map_err(|e| Failure::Usage(format!("malformed adjunction in {}: {e}", path.display())))?;
    Ok(verify_adjunction(&left, &right)?)
}

fn dispatch(args: &Args, out: &mut dyn Write) -> Outcome {
    match args.command {
        Command::Check => {
            let g = load_adjunction(single_input(args)?)?;
            emit(out, &g.classify())
        }
        Command::Factorize => {
            let g = load_adjunction(single_input(args)?)?;
            let pf = factorize(&g, args.flavor)?;
            if !pf.identities_verified {
                return Err(Failure::Verification("factorization does not recompose".into()));
            }
            write_dot(args, &Poset::new(pf.axis.clone())?)?;
            emit(out, &pf)
        }
        Command::Diamond => {
            let g = load_adjunction(single_input(args)?)?;
            emit(out, &diamond(&g)?)
        }
        Command::Quotient => {
            let path = single_input(args)?;
            let p: Preorder = serde_json::from_str(&read(path)?)
                .map_err(|e| Failure::Usage(format!("malformed preorder in {}: {e}", path.display())))?;
            let (q, _) = p.quotient();
            write_dot(args, &q)?;
            emit(out, q.preorder())
        }
        Command::Concepts => {
            let path = single_input(args)?;
            let k =
                parse_cxt(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let (lattice, concepts) = concept_lattice(&k)?;
            write_dot(args, &lattice)?;
            emit(out, &concepts_json(&k, &concepts))
        }
        Command::Laws => {
            if !args.inputs.is_empty() {
                return Err(Failure::Usage("`laws` takes no inputs".into()));
            }
            let report = laws(args.seed, args.size_cap);
            emit(out, &report)?;
            if report.factorization_system.all_passed() && report.oef_axioms.all_passed() {
                Ok(())
            } else {
                Err(Failure::Verification("some laws failed; see the report".into()))
            }
        }
    }
}

/// Report printed by `laws`.
#[derive(Debug, Serialize)]
pub struct LawsReport {
    pub seed: u64,
    pub size_cap: usize,
    pub factorization_system: crate::polar::FactorizationSystemReport,
    pub oef_axioms: crate::fibration::OefReport,
}

/// Checks the factorization-system and fibration laws on instances drawn
/// from one generator seeded with `seed`.
pub fn laws(seed: u64, size_cap: usize) -> LawsReport {
    let size_cap = size_cap.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Adjunction> = (0..60)
        .map(|_| sample::random_adjunction(&mut rng, size_cap))
        .collect();
    let squares: Vec<_> = (0..20)
        .map(|_| sample::random_fill_square(&mut rng, size_cap.min(4)))
        .collect();
    let objects: Vec<Preorder> = (0..=size_cap.min(3))
        .map(|n| sample::random_preorder(&mut rng, n))
        .collect();
    let mut maps: Vec<MonotoneMap> = (0..60)
        .map(|_| {
            let a = sample::random_preorder(&mut rng, size_cap);
            let b = sample::random_preorder(&mut rng, size_cap);
            sample::random_monotone(&mut rng, &a, &b)
        })
        .collect();
    maps.extend(samples.iter().flat_map(|g| [g.left().clone(), g.right().clone()]));
    LawsReport {
        seed,
        size_cap,
        factorization_system: check_factorization_system(&samples, &squares),
        oef_axioms: verify_oef_axioms(&maps, &objects, OefConfig::default()),
    }
}
