//! `apal`: parse, measure, model-check, reduce and proof-check formulas of
//! arbitrary public announcement logic.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use apal::harness::{self, RandTestConfig};
use apal::{
    bisim_quotient, box_depth, check_derivation, load_model, parse, parse_derivation,
    reduce_to_epistemic, size, truth_set, Formula, KripkeModel,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "apal",
    version,
    about = "Toolkit for arbitrary public announcement logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical rendering and fragment flags
    Parse(FormulaInput),
    /// Print Size and box depth
    Size(FormulaInput),
    /// Decide a formula at one world of a model
    Check {
        model: PathBuf,
        world: String,
        #[command(flatten)]
        formula: FormulaInput,
    },
    /// Print the worlds where a formula holds
    Truthset {
        model: PathBuf,
        #[command(flatten)]
        formula: FormulaInput,
    },
    /// Print the bisimulation quotient blocks
    Bisim { model: PathBuf },
    /// Eliminate announcements from a box-free formula, printing each step
    Reduce(FormulaInput),
    /// Check a derivation file
    Prove { file: PathBuf },
    /// Run the seeded randomized validity suites
    Randtest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

/// A formula given inline or read from a file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct FormulaInput {
    formula: Option<String>,
    /// Read the formula from a file instead
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Read(PathBuf, std::io::Error),
    Formula {
        origin: String,
        text: String,
        error: apal::syntax::ParseError,
    },
    Model(PathBuf, apal::ModelError),
    Derivation(PathBuf, apal::axioms::DerivationError),
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Read(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Formula {
                origin,
                text,
                error,
            } => {
                let line = text.lines().next().unwrap_or("");
                write!(
                    f,
                    "{origin}: {error}\n  {line}\n  {}^",
                    " ".repeat(error.position)
                )
            }
            CliError::Model(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Derivation(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Input(msg) => f.write_str(msg),
        }
    }
}

enum Outcome {
    Success,
    Negative,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Read(path.to_path_buf(), e))
}

impl FormulaInput {
    fn load(&self) -> Result<Formula, CliError> {
        let (origin, text) = match (&self.formula, &self.file) {
            (Some(text), _) => ("formula".to_string(), text.clone()),
            (None, Some(path)) => (path.display().to_string(), read(path)?.trim().to_string()),
            (None, None) => unreachable!("clap requires one input"),
        };
        parse(&text).map_err(|error| CliError::Formula {
            origin,
            text,
            error,
        })
    }
}

fn model(path: &Path) -> Result<KripkeModel, CliError> {
    load_model(&read(path)?).map_err(|e| CliError::Model(path.to_path_buf(), e))
}

fn braces<S: AsRef<str>>(names: &[S]) -> String {
    let inner: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
    format!("{{{}}}", inner.join(", "))
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Parse(input) => {
            let f = input.load()?;
            let flags = f.classify();
            println!("{f}");
            println!(
                "box_free={} announcement_free={} epistemic={}",
                flags.box_free, flags.announcement_free, flags.epistemic
            );
        }
        Command::Size(input) => {
            let f = input.load()?;
            println!("Size={} d_box={}", size(&f), box_depth(&f));
        }
        Command::Check {
            model: path,
            world,
            formula,
        } => {
            let m = model(&path)?;
            let f = formula.load()?;
            let w = m.world_index(&world).ok_or_else(|| {
                CliError::Input(format!("{}: unknown world `{world}`", path.display()))
            })?;
            let holds = truth_set(&m, &f).contains(w);
            println!("{holds}");
            if !holds {
                return Ok(Outcome::Negative);
            }
        }
        Command::Truthset {
            model: path,
            formula,
        } => {
            let m = model(&path)?;
            let f = formula.load()?;
            println!("{}", braces(&m.names_of(&truth_set(&m, &f))));
        }
        Command::Bisim { model: path } => {
            let m = model(&path)?;
            for block in bisim_quotient(&m).named_blocks() {
                println!("{}", braces(&block));
            }
        }
        Command::Reduce(input) => {
            let f = input.load()?;
            let trace = reduce_to_epistemic(&f).map_err(|e| CliError::Input(e.to_string()))?;
            for step in &trace.steps {
                println!("{step}");
            }
            println!("{}", trace.result);
        }
        Command::Prove { file } => {
            let d = parse_derivation(&read(&file)?).map_err(|e| CliError::Derivation(file, e))?;
            let verdict = check_derivation(&d);
            println!("{verdict}");
            if !verdict.is_accept() {
                return Ok(Outcome::Negative);
            }
        }
        Command::Randtest { seed, cases } => {
            let report = harness::run(&RandTestConfig {
                seed,
                cases,
                ..RandTestConfig::default()
            });
            println!("{report}");
            if !report.passed() {
                return Ok(Outcome::Negative);
            }
        }
    }
    Ok(Outcome::Success)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
