//! `leonard`: command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input, 2 mathematically inconsistent
//! input (invalid array, rejected pair), 3 a suite check failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use leonard_core::algebra::{Field, Scalar};
use leonard_core::flags::Geometry;
use leonard_core::parameter_array::{
    d4_apply, q_parameter, solve_splits, validate_pa, D4Element, ParameterArray, Solution,
};
use leonard_core::realization::{brackets, realize};
use leonard_core::recognizer::{recognize, Verdict};
use leonard_core::suite::io;
use leonard_core::suite::{run_suite, Execution, Selection, SuiteOptions};
use leonard_core::Error;

#[derive(Parser)]
#[command(name = "leonard", version, about = "Exact Leonard system toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the five validity conditions of a parameter array.
    Validate { file: PathBuf },
    /// Solve for the split sequences from two eigenvalue sequences and a seed.
    Solve {
        /// Comma-separated eigenvalues theta_0..theta_d.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long = "theta-star", allow_hyphen_values = true)]
        theta_star: String,
        /// The value of phi_1.
        #[arg(long, allow_hyphen_values = true)]
        phi1: String,
        /// Prime modulus; rational arithmetic when omitted.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Write the split-basis matrices, idempotents and switching elements.
    Realize {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also export the four flags and twelve decompositions.
        #[arg(long)]
        flags: bool,
    },
    /// Run the verification suite; one JSON object per line.
    Verify {
        file: PathBuf,
        /// `all`, or a comma list of check keys or key prefixes.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Run checks one at a time.
        #[arg(long)]
        sequential: bool,
        /// Include elapsed times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Apply an element of the dihedral group, e.g. `--word star,down`.
    D4 {
        file: PathBuf,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Decide whether a bidiagonal pair `{"A":..,"A_star":..}` is a Leonard pair.
    Recognize { file: PathBuf },
    /// Print the bracket coefficient table.
    Brackets { file: PathBuf },
    /// List the suite's check keys.
    Checks,
}

/// Errors mapped to exit codes.
enum Failure {
    Malformed(anyhow::Error),
    Inconsistent(String),
    SuiteFailed,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Malformed(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Malformed(anyhow!(e))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_array(path: &Path) -> Result<ParameterArray> {
    let over = io::field_override_from_env()?;
    io::parse_array(&read(path)?, over).with_context(|| format!("parsing {}", path.display()))
}

fn require_valid(arr: &ParameterArray) -> Result<(), Failure> {
    let rep = validate_pa(arr);
    match rep.first_failure() {
        None => Ok(()),
        Some(c) => {
            println!("{}", io::validity_json(&rep));
            Err(Failure::Inconsistent(format!("array is not valid: {c} fails")))
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn parse_list(field: Field, text: &str) -> Result<Vec<Scalar>> {
    text.split(',').map(|s| field.parse(s).map_err(|e| anyhow!(e))).collect()
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Validate { file } => {
            let arr = load_array(&file)?;
            let rep = validate_pa(&arr);
            println!("{}", io::validity_json(&rep));
            if !rep.is_valid() {
                return Err(Failure::Inconsistent(format!("{} fails", rep.first_failure().unwrap())));
            }
        }
        Command::Solve { theta, theta_star, phi1, modulus } => {
            let field = match (modulus, io::field_override_from_env()?) {
                (Some(p), _) => Field::prime(p).map_err(|e| anyhow!(e))?,
                (None, Some(f)) => f,
                (None, None) => Field::Rational,
            };
            let t = parse_list(field, &theta)?;
            let ts = parse_list(field, &theta_star)?;
            let seed = field.parse(&phi1).map_err(|e| anyhow!(e))?;
            match solve_splits(&t, &ts, &seed) {
                Ok(Solution::Valid(arr)) => println!("{}", io::array_json(&arr)),
                Ok(Solution::Inconsistent(c, arr)) => {
                    let body = serde_json::json!({
                        "inconsistent": c.to_string(),
                        "array": io::ArrayJson::of(&arr),
                    });
                    println!("{}", serde_json::to_string_pretty(&body).expect("json"));
                    return Err(Failure::Inconsistent(format!("solved array fails {c}")));
                }
                Err(e @ (Error::InvalidArray(_) | Error::ZeroSeed)) => {
                    return Err(Failure::Inconsistent(e.to_string()));
                }
                Err(e) => return Err(Failure::Malformed(anyhow!(e))),
            }
        }
        Command::Realize { file, out, flags } => {
            let arr = load_array(&file)?;
            require_valid(&arr)?;
            let real = realize(&arr).map_err(|e| anyhow!(e))?;
            let geo = if flags { Some(Geometry::new(real.system()).map_err(|e| anyhow!(e))?) } else { None };
            emit(&io::realization_json(&real, geo.as_ref()), out.as_deref())?;
        }
        Command::Verify { file, checks, sequential, timings } => {
            let arr = load_array(&file)?;
            let selection = Selection::parse(&checks).map_err(|e| anyhow!(e))?;
            let execution = if sequential { Execution::Sequential } else { Execution::default() };
            let options = SuiteOptions { execution, selection, timings };
            let rep = run_suite(&arr, &options).map_err(|e| anyhow!(e))?;
            print!("{}", io::report_json_lines(&rep));
            if !rep.validity.is_valid() {
                return Err(Failure::Inconsistent("array is not valid; suite skipped".into()));
            }
            if !rep.passed() {
                return Err(Failure::SuiteFailed);
            }
        }
        Command::D4 { file, word } => {
            let arr = load_array(&file)?;
            let g = D4Element::parse_word(&word).map_err(|e| anyhow!(e))?;
            require_valid(&arr)?;
            let img = d4_apply(g, &arr).map_err(|e| anyhow!(e))?;
            println!("{}", io::array_json(&img));
        }
        Command::Recognize { file } => {
            let over = io::field_override_from_env()?;
            let pair = io::parse_pair(&read(&file)?, over).map_err(|e| anyhow!(e))?;
            let verdict = recognize(&pair).map_err(|e| anyhow!(e))?;
            println!("{}", io::verdict_json(&verdict));
            if let Verdict::Reject { reason } = verdict {
                return Err(Failure::Inconsistent(format!("rejected: {reason}")));
            }
        }
        Command::Brackets { file } => {
            let arr = load_array(&file)?;
            require_valid(&arr)?;
            let table = brackets(&arr).map_err(|e| anyhow!(e))?;
            let q = q_parameter(&arr).map_err(|e| anyhow!(e))?;
            println!("{}", io::brackets_json(arr.field(), &table, &q));
        }
        Command::Checks => {
            for k in leonard_core::suite::check_keys() {
                println!("{k}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // Usage errors are malformed input (exit 1), not clap's default 2.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Malformed(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Inconsistent(why)) => {
            eprintln!("{why}");
            ExitCode::from(2)
        }
        Err(Failure::SuiteFailed) => {
            eprintln!("suite failures");
            ExitCode::from(3)
        }
    }
}
