//! The `qm` command-line front end.
//!
//! Exit status: 0 on success, 1 on a domain error (impossible evidence,
//! unbelieved formula, malformed measure), 2 on a usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::belief::{BeliefError, EpistemicState, RankShift};
use crate::measure::format::{
    parse_measure, parse_partition, save_measure, FormatError, MeasureFile,
};
use crate::measure::{Event, Independence, MeasureError, QuasiMeasure};
use crate::proplang::{eval_event, parse, Formula, ProplangError};
use crate::valuation::{check_axioms, classify, Algebra, ValuationError};

#[derive(Parser, Debug)]
#[command(
    name = "qm",
    version,
    about = "Quasi-measures, cumulative belief states and revision"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the value of a formula.
    Eval {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        formula: String,
    },
    /// Print the conditional value: `cond -f STATE "φ" given "ψ"`.
    Cond {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(num_args = 3, value_names = ["FORMULA", "given", "CONDITION"])]
        args: Vec<String>,
    },
    /// Check conditional independence: `indep -f STATE "φ1" "φ2" ... [given "ψ"]`.
    Indep {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(required = true, num_args = 1..)]
        args: Vec<String>,
    },
    /// Print `yes` if the formula is plainly believed, `no` otherwise.
    Believe {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        formula: String,
    },
    /// Print the entrenchment (value of the complement) of a believed formula.
    Entrench {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        formula: String,
    },
    /// Revise a state by a formula and write the result.
    Revise {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Shift)]
        mode: Mode,
        /// Rank increment for `--mode shift`.
        #[arg(long, default_value = "1")]
        delta: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        formula: String,
    },
    /// Print SP, SH or SR for an algebra kind such as `cumulative z`.
    Classify {
        #[arg(long)]
        algebra: String,
    },
    /// Print the canonical extension of a partition measure.
    Extend {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Print the normalization, additivity and axiom report of a state.
    Validate {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Shift,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ProplangError> for Failure {
    fn from(e: ProplangError) -> Self {
        match e {
            ProplangError::Space(e) => e.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<MeasureError> for Failure {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::Valuation(ValuationError::Parse(_)) => Failure::Usage(e.to_string()),
            MeasureError::TooManyEvents(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<BeliefError> for Failure {
    fn from(e: BeliefError) -> Self {
        match e {
            BeliefError::Proplang(e) => e.into(),
            BeliefError::Measure(e) => e.into(),
            BeliefError::BadShift(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_file(path: &Path) -> Result<MeasureFile, Failure> {
    parse_measure(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_measure(path: &Path) -> Result<QuasiMeasure, Failure> {
    Ok(load_file(path)?.into_measure()?)
}

fn load_state(path: &Path) -> Result<EpistemicState, Failure> {
    Ok(EpistemicState::new(load_measure(path)?)?)
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("in formula {text:?}: {e}")))
}

fn event(m: &QuasiMeasure, text: &str) -> Result<Event, Failure> {
    Ok(eval_event(&formula(text)?, m.space())?)
}

/// Splits `φ1 ... φk [given ψ]` into the formulas and the condition.
fn split_given(args: &[String]) -> Result<(&[String], Option<&str>), Failure> {
    match args.iter().position(|a| a == "given") {
        None => Ok((args, None)),
        Some(i) if i + 2 == args.len() && i > 0 => Ok((&args[..i], Some(&args[i + 1]))),
        Some(_) => Err(Failure::Usage(
            "expected `FORMULA... given CONDITION` with exactly one condition".into(),
        )),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Domain(format!("write failed: {e}"));
    match command {
        Command::Eval { file, formula: f } => {
            let m = load_measure(&file)?;
            let value = m.measure_of(&event(&m, &f)?)?;
            writeln!(out, "{value}").map_err(io)?;
        }
        Command::Cond { file, args } => {
            let (formulas, given) = split_given(&args)?;
            let (Some(cond), [target]) = (given, formulas) else {
                return Err(Failure::Usage(
                    "usage: cond -f STATE FORMULA given CONDITION".into(),
                ));
            };
            let m = load_measure(&file)?;
            let value = m.conditional(&event(&m, target)?, &event(&m, cond)?)?;
            writeln!(out, "{value}").map_err(io)?;
        }
        Command::Indep { file, args } => {
            let (formulas, given) = split_given(&args)?;
            let m = load_measure(&file)?;
            let events = formulas
                .iter()
                .map(|f| event(&m, f))
                .collect::<Result<Vec<_>, _>>()?;
            let condition = match given {
                Some(g) => event(&m, g)?,
                None => m.space().full(),
            };
            match m.independent(&events, &condition)? {
                Independence::Holds => writeln!(out, "yes").map_err(io)?,
                Independence::Fails { subsequence } => {
                    let names: Vec<String> = subsequence
                        .iter()
                        .map(|&i| format!("{:?}", formulas[i]))
                        .collect();
                    writeln!(out, "no (first violated subsequence: {})", names.join(", "))
                        .map_err(io)?;
                }
            }
        }
        Command::Believe { file, formula: f } => {
            let state = load_state(&file)?;
            writeln!(out, "{}", yes_no(state.believes(&formula(&f)?)?)).map_err(io)?;
        }
        Command::Entrench { file, formula: f } => {
            let state = load_state(&file)?;
            writeln!(out, "{}", state.entrenchment(&formula(&f)?)?).map_err(io)?;
        }
        Command::Revise {
            file,
            mode,
            delta,
            output,
            formula: f,
        } => {
            let state = load_state(&file)?;
            let phi = formula(&f)?;
            let revised = match mode {
                Mode::Full => state.revise_full(&phi)?,
                Mode::Shift => {
                    let delta = state
                        .algebra()
                        .parse_rank_shift(&delta)
                        .map_err(|e| Failure::Usage(format!("--delta: {e}")))?;
                    state.revise_shift(&phi, &RankShift::new(state.algebra(), delta)?)?
                }
            };
            save_measure(&output, revised.measure())
                .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", output.display())))?;
            writeln!(out, "wrote {}", output.display()).map_err(io)?;
        }
        Command::Classify { algebra } => {
            let alg: Algebra = algebra
                .parse()
                .map_err(|e: ValuationError| Failure::Usage(e.to_string()))?;
            writeln!(out, "{}", classify(alg)).map_err(io)?;
        }
        Command::Extend { file } => {
            let pm = parse_partition(&read(&file)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let text = crate::measure::format::write_measure(&pm.extend());
            out.write_all(text.as_bytes()).map_err(io)?;
        }
        Command::Validate { file } => {
            let parsed = load_file(&file)?;
            let m = if parsed.normalize {
                parsed.into_measure()?
            } else {
                parsed.into_raw()?
            };
            let mut report = m.validate();
            report.merge(check_axioms(m.algebra(), m.table()));
            write!(out, "{report}").map_err(io)?;
            if !report.passed() {
                return Err(Failure::Domain("validation failed".into()));
            }
        }
    }
    Ok(())
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.code()
        }
    }
}
