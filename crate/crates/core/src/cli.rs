//! The `dimalg` command line.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 input or parse error, 2 size limit exceeded, 3 property violation
//! reported by `check`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::check::run_checks;
use crate::enumeration::{Inventory, Limits};
use crate::error::Error;
use crate::graver::{check_circuits_in_graver, GraverMethod};
use crate::json::{self, Bundle, JsonCheck};
use crate::problem::{parse_problem, Problem};
use crate::render::{render_equation_system, render_index_set, render_invariant, PowerForm, Style};
use crate::representations::equation_system;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SIZE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dimalg",
    version,
    about = "Generalized dimensional analysis with exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Problem file (TOML).
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Dependent quantity; overrides the file.
    #[arg(long, global = true)]
    dependent: Option<String>,

    /// Comma-separated quantities barred from basis sets; overrides the file.
    #[arg(long, global = true, value_delimiter = ',')]
    exclude: Option<Vec<String>>,

    /// `completion` or `brute:<bound>`.
    #[arg(long, global = true, default_value = "completion")]
    graver_method: String,

    /// Refuse problems with more quantities than this.
    #[arg(long, global = true, default_value_t = Limits::default().max_n)]
    max_n: usize,

    /// Write representations as `q^b = ...` with integer exponents.
    #[arg(long, global = true)]
    integer_powers: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// Rank of the dimensional matrix.
    Rank,
    /// Basis sets and the reduced invariants of each.
    BasisSets,
    /// Circuit sets and their invariants.
    Circuits,
    /// The circuit basis C(D), one invariant per pair.
    CircuitBasis,
    /// The unified basis U(D).
    UnifiedBasis,
    /// The Graver basis G(D).
    Graver,
    /// Every representation of the relation for the dependent quantity.
    Representations,
    /// Run the internal property checks.
    Check,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Rank => "rank",
            Command::BasisSets => "basis-sets",
            Command::Circuits => "circuits",
            Command::CircuitBasis => "circuit-basis",
            Command::UnifiedBasis => "unified-basis",
            Command::Graver => "graver",
            Command::Representations => "representations",
            Command::Check => "check",
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeCap { .. } => EXIT_SIZE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T, W, E>(argv: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(cli: &Cli) -> Result<Problem, Failure> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| input_error("--input <path> is required"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    let mut problem =
        parse_problem(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let lookup = |name: &str, flag: &str| {
        problem
            .matrix
            .index_of(name)
            .ok_or_else(|| input_error(format!("{flag}: unknown quantity `{name}`")))
    };
    if let Some(dep) = &cli.dependent {
        problem.dependent = Some(lookup(dep, "--dependent")?);
    }
    if let Some(ex) = &cli.exclude {
        let mut idx = ex
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| lookup(s, "--exclude"))
            .collect::<Result<Vec<_>, _>>()?;
        idx.sort_unstable();
        idx.dedup();
        problem.excluded = idx;
    }
    Ok(problem)
}

fn style(format: Format) -> Style {
    match format {
        Format::Latex => Style::Latex,
        _ => Style::Text,
    }
}

fn execute<E: Write>(cli: &Cli, err: &mut E) -> Result<(String, i32), Failure> {
    let problem = load(cli)?;
    let d = &problem.matrix;
    let limits = Limits { max_n: cli.max_n };
    let method: GraverMethod = cli.graver_method.parse()?;
    let form = if cli.integer_powers {
        PowerForm::Integer
    } else {
        PowerForm::Rational
    };
    let st = style(cli.format);
    let json = cli.format == Format::Json;
    let mut bundle = Bundle::new(cli.command.name(), d);
    let mut text = String::new();
    let mut code = EXIT_OK;

    match cli.command {
        Command::Rank => {
            writeln!(text, "{}", d.rank()).unwrap();
        }
        Command::BasisSets => {
            let inv = Inventory::compute(d, &limits)?;
            bundle.basis_sets = Some(json::basis_sets(&inv));
            bundle.systems = Some(inv.systems.iter().map(|s| json::system(s, d)).collect());
            for sys in &inv.systems {
                let invs: Vec<String> = sys
                    .invariants
                    .iter()
                    .map(|(_, i)| render_invariant(i, d, st))
                    .collect();
                writeln!(
                    text,
                    "{}: {}",
                    render_index_set(d, sys.basis.indices(), st),
                    invs.join(", ")
                )
                .unwrap();
            }
        }
        Command::Circuits => {
            let inv = Inventory::compute(d, &limits)?;
            bundle.circuits = Some(json::circuits(&inv));
            bundle.invariants = Some(
                inv.circuit_basis
                    .iter()
                    .map(|p| json::invariant(p.canonical(), d))
                    .collect(),
            );
            for (cs, p) in inv.circuit_sets.iter().zip(&inv.circuit_basis) {
                writeln!(
                    text,
                    "{}: {}",
                    render_index_set(d, cs.indices(), st),
                    render_invariant(p.canonical(), d, st)
                )
                .unwrap();
            }
        }
        Command::CircuitBasis => {
            let inv = Inventory::compute(d, &limits)?;
            bundle.circuits = Some(json::circuits(&inv));
            bundle.invariants = Some(
                inv.circuit_basis
                    .iter()
                    .map(|p| json::invariant(p.canonical(), d))
                    .collect(),
            );
            for p in &inv.circuit_basis {
                writeln!(text, "{}", render_invariant(p.canonical(), d, st)).unwrap();
            }
        }
        Command::UnifiedBasis => {
            let inv = Inventory::compute(d, &limits)?;
            bundle.invariants = Some(
                inv.unified_basis
                    .iter()
                    .map(|u| json::invariant(u, d))
                    .collect(),
            );
            for u in &inv.unified_basis {
                writeln!(text, "{}", render_invariant(u, d, st)).unwrap();
            }
        }
        Command::Graver => {
            let report = check_circuits_in_graver(d, method, &limits)?;
            bundle.graver = Some(json::graver(method, &report.graver, &report, d));
            for g in &report.graver {
                let tag = if report.non_circuit.contains(g) {
                    ""
                } else {
                    "  [circuit]"
                };
                writeln!(
                    text,
                    "{g}  {}{tag}",
                    render_invariant(&g.to_invariant(), d, st)
                )
                .unwrap();
            }
        }
        Command::Representations => {
            let dep = problem
                .dependent
                .ok_or_else(|| input_error("representations needs a dependent quantity (--dependent or `dependent` in the file)"))?;
            limits.check(d)?;
            let sys = equation_system(d, dep, &problem.excluded)?;
            if let Some(w) = sys.warning() {
                let _ = writeln!(err, "warning: {w}");
            }
            bundle.set_equation_system(&sys, d, form);
            text = render_equation_system(&sys, d, st, form);
        }
        Command::Check => {
            let outcomes = run_checks(d, problem.dependent, &problem.excluded, method, &limits)?;
            if outcomes.iter().any(|c| !c.passed) {
                code = EXIT_VIOLATION;
            }
            for c in &outcomes {
                let status = if c.passed { "ok  " } else { "FAIL" };
                writeln!(text, "{status} {:<27} {}", c.name, c.detail).unwrap();
            }
            bundle.check = Some(
                outcomes
                    .into_iter()
                    .map(|c| JsonCheck {
                        name: c.name.to_string(),
                        passed: c.passed,
                        detail: c.detail,
                    })
                    .collect(),
            );
        }
    }
    if json {
        text = bundle.to_json();
    }
    Ok((text, code))
}
