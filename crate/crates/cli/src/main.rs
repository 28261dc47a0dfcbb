//! Command line front end: built-in demonstration cases, scenario analysis,
//! randomized bound sweeps, and SVG rendering of verified cycles.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pwcycle_core::builtin::BuiltinCase;
use pwcycle_core::plot::render_svg;
use pwcycle_core::report::{run_builtin, run_scenario, Report, RunError};
use pwcycle_core::scenario::{Scenario, ScenarioError};
use pwcycle_core::sweep::{sweep, FamilyTag};
use pwcycle_core::verify::{VerifyError, VerifyOptions};

const EXIT_OK: u8 = 0;
const EXIT_SCHEMA: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pwcycle",
    about = "Finds and certifies crossing limit cycles of planar piecewise systems split by x = 0",
    version
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Residual tolerance for accepting algebraic candidates.
    #[arg(long, global = true, value_name = "TOL")]
    tol_algebraic: Option<f64>,
    /// Endpoint tolerance for flow closure of each half arc.
    #[arg(long, global = true, value_name = "TOL")]
    tol_closure: Option<f64>,
    /// Emit compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Emit indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a stored demonstration case (prop1..prop5).
    Builtin {
        /// Case identifier: prop1, prop2, prop3, prop4, or prop5.
        id: String,
        /// Write the report here instead of stdout.
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Analyze a scenario JSON file.
    Analyze {
        path: PathBuf,
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Random bound sweep over a family pair.
    Sweep {
        /// Family pair, e.g. "Lc,S2" or "S2,S2".
        #[arg(long, value_name = "A,B")]
        pair: String,
        /// Number of random instances.
        #[arg(short = 'n', long = "count", default_value_t = 200)]
        n: usize,
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render the verified cycles of a report as an SVG figure.
    Plot {
        report: PathBuf,
        #[arg(long, short = 'o', value_name = "FILE")]
        out: PathBuf,
    },
}

impl GlobalOpts {
    fn verify_options(&self) -> VerifyOptions {
        let mut opts = VerifyOptions::default();
        if let Some(t) = self.tol_algebraic {
            opts.solve.residual_tol = t;
        }
        if let Some(t) = self.tol_closure {
            opts.closure_tol = t;
        }
        opts
    }

    fn to_json<T: serde::Serialize>(&self, value: &T) -> String {
        if self.pretty {
            serde_json::to_string_pretty(value).expect("report serialization")
        } else {
            serde_json::to_string(value).expect("report serialization")
        }
    }
}

fn print_stdout(text: &str) -> Result<(), String> {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}") {
        Ok(()) => Ok(()),
        // A closed pipe (e.g. `| head`) is not an error for the producer.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(format!("cannot write to stdout: {e}")),
    }
}

fn emit(global: &GlobalOpts, report: &Report, out: Option<&PathBuf>) -> Result<(), String> {
    let text = global.to_json(report);
    match out {
        Some(path) => fs::write(path, text.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => print_stdout(&text),
    }
}

fn exit_for_run_error(e: &RunError) -> u8 {
    match e {
        RunError::Scenario(_) => EXIT_SCHEMA,
        RunError::Verify(VerifyError::Inconsistency(_)) => EXIT_INTERNAL,
        RunError::Verify(VerifyError::Closing(_)) => EXIT_INTERNAL,
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = cli.global.verify_options();
    match &cli.command {
        Command::Builtin { id, out } => {
            let Some(case) = BuiltinCase::from_id(id) else {
                return fail(
                    EXIT_SCHEMA,
                    format!("unknown builtin {id:?}; expected prop1..prop5"),
                );
            };
            match run_builtin(case, &opts) {
                Ok(report) => match emit(&cli.global, &report, out.as_ref()) {
                    Ok(()) => ExitCode::from(EXIT_OK),
                    Err(e) => fail(EXIT_SCHEMA, e),
                },
                Err(e) => fail(exit_for_run_error(&e), e),
            }
        }
        Command::Analyze { path, out } => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_SCHEMA, format!("cannot read {}: {e}", path.display())),
            };
            let scenario = match Scenario::parse_str(&text) {
                Ok(s) => s,
                Err(e @ ScenarioError::Schema { .. }) => return fail(EXIT_SCHEMA, e),
                Err(e) => return fail(EXIT_SCHEMA, e),
            };
            match run_scenario(&scenario, &opts) {
                Ok(report) => match emit(&cli.global, &report, out.as_ref()) {
                    Ok(()) => ExitCode::from(EXIT_OK),
                    Err(e) => fail(EXIT_SCHEMA, e),
                },
                Err(e) => fail(exit_for_run_error(&e), e),
            }
        }
        Command::Sweep { pair, n, seed } => {
            let Some((a, b)) = pair.split_once(',') else {
                return fail(EXIT_SCHEMA, format!("--pair expects \"A,B\", got {pair:?}"));
            };
            let (Some(a), Some(b)) = (FamilyTag::parse(a), FamilyTag::parse(b)) else {
                return fail(
                    EXIT_SCHEMA,
                    format!("unknown family in pair {pair:?}; expected Lc, S1, S2, S3 or S4"),
                );
            };
            if *n == 0 {
                return fail(EXIT_SCHEMA, "sweep needs at least one instance");
            }
            let summary = sweep((a, b), *n, *seed, &opts);
            if let Err(e) = print_stdout(&cli.global.to_json(&summary)) {
                return fail(EXIT_SCHEMA, e);
            }
            if summary.within_ceiling {
                ExitCode::from(EXIT_OK)
            } else {
                fail(
                    EXIT_INTERNAL,
                    "sweep exceeded the established cycle-count ceiling",
                )
            }
        }
        Command::Plot { report, out } => {
            let text = match fs::read_to_string(report) {
                Ok(t) => t,
                Err(e) => {
                    return fail(
                        EXIT_SCHEMA,
                        format!("cannot read {}: {e}", report.display()),
                    )
                }
            };
            let parsed: Report = match serde_json::from_str(&text) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_SCHEMA, format!("invalid report JSON: {e}")),
            };
            let svg = match render_svg(&parsed) {
                Ok(svg) => svg,
                Err(e) => return fail(EXIT_INTERNAL, e),
            };
            match fs::write(out, svg.as_bytes()) {
                Ok(()) => ExitCode::from(EXIT_OK),
                Err(e) => fail(EXIT_SCHEMA, format!("cannot write {}: {e}", out.display())),
            }
        }
    }
}
