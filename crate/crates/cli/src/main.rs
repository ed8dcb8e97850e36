//! `helly`: command-line front end. Every run prints one JSON report (or a
//! table with `--pretty`) and exits with 0 (verified), 2 (refuted),
//! 3 (budget exceeded) or 4 (bad input).

mod commands;
mod document;
mod pretty;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{CmdResult, Failure, GenerateKind};
use document::{digest, ReportDocument, Status, SCHEMA_VERSION};
use helly_core::helly::BetaFormula;
use helly_core::Budget;

/// Environment variable with budget overrides, e.g. `family=24,nodes=10000000`.
const BUDGET_ENV: &str = "HELLY_BUDGET";

#[derive(Parser)]
#[command(name = "helly", version, about = "Exact colorful Helly toolkit")]
struct Cli {
    /// Render a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for every random choice (directions, placements).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Budget overrides, applied after the environment variable.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every rainbow selection has a common point.
    CheckCh { family: PathBuf },
    /// Find a color class with a common point (needs d+1 classes).
    IntersectingClass { family: PathBuf },
    /// Exact piercing number of one class, or of all sets.
    Pierce {
        family: PathBuf,
        #[arg(long)]
        class: Option<usize>,
    },
    /// Line cover number of planar sets.
    LineCover {
        family: PathBuf,
        #[arg(long)]
        class: Option<usize>,
    },
    /// Two classes with all pairs meeting: point or hyperplane alternative.
    TwoColor { family: PathBuf },
    /// Planar two-class dichotomy: one point or at most four lines.
    D2Dichotomy { family: PathBuf },
    /// Piercing and flat-cover numbers for every split of the classes.
    DichotomyReport {
        family: PathBuf,
        #[arg(long, default_value_t = 1)]
        f_budget: usize,
        #[arg(long, default_value_t = 4)]
        g_budget: usize,
    },
    /// Point or hyperplane thresholds when an alpha fraction of pairs meet.
    FractionalTwoColor {
        family: PathBuf,
        #[arg(long)]
        alpha: String,
        /// Bits of precision for the default fractional Helly bound.
        #[arg(long, default_value_t = 64)]
        beta_bits: u32,
        /// Use `factor * alpha` as the fractional Helly bound instead.
        #[arg(long)]
        beta_linear: Option<String>,
    },
    /// Duality sandwich of a hypergraph.
    Duality {
        hypergraph: PathBuf,
        #[arg(long, default_value_t = 1)]
        b: usize,
    },
    /// Generate a family.
    Generate {
        #[command(subcommand)]
        kind: GenerateCommand,
    },
    /// Re-verify a generated construction and its lower bounds.
    VerifyLowerBound { construction: PathBuf },
    /// Check the relative-interior property of a simplex construction.
    RelintCheck { construction: PathBuf },
    /// A class crossed by one line parallel to a random direction.
    GenericLine { family: PathBuf },
    /// Re-verify every certificate in a report.
    Recheck { report: PathBuf },
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Axis-orthogonal hyperplanes plus the whole space.
    Figure1 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Triangles and segments in the plane.
    Planar {
        #[arg(long)]
        f: usize,
    },
    /// Cones and shifted facets of a simplex.
    Simplex {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        f: usize,
    },
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::CheckCh { .. } => "check-ch".into(),
            Command::IntersectingClass { .. } => "intersecting-class".into(),
            Command::Pierce { .. } => "pierce".into(),
            Command::LineCover { .. } => "line-cover".into(),
            Command::TwoColor { .. } => "two-color".into(),
            Command::D2Dichotomy { .. } => "d2-dichotomy".into(),
            Command::DichotomyReport { .. } => "dichotomy-report".into(),
            Command::FractionalTwoColor { .. } => "fractional-two-color".into(),
            Command::Duality { .. } => "duality".into(),
            Command::Generate { kind } => match kind {
                GenerateCommand::Figure1 { .. } => "generate figure1".into(),
                GenerateCommand::Planar { .. } => "generate planar".into(),
                GenerateCommand::Simplex { .. } => "generate simplex".into(),
            },
            Command::VerifyLowerBound { .. } => "verify-lower-bound".into(),
            Command::RelintCheck { .. } => "relint-check".into(),
            Command::GenericLine { .. } => "generic-line".into(),
            Command::Recheck { .. } => "recheck".into(),
        }
    }

    fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::CheckCh { family }
            | Command::IntersectingClass { family }
            | Command::Pierce { family, .. }
            | Command::LineCover { family, .. }
            | Command::TwoColor { family }
            | Command::D2Dichotomy { family }
            | Command::DichotomyReport { family, .. }
            | Command::FractionalTwoColor { family, .. }
            | Command::GenericLine { family } => Some(family),
            Command::Duality { hypergraph, .. } => Some(hypergraph),
            Command::VerifyLowerBound { construction } | Command::RelintCheck { construction } => Some(construction),
            Command::Recheck { report } => Some(report),
            Command::Generate { .. } => None,
        }
    }

    fn uses_seed(&self) -> bool {
        matches!(
            self,
            Command::GenericLine { .. }
                | Command::Generate {
                    kind: GenerateCommand::Planar { .. } | GenerateCommand::Simplex { .. }
                }
        )
    }
}

fn budget(cli: &Cli) -> Result<Budget, Failure> {
    let mut b = Budget::default();
    if let Ok(text) = std::env::var(BUDGET_ENV) {
        b = b.with_overrides(&text)?;
    }
    if let Some(text) = &cli.budget {
        b = b.with_overrides(text)?;
    }
    Ok(b)
}

fn run(cli: &Cli, bytes: &[u8]) -> CmdResult {
    let budget = budget(cli)?;
    let family = || commands::load_family(bytes).map(|(f, _)| f);
    match &cli.command {
        Command::CheckCh { .. } => commands::check_ch_cmd(&family()?, &budget),
        Command::IntersectingClass { .. } => commands::intersecting_class_cmd(&family()?, &budget),
        Command::Pierce { class, .. } => commands::pierce_cmd(&family()?, *class, &budget),
        Command::LineCover { class, .. } => commands::line_cover_cmd(&family()?, *class, &budget),
        Command::TwoColor { .. } => commands::two_color_cmd(&family()?),
        Command::D2Dichotomy { .. } => commands::d2_dichotomy_cmd(&family()?),
        Command::DichotomyReport { f_budget, g_budget, .. } => {
            commands::dichotomy_report_cmd(&family()?, *f_budget, *g_budget, &budget)
        }
        Command::FractionalTwoColor {
            alpha,
            beta_bits,
            beta_linear,
            ..
        } => {
            let alpha = commands::parse_q(alpha, "alpha")?;
            let beta = match beta_linear {
                Some(f) => BetaFormula::Linear {
                    factor: commands::parse_q(f, "beta factor")?,
                },
                None => BetaFormula::RootDefault { bits: *beta_bits },
            };
            commands::fractional_cmd(&family()?, &alpha, beta, &budget)
        }
        Command::Duality { b, .. } => commands::duality_cmd(bytes, *b, &budget),
        Command::Generate { kind } => {
            let kind = match kind {
                GenerateCommand::Figure1 { d, n } => GenerateKind::Figure1 { d: *d, n: *n },
                GenerateCommand::Planar { f } => GenerateKind::Planar { f: *f },
                GenerateCommand::Simplex { d, f } => GenerateKind::Simplex { d: *d, f: *f },
            };
            commands::generate_cmd(kind, cli.seed, &budget)
        }
        Command::VerifyLowerBound { .. } => commands::verify_lower_bound_cmd(bytes, &budget),
        Command::RelintCheck { .. } => commands::relint_cmd(bytes),
        Command::GenericLine { .. } => commands::generic_line_cmd(&family()?, cli.seed, &budget),
        Command::Recheck { .. } => commands::recheck_cmd(bytes),
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = cli.command.name();
    let read = match cli.command.input() {
        Some(path) => std::fs::read(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display()))),
        None => Ok(Vec::new()),
    };
    let digest_input = match (&read, cli.command.input()) {
        (Ok(bytes), Some(_)) => digest(bytes),
        _ => digest(format!("{name} {:?}", std::env::args().skip(1).collect::<Vec<_>>()).as_bytes()),
    };
    let result = read.and_then(|bytes| run(&cli, &bytes));
    let mut report = ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: name,
        input_digest: digest_input,
        seed: cli.command.uses_seed().then_some(cli.seed),
        status: Status::Verified,
        exit_code: 0,
        results: serde_json::Value::Null,
        certificates: Vec::new(),
        upper_bound_only: Vec::new(),
        log: Vec::new(),
        error: None,
        wall_time_ms: 0,
    };
    match result {
        Ok(out) => {
            report.status = out.status;
            report.results = out.results;
            report.certificates = out.certificates;
            report.upper_bound_only = out.upper_bound_only;
            report.log = out.log;
        }
        Err(f) => {
            report.status = f.status();
            report.error = Some(f.message());
        }
    }
    report.exit_code = report.status.exit_code();
    report.wall_time_ms = start.elapsed().as_millis();
    let text = if cli.pretty {
        pretty::render(&report)
    } else {
        serde_json::to_string(&report).expect("reports serialize") + "\n"
    };
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = std::io::stdout().write_all(text.as_bytes());
    std::process::exit(report.exit_code);
}
