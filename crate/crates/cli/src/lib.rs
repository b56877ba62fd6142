//! The `binact` command line: one subcommand per analysis, one JSON report
//! on standard output, a human summary on standard error.
//!
//! Exit codes: 0 pass, 1 input or validation error, 2 a structural property
//! was refuted on a concrete instance, 3 budget exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod commands;
pub mod report;
mod resolve;

use report::{Report, EXIT_INPUT, VERSION};

#[derive(Debug, Parser)]
#[command(name = "binact", version, about = "Finite binary G-spaces: validation, orbits, classification")]
pub struct Cli {
    /// Output format of the report.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Largest group order accepted for --group and --space.
    #[arg(long, default_value_t = 64, global = true)]
    pub max_order: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Gallery name or action file.
    #[arg(long)]
    pub space: Option<String>,
    /// Gallery group name or group file.
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the group axioms of --group or the action laws of --space.
    Validate {
        #[command(flatten)]
        target: Target,
    },
    /// Orbit chain and stabilization step at one point.
    Orbit {
        #[arg(long)]
        space: String,
        #[arg(long)]
        point: String,
    },
    /// Stabilization step at every point.
    Steps {
        #[arg(long)]
        space: String,
    },
    /// Predicate flags for one space, or for every action of --group on --carrier points.
    Classify {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        carrier: usize,
        /// Base point for the isotropy subgroup.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = binact_core::morphism::DEFAULT_MAP_BUDGET)]
        budget: u64,
    },
    /// Every action of --group on --carrier points: JSON lines plus a summary.
    Census {
        #[arg(long)]
        group: String,
        #[arg(long)]
        carrier: usize,
        #[arg(long, default_value_t = binact_core::morphism::DEFAULT_MAP_BUDGET)]
        budget: u64,
    },
    /// Classify transitive distributive spaces as coset spaces G|H.
    VerifyThm1 {
        #[command(flatten)]
        target: Target,
        /// With --group: enumerate every action on --carrier points.
        #[arg(long, requires = "group")]
        enumerate: bool,
        #[arg(long, default_value_t = 2)]
        carrier: usize,
        /// Base point (default: the first point).
        #[arg(long)]
        point: Option<String>,
        /// Classify from every base point.
        #[arg(long, conflicts_with = "point")]
        all_bases: bool,
        #[arg(long, default_value_t = binact_core::morphism::DEFAULT_MAP_BUDGET)]
        budget: u64,
    },
    /// Identify free transitive distributive spaces with the model space of the group.
    VerifyThm2 {
        #[command(flatten)]
        target: Target,
        #[arg(long, requires = "group")]
        enumerate: bool,
        #[arg(long, default_value_t = 2)]
        carrier: usize,
        #[arg(long, default_value_t = binact_core::morphism::DEFAULT_MAP_BUDGET)]
        budget: u64,
    },
    /// A biequivariant map G|H -> G|K exists exactly when H is inside K.
    VerifyProp2 {
        #[arg(long)]
        group: String,
        /// Member lists of H then K; omit to check every ordered pair of normal subgroups.
        #[arg(long, num_args = 1)]
        subgroup: Vec<String>,
        #[arg(long, default_value_t = binact_core::morphism::DEFAULT_MAP_BUDGET)]
        budget: u64,
    },
    /// Structural implications over a census and seeded random spaces.
    VerifyImplications {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        carrier: usize,
        /// Additional random actions of --group on --carrier points.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Skip the exhaustive census and check only the random spaces.
        #[arg(long)]
        no_census: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = binact_core::morphism::DEFAULT_MAP_BUDGET)]
        budget: u64,
    },
    /// Named example spaces.
    Gallery {
        #[arg(value_enum)]
        action: GalleryAction,
        #[arg(long, required_if_eq_any = [("action", "construct"), ("action", "export")])]
        space: Option<String>,
        /// With export: also write the action file here.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// The hyperspherical action on R^n.
    Continuum {
        #[arg(value_enum)]
        action: ContinuumAction,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Random targets per subspace for `witness`.
        #[arg(long, default_value_t = 100)]
        reach_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = binact_core::continuum::DEFAULT_TOL_AXIOM)]
        tol_axiom: f64,
        #[arg(long, default_value_t = binact_core::continuum::DEFAULT_TOL_REACH)]
        tol_reach: f64,
        /// Sampling box half-width.
        #[arg(long, default_value_t = 10.0)]
        half_width: f64,
        /// Comma-separated target for `reach`.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        /// Subspace dimension for `witness` (default: every k in 1..=dim).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Slice-map bijections carrying a point onto the points of its orbit.
    Translate {
        #[arg(long)]
        space: String,
        #[arg(long)]
        point: String,
        /// Single target (default: every point of the orbit).
        #[arg(long)]
        to: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GalleryAction {
    List,
    Construct,
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ContinuumAction {
    Axioms,
    Reach,
    Witness,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Orbit { .. } => "orbit",
            Command::Steps { .. } => "steps",
            Command::Classify { .. } => "classify",
            Command::Census { .. } => "census",
            Command::VerifyThm1 { .. } => "verify-thm1",
            Command::VerifyThm2 { .. } => "verify-thm2",
            Command::VerifyProp2 { .. } => "verify-prop2",
            Command::VerifyImplications { .. } => "verify-implications",
            Command::Gallery { .. } => "gallery",
            Command::Continuum { .. } => "continuum",
            Command::Translate { .. } => "translate",
        }
    }
}

/// Parses `args` (including the program name), runs the subcommand, writes
/// the report to `out` and the summary to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { EXIT_INPUT };
            let text = e.render();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut inputs = json!({});
    let outcome = commands::run(&cli, &mut inputs, out);
    let (results, verdict, summary, code) = match outcome {
        Ok(o) => {
            let code = o.exit_code();
            (o.results, o.verdict, o.summary, code)
        }
        Err(e) => {
            let summary = format!("error: {}", e.message);
            (e.results(), e.verdict(), summary, e.code)
        }
    };
    let report = Report {
        command: cli.command.name().to_string(),
        inputs,
        results,
        verdict,
        version: VERSION,
    };
    emit(out, &report);
    let _ = writeln!(err, "{}: {}", cli.command.name(), summary);
    code
}

fn emit(out: &mut dyn Write, value: &impl serde::Serialize) {
    let line = serde_json::to_string(value).expect("reports serialize");
    let _ = writeln!(out, "{line}");
}

pub(crate) fn emit_line(out: &mut dyn Write, value: &Value) {
    emit(out, value);
}
