//! Command-line front end and the JSON state-file format.
//!
//! Exit codes: 0 on success, 1 for domain errors (invalid state, wrong
//! dimension, bad parameters), 2 for I/O and parse errors.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discord::{
    is_x_structured, optimized_discord, tomographic_discord, xstate_discord, DiscordReport,
    OptimizerConfig, XStateParams, X_STRUCTURE_TOL,
};
use crate::ensembles::{random_density_matrix, random_two_qubit_state, random_xstate, werner_state, Seed};
use crate::entropy::LogBase;
use crate::linalg::{Complex, ComplexMatrix, DensityMatrix, Diagnostics, Tolerances};
use crate::tomography::{bipartite_spin_tomogram, marginals, Direction};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Domain(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Domain(_) => 1,
            Self::Io { .. } | Self::Parse(_) => 2,
        }
    }

    fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

/// On-disk density matrix: `entries[i][j] = [re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    #[serde(default)]
    pub subsystem_dims: Vec<usize>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_matrix(matrix: &ComplexMatrix, subsystem_dims: &[usize]) -> Self {
        let entries = (0..matrix.rows())
            .map(|i| matrix.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self {
            dim: matrix.rows(),
            subsystem_dims: subsystem_dims.to_vec(),
            entries,
        }
    }

    pub fn from_state(rho: &DensityMatrix) -> Self {
        Self::from_matrix(rho.matrix(), rho.subsystem_dims())
    }

    /// The raw matrix, checked for shape only.
    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        if self.dim == 0 || self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(CliError::Parse(format!(
                "entries must form a {0}x{0} array of [re, im] pairs",
                self.dim
            )));
        }
        let data = self
            .entries
            .iter()
            .flatten()
            .map(|&[re, im]| Complex::new(re, im))
            .collect();
        ComplexMatrix::from_vec(self.dim, self.dim, data).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Validates at the state-file tolerance.
    pub fn to_state(&self) -> Result<DensityMatrix, CliError> {
        let m = self.to_matrix()?;
        Ok(DensityMatrix::with_tolerances(m, self.subsystem_dims.clone(), &Tolerances::FILE)?)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// JSON with one matrix row per line; numbers use the shortest
    /// round-trip representation.
    pub fn to_json(&self) -> String {
        let num = |x: f64| serde_json::to_string(&x).expect("finite entries");
        let mut s = String::from("{\n");
        let _ = writeln!(s, "  \"dim\": {},", self.dim);
        let _ = writeln!(
            s,
            "  \"subsystem_dims\": {},",
            serde_json::to_string(&self.subsystem_dims).expect("integers")
        );
        s.push_str("  \"entries\": [\n");
        for (i, row) in self.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|[re, im]| format!("[{}, {}]", num(*re), num(*im))).collect();
            let sep = if i + 1 == self.entries.len() { "" } else { "," };
            let _ = writeln!(s, "    [{}]{sep}", cells.join(", "));
        }
        s.push_str("  ]\n}\n");
        s
    }
}

pub fn read_state_file(path: &Path) -> Result<StateFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    StateFile::parse(&text)
}

pub fn write_state_file(path: &Path, file: &StateFile) -> Result<(), CliError> {
    fs::write(path, file.to_json()).map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Parser)]
#[command(name = "tomodiscord", version, about = "Spin tomograms and tomographic discord of qubit states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a state file holds a valid density matrix.
    Validate { path: PathBuf },
    /// Entropies, mutual informations and tomographic discord of a two-qubit state.
    Discord(DiscordArgs),
    /// Joint spin tomogram of a two-qubit state along two axes.
    Tomogram(TomogramArgs),
    /// Discord along the Werner family, written as CSV.
    SweepWerner(SweepArgs),
    /// Emit a seeded random state file.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct DiscordArgs {
    pub path: PathBuf,
    /// Logarithm base, a real > 1 or `e`.
    #[arg(long, default_value = "2")]
    pub base: LogBase,
    /// Also minimize the joint tomographic entropy over local axes.
    #[arg(long)]
    pub optimize: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid points per angle for the optimizer.
    #[arg(long, default_value_t = 16)]
    pub grid: usize,
    /// Emit the report as one JSON object.
    #[arg(long)]
    pub json: bool,
    /// Skip X-state detection and the closed-form cross-check.
    #[arg(long)]
    pub force_generic: bool,
}

#[derive(Debug, Args)]
pub struct TomogramArgs {
    pub path: PathBuf,
    /// Axis of the first qubit as `theta,phi` in radians.
    #[arg(long, default_value = "0,0", value_parser = parse_angles)]
    pub u1: (f64, f64),
    /// Axis of the second qubit as `theta,phi` in radians.
    #[arg(long, default_value = "0,0", value_parser = parse_angles)]
    pub u2: (f64, f64),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Number of points, uniform in p on [0, 1].
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[arg(long, default_value = "2")]
    pub base: LogBase,
    #[arg(long)]
    pub out: PathBuf,
    /// Grid points per angle for the optimizer.
    #[arg(long, default_value_t = 16)]
    pub grid: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    /// Hilbert–Schmidt random state.
    Ginibre,
    /// Random two-qubit X state.
    Xstate,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Matrix dimension; 4 produces a two-qubit state.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = StateKind::Ginibre)]
    pub kind: StateKind,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_angles(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `theta,phi`, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { path } => cmd_validate(&path, out),
        Command::Discord(args) => cmd_discord(&args, out),
        Command::Tomogram(args) => cmd_tomogram(&args, out),
        Command::SweepWerner(args) => cmd_sweep_werner(&args, out),
        Command::Random(args) => cmd_random(&args, out),
    }
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let file = read_state_file(path)?;
    let matrix = file.to_matrix()?;
    let diag = Diagnostics::of(&matrix)?;
    writeln!(out, "hermiticity residual {:.1e}", diag.hermiticity_residual).map_err(stdout_err)?;
    writeln!(out, "trace deviation {:.1e}", diag.trace_deviation).map_err(stdout_err)?;
    writeln!(out, "minimum eigenvalue {:.6e}", diag.min_eigenvalue).map_err(stdout_err)?;
    match file.to_state() {
        Ok(_) => {
            writeln!(out, "valid").map_err(stdout_err)?;
            Ok(())
        }
        Err(e) => {
            writeln!(out, "invalid: {e}").map_err(stdout_err)?;
            Err(e)
        }
    }
}

fn load_two_qubit_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let rho = read_state_file(path)?.to_state()?;
    if rho.subsystem_dims() != [2, 2] {
        return Err(crate::Error::DimensionMismatch {
            expected: "4x4 state with subsystem_dims [2, 2]".into(),
            found: format!("dim {} with subsystem_dims {:?}", rho.dim(), rho.subsystem_dims()),
        }
        .into());
    }
    Ok(rho)
}

/// `--json` payload: every report field plus the X-state cross-check.
#[derive(Debug, Serialize)]
pub struct DiscordOutput {
    #[serde(flatten)]
    pub report: DiscordReport,
    pub x_state: bool,
    pub closed_form_discord: Option<f64>,
}

pub fn discord_output(rho: &DensityMatrix, args: &DiscordArgs) -> Result<DiscordOutput, CliError> {
    let report = if args.optimize {
        let config = OptimizerConfig {
            grid_theta: args.grid,
            grid_phi: args.grid,
            seed: Seed(args.seed),
            ..Default::default()
        };
        optimized_discord(rho, args.base, &config)?
    } else {
        tomographic_discord(rho, args.base)?
    };
    let x_params = if args.force_generic {
        None
    } else {
        XStateParams::from_density_matrix(rho, X_STRUCTURE_TOL)
    };
    let closed_form_discord = match x_params {
        Some(x) => Some(xstate_discord(&x, args.base)?.discord),
        None => None,
    };
    Ok(DiscordOutput {
        report,
        x_state: !args.force_generic && is_x_structured(rho.matrix(), X_STRUCTURE_TOL),
        closed_form_discord,
    })
}

/// Six decimals, without a sign on values that round to zero.
fn fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

pub fn cmd_discord(args: &DiscordArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rho = load_two_qubit_state(&args.path)?;
    let output = discord_output(&rho, args)?;
    if args.json {
        let text = serde_json::to_string(&output).map_err(|e| CliError::Parse(e.to_string()))?;
        writeln!(out, "{text}").map_err(stdout_err)?;
        return Ok(());
    }
    let r = &output.report;
    let mut s = String::new();
    let _ = writeln!(s, "log base  {}", r.base);
    for (name, v) in [
        ("S1", r.s1),
        ("S2", r.s2),
        ("S12", r.s12),
        ("H1", r.h1),
        ("H2", r.h2),
        ("H12", r.h12),
        ("I", r.vn_mutual),
        ("Itomo", r.tomo_mutual),
    ] {
        let _ = writeln!(s, "{name:<9} {}", fixed6(v));
    }
    let _ = writeln!(s, "D = {}", fixed6(r.discord));
    if let Some(closed) = output.closed_form_discord {
        let _ = writeln!(s, "X state detected");
        let _ = writeln!(s, "D (closed form) = {}", fixed6(closed));
        let _ = writeln!(s, "D (generic)     = {}", fixed6(r.discord));
    }
    if let Some(opt) = &r.optimized {
        let a = opt.argmin_angles;
        let _ = writeln!(s, "D_opt = {}", fixed6(opt.discord_opt));
        let _ = writeln!(
            s,
            "argmin (theta1, phi1, theta2, phi2) = ({:.6}, {:.6}, {:.6}, {:.6})",
            a[0], a[1], a[2], a[3]
        );
        let _ = writeln!(s, "evaluations {}", opt.evaluations);
    }
    if r.clamped_eigenvalues {
        let _ = writeln!(s, "note: negative eigenvalues within tolerance were clamped to zero");
    }
    if r.degenerate_marginal {
        let _ = writeln!(s, "note: degenerate marginal spectrum; D depends on the chosen eigenbasis");
    }
    out.write_all(s.as_bytes()).map_err(stdout_err)
}

pub fn cmd_tomogram(args: &TomogramArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let n1 = Direction::new(args.u1.0, args.u1.1)?;
    let n2 = Direction::new(args.u2.0, args.u2.1)?;
    let rho = load_two_qubit_state(&args.path)?;
    let t = bipartite_spin_tomogram(&rho, n1, n2)?;
    let (m1, m2) = marginals(&t)?;
    let labels = ["+1/2", "-1/2"];
    let mut s = String::new();
    for (idx, p) in t.probabilities().iter().enumerate() {
        let _ = writeln!(s, "omega({},{}) = {p:.12}", labels[idx / 2], labels[idx % 2]);
    }
    let fmt = |v: &[f64]| v.iter().map(|p| format!("{p:.12}")).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "marginal 1: {}", fmt(m1.probabilities()));
    let _ = writeln!(s, "marginal 2: {}", fmt(m2.probabilities()));
    out.write_all(s.as_bytes()).map_err(stdout_err)
}

/// One row of the Werner sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    #[serde(rename = "S12")]
    pub s12: f64,
    #[serde(rename = "H12")]
    pub h12: f64,
    #[serde(rename = "I")]
    pub vn_mutual: f64,
    #[serde(rename = "Itomo")]
    pub tomo_mutual: f64,
    #[serde(rename = "D")]
    pub discord: f64,
    #[serde(rename = "D_opt")]
    pub discord_opt: f64,
}

pub fn werner_sweep(steps: usize, base: LogBase, config: &OptimizerConfig) -> Result<Vec<SweepRow>, CliError> {
    if steps < 2 {
        return Err(crate::Error::InvalidParameter(format!("--steps must be at least 2, got {steps}")).into());
    }
    (0..steps)
        .map(|i| {
            let p = i as f64 / (steps - 1) as f64;
            let r = optimized_discord(&werner_state(p)?, base, config)?;
            let opt = r.optimized.expect("optimized report");
            Ok(SweepRow {
                p,
                s12: r.s12,
                h12: r.h12,
                vn_mutual: r.vn_mutual,
                tomo_mutual: r.tomo_mutual,
                discord: r.discord,
                discord_opt: opt.discord_opt,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Parse(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Parse(e.to_string()))
}

pub fn cmd_sweep_werner(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = OptimizerConfig {
        grid_theta: args.grid,
        grid_phi: args.grid,
        seed: Seed(args.seed),
        ..Default::default()
    };
    let rows = werner_sweep(args.steps, args.base, &config)?;
    fs::write(&args.out, sweep_csv(&rows)?).map_err(|e| CliError::io(&args.out, e))?;
    writeln!(out, "wrote {} rows to {}", rows.len(), args.out.display()).map_err(stdout_err)
}

pub fn cmd_random(args: &RandomArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let seed = Seed(args.seed);
    let rho = match args.kind {
        StateKind::Xstate => random_xstate(seed).to_density_matrix()?,
        StateKind::Ginibre if args.dim == 4 => random_two_qubit_state(seed)?,
        StateKind::Ginibre => random_density_matrix(args.dim, seed)?,
    };
    let file = StateFile::from_state(&rho);
    match &args.out {
        Some(path) => write_state_file(path, &file),
        None => out.write_all(file.to_json().as_bytes()).map_err(stdout_err),
    }
}
