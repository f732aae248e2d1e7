//! `spintun`: spectra, tunneling splittings and field scans for
//! single-molecule magnets, written as CSV or JSON tables.

mod commands;
mod table;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use spintun_core::ClusterParams;

use crate::table::{Format, OutputTable};

#[derive(Debug, Parser)]
#[command(
    name = "spintun",
    version,
    about = "Spin tunneling spectra and semiclassical splittings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spin-matrix and angle-model spectra side by side.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        basis: Basis,
        /// Longitudinal fields in Tesla as `start:stop:step` [default: 0].
        #[arg(long, value_parser = parse_grid)]
        fields: Option<Grid>,
    },
    /// Zero-field doublet splittings: exact, angle model and semiclassical.
    Splittings {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        basis: Basis,
        /// Level energies in K at which to evaluate the estimates instead of the doublet means.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_energy)]
        energies: Option<Vec<f64>>,
        /// Which doublet mean is fed to the semiclassical formulas.
        #[arg(long, value_enum, default_value_t = Policy::Reference)]
        energy_policy: Policy,
    },
    /// Ground-doublet gap and asymmetric WKB splitting versus field.
    FieldScan {
        #[command(flatten)]
        common: Common,
        /// Longitudinal fields in Tesla as `start:stop:step` [default: 0:0.05:0.005].
        #[arg(long, value_parser = parse_grid)]
        fields: Option<Grid>,
    },
    /// Potential and effective-mass curves over one period.
    FigureData {
        #[command(flatten)]
        common: Common,
        /// Fields in Tesla as `start:stop:step` [default: 0, matching field, 0.95 x saturation].
        #[arg(long, value_parser = parse_grid)]
        fields: Option<Grid>,
        /// Grid points per curve.
        #[arg(long, default_value_t = 360, value_parser = clap::value_parser!(u32).range(1..))]
        points: u32,
    },
    /// Recompute the published Fe8 numbers and report pass/fail per item.
    Check {
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// JSON parameter file with keys D_K, E_K, two_S, g and optionally mu_B_over_kB_K_per_T [default: Fe8].
    #[arg(long, value_name = "FILE")]
    params: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Omit the timestamp from the metadata so repeated runs are byte-identical.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Debug, Args)]
struct Basis {
    /// Plane-wave cutoff of the angle model [default: max(3 * two_S, 4)].
    #[arg(long, value_parser = clap::value_parser!(u32).range(4..=512))]
    n_max: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Policy {
    Reference,
    Angle,
}

#[derive(Debug, Clone, PartialEq)]
struct Grid(Vec<f64>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| -> Result<f64, String> {
        let x: f64 = t.trim().parse().map_err(|_| format!("`{t}` is not a number"))?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(format!("`{t}` is not finite"))
        }
    };
    match parts.as_slice() {
        [one] => Ok(Grid(vec![num(one)?])),
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step <= 0.0 {
                return Err("step must be positive".into());
            }
            if b < a {
                return Err(format!("grid must be increasing, got {a} > {b}"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err(format!("grid has {count} points, limit is 1000000"));
            }
            Ok(Grid((0..count).map(|i| a + i as f64 * step).collect()))
        }
        _ => Err("expected `start:stop:step` or a single value".into()),
    }
}

fn parse_energy(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a finite number")),
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit status 2.
    Config(String),
    /// The computation itself failed: exit status 1.
    Compute(spintun_core::Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Io(msg) => f.write_str(msg),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<spintun_core::Error> for CliError {
    fn from(e: spintun_core::Error) -> Self {
        match e {
            spintun_core::Error::InvalidParams { .. } => CliError::Config(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

fn load_params(path: Option<&Path>) -> Result<ClusterParams, CliError> {
    let Some(path) = path else {
        return Ok(ClusterParams::fe8());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read parameter file {}: {e}", path.display())))?;
    ClusterParams::from_json_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn metadata(name: &str, params: Option<&ClusterParams>, output: &Output) -> Vec<(String, Value)> {
    let line: Vec<String> = std::env::args().skip(1).collect();
    let mut meta = vec![
        ("tool".to_string(), json!("spintun")),
        ("version".to_string(), json!(env!("CARGO_PKG_VERSION"))),
        ("command".to_string(), json!(name)),
        ("command_line".to_string(), json!(line.join(" "))),
    ];
    if let Some(p) = params {
        meta.push(("params".to_string(), p.to_json_value()));
    }
    if !output.no_timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        meta.push(("timestamp_unix".to_string(), json!(secs)));
    }
    meta
}

fn emit(table: &OutputTable, output: &Output) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Io(format!("cannot write output: {e}"));
    match &output.out {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            table.write(output.format, &mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(output.format, &mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let (name, output, params, mut table) = match &cli.command {
        Command::Spectrum { common, basis, fields } => {
            let p = load_params(common.params.as_deref())?;
            let spec = commands::basis(&p, basis.n_max)?;
            let fields = fields.as_ref().map_or(vec![0.0], |g| g.0.clone());
            let mut t = commands::spectrum(&p, &spec, &fields)?;
            t.metadata.push(("n_max".into(), json!(spec.n_max())));
            ("spectrum", &common.output, Some(p), t)
        }
        Command::Splittings {
            common,
            basis,
            energies,
            energy_policy,
        } => {
            let p = load_params(common.params.as_deref())?;
            let spec = commands::basis(&p, basis.n_max)?;
            let policy = match energy_policy {
                Policy::Reference => spintun_core::analysis::EnergyPolicy::ReferenceMean,
                Policy::Angle => spintun_core::analysis::EnergyPolicy::AngleMean,
            };
            let mut t = commands::splittings(&p, &spec, energies.as_deref(), policy)?;
            t.metadata.push(("n_max".into(), json!(spec.n_max())));
            ("splittings", &common.output, Some(p), t)
        }
        Command::FieldScan { common, fields } => {
            let p = load_params(common.params.as_deref())?;
            let fields = fields
                .as_ref()
                .map_or_else(spintun_core::check::slope_fields, |g| g.0.clone());
            (
                "field-scan",
                &common.output,
                Some(p),
                commands::field_scan(&p, &fields)?,
            )
        }
        Command::FigureData { common, fields, points } => {
            let p = load_params(common.params.as_deref())?;
            let fields = fields.as_ref().map(|g| g.0.clone());
            let t = commands::figure_data(&p, fields, *points as usize)?;
            ("figure-data", &common.output, Some(p), t)
        }
        Command::Check { output } => ("check", output, Some(ClusterParams::fe8()), commands::check()?),
    };
    let mut meta = metadata(name, params.as_ref(), output);
    meta.append(&mut table.metadata);
    table.metadata = meta;
    emit(&table, output)?;

    if name == "check" {
        let failed = table
            .rows
            .iter()
            .filter(|r| r.last() == Some(&table::Cell::from("FAIL")))
            .count();
        if failed > 0 {
            eprintln!("spintun: {failed} of {} checks failed", table.rows.len());
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("spintun: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
