//! `panelcross` command-line tool.
//!
//! Exit codes: 0 success, 1 usage, 2 bad data, 3 budget exceeded.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use panelcross::analysis::{
    consistent_bounds, consistent_extremal_instance, expected_pcr, expected_pcr_f64, extremal_instance_general,
    monte_carlo_expected_pcr, random_instance, AnalysisError,
};
use panelcross::io::{
    load_instance_path, render_svg, save_instance, tile_to_text, InstanceFormat, IoError, LayoutFile, RenderOptions,
};
use panelcross::layout::{brute_force_pcr_with_budget, crossing_report, optimal_layout, LayoutError, ORACLE_BUDGET};
use panelcross::model::{CombinatorialLayout, ModelError, OpdInstance, SigmaOrdering};
use panelcross::sigma::{
    brute_force_optimal_sigma, compute_tables, export_ilp, optimal_sigma_exact, SigmaError, SigmaSolution,
    SEARCH_BUDGET,
};
use panelcross::tiles::{ordinal_panel_tile, TileError};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "panelcross", version, about = "Minimum-crossing layouts of ordinal panel data")]
struct Cli {
    /// Print results as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for InstanceFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => InstanceFormat::Csv,
            Format::Json => InstanceFormat::Json,
        }
    }
}

#[derive(Args)]
struct Input {
    /// Instance file, or `-` for stdin.
    #[arg(long, short)]
    input: String,
    /// Input format; guessed from the extension by default (stdin: CSV).
    #[arg(long)]
    format: Option<Format>,
}

impl Input {
    fn load(&self) -> Result<OpdInstance, Failure> {
        load_instance_path(&self.input, self.format.map(Into::into)).map_err(|e| match e {
            IoError::Io(e) => Failure::Data(format!("{}: {e}", self.input)),
            e => e.into(),
        })
    }
}

#[derive(Args, Clone, Copy)]
struct Dims {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal layout and its crossing report, as a layout file.
    Layout {
        #[command(flatten)]
        input: Input,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
    /// Panel crossing number and its strong/weak decomposition.
    Pcr {
        #[command(flatten)]
        input: Input,
    },
    /// Render a layout as SVG.
    Draw {
        #[command(flatten)]
        input: Input,
        /// Layout file to draw instead of the optimal layout.
        #[arg(long)]
        layout: Option<String>,
        #[arg(long, default_value = "-")]
        svg: String,
        #[arg(long)]
        equal_bands: bool,
        #[arg(long)]
        smooth: bool,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        #[arg(long, default_value_t = 480.0)]
        height: f64,
    },
    /// Category order minimizing crossings, or the integer program for it.
    OptimizeSigma {
        #[command(flatten)]
        input: Input,
        /// Solve by branch and bound (the default unless --export-lp is given).
        #[arg(long)]
        exact: bool,
        /// Write the integer program in LP format.
        #[arg(long, value_name = "OUT.lp")]
        export_lp: Option<String>,
        #[arg(long, default_value_t = SEARCH_BUDGET)]
        budget: u64,
    },
    /// Generate an instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
    /// Exact expected panel crossing number of a uniform random instance.
    Expected {
        #[command(flatten)]
        dims: Dims,
    },
    /// Monte Carlo estimate of the expected panel crossing number.
    Estimate {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lower and upper bounds on the extremal crossing number of consistent instances.
    BoundsConsistent {
        #[command(flatten)]
        dims: Dims,
    },
    /// Exhaustive reference computations.
    Oracle {
        #[arg(value_enum)]
        what: OracleKind,
        #[command(flatten)]
        input: Input,
    },
    /// Ordinal panel tile of a layout, as edge-list text.
    Tile {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        layout: Option<String>,
        #[arg(long, short, default_value = "-")]
        out: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Random,
    Extremal,
    ExtremalConsistent,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Pcr,
    Sigma,
}

#[derive(Debug)]
enum Failure {
    Data(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Data(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Data(m) | Failure::Budget(m) => f.write_str(m),
        }
    }
}

impl From<LayoutError> for Failure {
    fn from(e: LayoutError) -> Self {
        match e {
            LayoutError::TooLargeForOracle { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<SigmaError> for Failure {
    fn from(e: SigmaError) -> Self {
        match e {
            SigmaError::BudgetExceeded { .. } | SigmaError::TooManyCategories { .. } => Failure::Budget(e.to_string()),
            SigmaError::Layout(l) => l.into(),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Layout(l) => l.into(),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<TileError> for Failure {
    fn from(e: TileError) -> Self {
        match e {
            TileError::TooManyStates { .. } => Failure::Budget(e.to_string()),
            TileError::Layout(l) => l.into(),
            _ => Failure::Data(e.to_string()),
        }
    }
}

macro_rules! data_error {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Data(e.to_string())
            }
        }
    )*};
}
data_error!(AnalysisError, ModelError, io::Error);

/// Writes to a file, or stdout for `-`.
fn write_out(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()?;
    } else {
        fs::write(path, text).map_err(|e| Failure::Data(format!("{path}: {e}")))?;
    }
    Ok(())
}

fn read_layout(path: &str) -> Result<CombinatorialLayout, Failure> {
    let text = if path == "-" { io::read_to_string(io::stdin())? } else { fs::read_to_string(path)? };
    Ok(LayoutFile::from_json(&text)?.layout()?)
}

fn layout_for(inst: &OpdInstance, path: Option<&str>) -> Result<CombinatorialLayout, Failure> {
    match path {
        Some(p) => read_layout(p),
        None => Ok(optimal_layout(inst)?),
    }
}

fn sigma_labels(inst: &OpdInstance, sigma: &SigmaOrdering) -> Vec<String> {
    sigma.order().iter().map(|&c| inst.categories().label(c).to_string()).collect()
}

fn sigma_output(inst: &OpdInstance, sol: &SigmaSolution, json: bool) -> String {
    let labels = sigma_labels(inst, &sol.sigma);
    if json {
        json!({ "sigma": labels, "objective": sol.objective }).to_string()
    } else {
        format!("sigma: {}\nobjective: {}", labels.join(" "), sol.objective)
    }
}

/// Text (or JSON) to print on stdout; empty when output went elsewhere.
fn run(cli: Cli) -> Result<String, Failure> {
    let json = cli.json;
    let text = match cli.command {
        Command::Layout { input, out } => {
            let inst = input.load()?;
            let file = LayoutFile::new(&inst, &optimal_layout(&inst)?)?;
            write_out(&out, &file.to_json())?;
            if out == "-" {
                return Ok(String::new());
            }
            if json {
                json!({ "out": out, "total": file.report.total }).to_string()
            } else {
                format!("wrote {out} ({} crossings)", file.report.total)
            }
        }
        Command::Pcr { input } => {
            let inst = input.load()?;
            let report = crossing_report(&inst, &optimal_layout(&inst)?)?;
            if json {
                json!({ "pcr": report.total, "strong": report.strong, "weak": report.weak }).to_string()
            } else {
                format!("{} (strong {}, weak {})", report.total, report.strong, report.weak)
            }
        }
        Command::Draw { input, layout, svg, equal_bands, smooth, width, height } => {
            let inst = input.load()?;
            let layout = layout_for(&inst, layout.as_deref())?;
            let options = RenderOptions { width, height, equal_bands, smooth };
            write_out(&svg, &render_svg(&inst, &layout, &options)?)?;
            if svg == "-" {
                return Ok(String::new());
            }
            if json {
                json!({ "svg": svg }).to_string()
            } else {
                format!("wrote {svg}")
            }
        }
        Command::OptimizeSigma { input, exact, export_lp, budget } => {
            let inst = input.load()?;
            let tables = compute_tables(&inst);
            let mut parts = Vec::new();
            if let Some(path) = &export_lp {
                write_out(path, &export_ilp(&tables, inst.num_categories()))?;
                if path != "-" && !exact {
                    parts.push(if json { json!({ "lp": path }).to_string() } else { format!("wrote {path}") });
                }
            }
            if exact || export_lp.is_none() {
                let sol = optimal_sigma_exact(&inst, budget)?;
                parts.push(sigma_output(&inst, &sol, json));
            }
            parts.join("\n")
        }
        Command::Gen { kind, dims, seed, format, out } => {
            let Dims { n, k, m } = dims;
            let inst = match kind {
                GenKind::Random => random_instance(n, k, m, seed)?,
                GenKind::Extremal => extremal_instance_general(n, k, m)?,
                GenKind::ExtremalConsistent => consistent_extremal_instance(n, k, m)?,
            };
            write_out(&out, &save_instance(&inst, format.into()))?;
            String::new()
        }
        Command::Expected { dims } => {
            let Dims { n, k, m } = dims;
            let exact = expected_pcr(n, k, m)?;
            let value = expected_pcr_f64(n, k, m)?;
            if json {
                json!({ "value": value, "exact": exact.to_string() }).to_string()
            } else {
                format!("{value} ({exact})")
            }
        }
        Command::Estimate { dims, samples, seed } => {
            let Dims { n, k, m } = dims;
            let est = monte_carlo_expected_pcr(n, k, m, samples, seed)?;
            if json {
                // JSON has no infinity
                let stderr = if est.stderr.is_finite() { json!(est.stderr) } else { Value::Null };
                json!({ "mean": est.mean, "stderr": stderr, "samples": est.samples }).to_string()
            } else {
                format!("{} ± {} ({} samples)", est.mean, est.stderr, est.samples)
            }
        }
        Command::BoundsConsistent { dims } => {
            let Dims { n, k, m } = dims;
            let b = consistent_bounds(n, k, m)?;
            if json {
                json!({
                    "lower": b.lower,
                    "upper": b.upper,
                    "k_prime": b.params.k_prime,
                    "intervals": b.params.intervals,
                })
                .to_string()
            } else {
                format!(
                    "{} <= ecr <= {} (k' = {}, {} intervals)",
                    b.lower, b.upper, b.params.k_prime, b.params.intervals
                )
            }
        }
        Command::Oracle { what, input } => {
            let inst = input.load()?;
            match what {
                OracleKind::Pcr => {
                    let value = brute_force_pcr_with_budget(&inst, ORACLE_BUDGET)?;
                    if json {
                        json!({ "pcr": value }).to_string()
                    } else {
                        value.to_string()
                    }
                }
                OracleKind::Sigma => sigma_output(&inst, &brute_force_optimal_sigma(&inst)?, json),
            }
        }
        Command::Tile { input, layout, out } => {
            let inst = input.load()?;
            let layout = layout_for(&inst, layout.as_deref())?;
            write_out(&out, &tile_to_text(&ordinal_panel_tile(&inst, &layout)?))?;
            String::new()
        }
    };
    Ok(text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(text) => {
            if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if json {
                println!("{}", json!({ "error": failure.to_string(), "code": failure.code() }));
            } else {
                eprintln!("panelcross: {failure}");
            }
            ExitCode::from(failure.code())
        }
    }
}
