//! Command-line arguments and their canonical flag string.
//!
//! Every report starts with a header holding [`Cli::canonical_args`]: all
//! flags with their resolved values in a fixed order. Parsing that string
//! gives back the same configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use energia::enumerate::OnError;
use energia::wineglass::WineGlassKind;

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "energia", version, about = "Graph energy against the bound 2·μ·√Δ")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ErrorPolicy {
    Abort,
    Skip,
}

impl From<ErrorPolicy> for OnError {
    fn from(p: ErrorPolicy) -> Self {
        match p {
            ErrorPolicy::Abort => OnError::Abort,
            ErrorPolicy::Skip => OnError::Skip,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Path,
    Cycle,
}

impl From<Kind> for WineGlassKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Path => WineGlassKind::Path,
            Kind::Cycle => WineGlassKind::Cycle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Graph6,
    Metrics,
    Ratio,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Verdict for one graph6 record. Exit 0 for a counterexample, 1 otherwise.
    Check(CheckArgs),
    /// Scan a graph6 file (or `-` for stdin) for graphs above the bound.
    Scan(ScanArgs),
    /// Wine glass graphs, their energies and ratios.
    Wineglass(WineglassArgs),
    /// The limit constant L in both integral forms.
    Limit(LimitArgs),
    /// Connected graphs with bounded maximum degree, as graph6.
    Generate(GenerateArgs),
    /// Cross-entropy search for high-scoring graphs.
    Search(SearchArgs),
    /// Counterexample counts per vertex count.
    Table(TableArgs),
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct CheckArgs {
    pub graph6: String,
    #[arg(long, default_value_t = energia::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ScanArgs {
    /// graph6 file, or `-` for stdin.
    pub input: PathBuf,
    /// Records with larger maximum degree are errors; 0 disables the check.
    #[arg(long, default_value_t = 3)]
    pub delta_max: usize,
    #[arg(long, default_value_t = energia::DEFAULT_TOL)]
    pub tol: f64,
    /// Worker threads; 0 picks automatically, 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = ErrorPolicy::Abort)]
    pub on_error: ErrorPolicy,
    /// jsonl prints the hits, csv the per-n summary.
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Also write the JSONL hits here.
    #[arg(long)]
    pub hits_out: Option<PathBuf>,
    /// Also write the CSV summary here.
    #[arg(long)]
    pub summary_out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct WineglassArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Number of glasses; a comma-separated list is accepted with `--emit ratio`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Emit::Metrics)]
    pub emit: Emit,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct LimitArgs {
    #[arg(long, default_value_t = energia::wineglass::DEFAULT_QUAD_TOL)]
    pub quad_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub delta_max: usize,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub generations: usize,
    #[arg(long, default_value_t = 1000)]
    pub population: usize,
    #[arg(long, default_value_t = 0.1)]
    pub elite_frac: f64,
    #[arg(long, default_value_t = 0.7)]
    pub smoothing: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Samples with maximum degree above this score −∞.
    #[arg(long)]
    pub delta_penalty: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// csv prints the per-generation trace, jsonl the generation records
    /// followed by the final best.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 6)]
    pub n_min: usize,
    #[arg(long, default_value_t = 9)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub delta_max: usize,
    #[arg(long, default_value_t = energia::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn value<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_owned()
}

fn flag(out: &mut Vec<String>, name: &str, v: impl ToString) {
    out.push(format!("--{name}"));
    out.push(v.to_string());
}

impl Cli {
    /// Subcommand and every flag with its resolved value.
    pub fn canonical_args(&self) -> Vec<String> {
        let mut a = Vec::new();
        match &self.command {
            Command::Check(c) => {
                a.push("check".into());
                flag(&mut a, "tol", c.tol);
                a.push(c.graph6.clone());
            }
            Command::Scan(c) => {
                a.push("scan".into());
                flag(&mut a, "delta-max", c.delta_max);
                flag(&mut a, "tol", c.tol);
                flag(&mut a, "jobs", c.jobs);
                flag(&mut a, "on-error", value(c.on_error));
                flag(&mut a, "format", value(c.format));
                if let Some(p) = &c.hits_out {
                    flag(&mut a, "hits-out", p.display());
                }
                if let Some(p) = &c.summary_out {
                    flag(&mut a, "summary-out", p.display());
                }
                a.push(c.input.display().to_string());
            }
            Command::Wineglass(c) => {
                a.push("wineglass".into());
                flag(&mut a, "kind", value(c.kind));
                flag(&mut a, "k", c.k.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
                flag(&mut a, "emit", value(c.emit));
                flag(&mut a, "format", value(c.format));
                flag(&mut a, "jobs", c.jobs);
            }
            Command::Limit(c) => {
                a.push("limit".into());
                flag(&mut a, "quad-tol", c.quad_tol);
                flag(&mut a, "format", value(c.format));
            }
            Command::Generate(c) => {
                a.push("generate".into());
                flag(&mut a, "n", c.n);
                flag(&mut a, "delta-max", c.delta_max);
                flag(&mut a, "jobs", c.jobs);
            }
            Command::Search(c) => {
                a.push("search".into());
                flag(&mut a, "n", c.n);
                flag(&mut a, "generations", c.generations);
                flag(&mut a, "population", c.population);
                flag(&mut a, "elite-frac", c.elite_frac);
                flag(&mut a, "smoothing", c.smoothing);
                flag(&mut a, "seed", c.seed);
                if let Some(d) = c.delta_penalty {
                    flag(&mut a, "delta-penalty", d);
                }
                flag(&mut a, "jobs", c.jobs);
                flag(&mut a, "format", value(c.format));
            }
            Command::Table(c) => {
                a.push("table".into());
                flag(&mut a, "n-min", c.n_min);
                flag(&mut a, "n-max", c.n_max);
                flag(&mut a, "delta-max", c.delta_max);
                flag(&mut a, "tol", c.tol);
                flag(&mut a, "jobs", c.jobs);
                flag(&mut a, "format", value(c.format));
            }
        }
        a
    }

    pub fn canonical_string(&self) -> String {
        self.canonical_args().join(" ")
    }
}
