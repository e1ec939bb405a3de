//! Per-`n` counts of graphs above the bound, from built-in generation or
//! external graph6 files.

use std::fs::File;
use std::io::BufReader;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use serde::Serialize;

use super::generate::{generate_connected_bounded_with, GenerateError, GENERATOR_LIMIT};
use super::scan::{scan_graphs, scan_stream, ScanError, ScanOptions, ScanOutcome};
use crate::parallel::Executor;

/// Environment variable naming the directory with external graph6 files.
pub const DATA_DIR_ENV: &str = "ENERGIA_DATA_DIR";

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("no graph6 source for n = {n}: expected {}", path.display())]
    MissingSource { n: usize, path: PathBuf },
    #[error("no graph6 source for n = {n}: set {DATA_DIR_ENV} to a directory holding {file}")]
    NoDataDir { n: usize, file: String },
    #[error("delta_max is required for a counts table")]
    NoDeltaMax,
    #[error("{}: {source}", path.display())]
    Open { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("n = {n}: {source}")]
    Scan { n: usize, source: ScanError },
}

/// Where the graphs for one `n` come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "path")]
pub enum Source {
    Builtin,
    File(PathBuf),
}

/// Maps `n` to a graph source: built-in generation up to
/// [`GENERATOR_LIMIT`], otherwise `subcubic{n}.g6` (for `Δmax = 3`) or
/// `maxdeg{Δmax}_{n}.g6` in the data directory.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceResolver {
    pub data_dir: Option<PathBuf>,
}

impl SourceResolver {
    pub fn from_env() -> Self {
        SourceResolver { data_dir: std::env::var_os(DATA_DIR_ENV).map(PathBuf::from) }
    }

    pub fn file_name(n: usize, delta_max: usize) -> String {
        if delta_max == 3 {
            format!("subcubic{n}.g6")
        } else {
            format!("maxdeg{delta_max}_{n}.g6")
        }
    }

    /// External file for `n`, if a data directory is configured and the
    /// file exists.
    pub fn external(&self, n: usize, delta_max: usize) -> Option<PathBuf> {
        let path = self.data_dir.as_ref()?.join(Self::file_name(n, delta_max));
        path.is_file().then_some(path)
    }

    pub fn resolve(&self, n: usize, delta_max: usize) -> Result<Source, TableError> {
        if n <= GENERATOR_LIMIT {
            return Ok(Source::Builtin);
        }
        let file = Self::file_name(n, delta_max);
        match &self.data_dir {
            None => Err(TableError::NoDataDir { n, file }),
            Some(dir) => {
                let path = dir.join(file);
                if path.is_file() {
                    Ok(Source::File(path))
                } else {
                    Err(TableError::MissingSource { n, path })
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub delta_max: usize,
    pub source: Source,
    pub total_scanned: usize,
    pub raw_hits: usize,
    pub conjecture_hits: usize,
}

impl CountRow {
    pub const CSV_HEADER: &'static str = "n,delta_max,source,total_scanned,raw_hits,conjecture_hits";

    pub fn csv_row(&self) -> String {
        let source = match &self.source {
            Source::Builtin => "builtin".to_owned(),
            Source::File(p) => p.display().to_string(),
        };
        format!(
            "{},{},{},{},{},{}",
            self.n, self.delta_max, source, self.total_scanned, self.raw_hits, self.conjecture_hits
        )
    }
}

/// Scans every graph for one `n` and returns the full outcome.
pub fn scan_source(n: usize, source: &Source, opts: &ScanOptions) -> Result<ScanOutcome, TableError> {
    let delta_max = opts.delta_max.ok_or(TableError::NoDeltaMax)?;
    match source {
        Source::Builtin => {
            let graphs = generate_connected_bounded_with(n, delta_max, &Executor::new(opts.parallelism))?;
            scan_graphs(&graphs, opts).map_err(|source| TableError::Scan { n, source })
        }
        Source::File(path) => {
            let file = File::open(path).map_err(|source| TableError::Open { path: path.clone(), source })?;
            scan_stream(BufReader::new(file), opts).map_err(|source| TableError::Scan { n, source })
        }
    }
}

/// One row per `n`.
pub fn scan_counts_table(
    ns: RangeInclusive<usize>,
    opts: &ScanOptions,
    resolver: &SourceResolver,
) -> Result<Vec<CountRow>, TableError> {
    let delta_max = opts.delta_max.ok_or(TableError::NoDeltaMax)?;
    ns.map(|n| {
        let source = resolver.resolve(n, delta_max)?;
        let out = scan_source(n, &source, opts)?;
        // a file may mix orders; only records with this n count
        let report = out.reports.get(&n);
        Ok(CountRow {
            n,
            delta_max,
            source,
            total_scanned: report.map_or(0, |r| r.total_scanned),
            raw_hits: report.map_or(0, |r| r.raw_hits),
            conjecture_hits: report.map_or(0, |r| r.conjecture_hits),
        })
    })
    .collect()
}
