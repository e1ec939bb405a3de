//! Streaming scan of graph6 records for graphs above the bound.

use std::collections::BTreeMap;
use std::io::{self, BufRead};

use serde::Serialize;

use crate::conjecture::{verdict, DEFAULT_TOL};
use crate::graph::Graph;
use crate::graph6::{self, Graph6Error};
use crate::parallel::{Executor, Parallelism};
use crate::spectral::SpectralError;

/// Records handed to the workers per batch.
pub const CHUNK_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OnError {
    /// Stop at the first bad record.
    #[default]
    Abort,
    /// Record the problem and continue.
    Skip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions {
    /// Records with a larger maximum degree are errors. `None` disables the check.
    pub delta_max: Option<usize>,
    pub tol: f64,
    pub parallelism: Parallelism,
    pub on_error: OnError,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { delta_max: Some(3), tol: DEFAULT_TOL, parallelism: Parallelism::Auto, on_error: OnError::Abort }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RecordError {
    #[error(transparent)]
    Decode(#[from] Graph6Error),
    #[error("maximum degree {delta} exceeds the limit {limit}")]
    DegreeExceeded { delta: usize, limit: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("read error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Record { line: usize, source: RecordError },
}

/// A graph with `E > 2μ√Δ + tol`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HitRecord {
    pub n: usize,
    pub g6: String,
    pub energy: f64,
    pub mu: usize,
    pub delta: usize,
    pub score: f64,
    pub is_conjecture_counterexample: bool,
}

/// Per-vertex-count summary of a scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub total_scanned: usize,
    pub raw_hits: usize,
    pub conjecture_hits: usize,
    /// Raw hits, ordered by graph6 string.
    pub hit_records: Vec<HitRecord>,
}

impl ScanReport {
    fn new(n: usize) -> Self {
        ScanReport { n, total_scanned: 0, raw_hits: 0, conjecture_hits: 0, hit_records: Vec::new() }
    }

    pub const CSV_HEADER: &'static str = "n,total_scanned,raw_hits,conjecture_hits";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.n, self.total_scanned, self.raw_hits, self.conjecture_hits)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedRecord {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ScanOutcome {
    pub reports: BTreeMap<usize, ScanReport>,
    pub skipped: Vec<SkippedRecord>,
}

impl ScanOutcome {
    pub fn total_scanned(&self) -> usize {
        self.reports.values().map(|r| r.total_scanned).sum()
    }

    pub fn raw_hits(&self) -> usize {
        self.reports.values().map(|r| r.raw_hits).sum()
    }

    pub fn conjecture_hits(&self) -> usize {
        self.reports.values().map(|r| r.conjecture_hits).sum()
    }

    /// All hits ordered by `(n, g6)`.
    pub fn hits(&self) -> impl Iterator<Item = &HitRecord> {
        self.reports.values().flat_map(|r| r.hit_records.iter())
    }

    fn absorb(&mut self, n: usize, hit: Option<HitRecord>) {
        let report = self.reports.entry(n).or_insert_with(|| ScanReport::new(n));
        report.total_scanned += 1;
        if let Some(hit) = hit {
            report.raw_hits += 1;
            report.conjecture_hits += usize::from(hit.is_conjecture_counterexample);
            report.hit_records.push(hit);
        }
    }

    fn finish(mut self) -> Self {
        for r in self.reports.values_mut() {
            r.hit_records.sort_by(|a, b| a.g6.cmp(&b.g6));
        }
        self
    }
}

/// Verdict for one graph; `Ok(None)` when it is not a raw hit.
pub fn evaluate(g: &Graph, delta_max: Option<usize>, tol: f64) -> Result<Option<HitRecord>, RecordError> {
    let delta = g.max_degree();
    if let Some(limit) = delta_max {
        if delta > limit {
            return Err(RecordError::DegreeExceeded { delta, limit });
        }
    }
    let v = verdict(g, tol)?;
    Ok(v.raw_exceeds.then(|| HitRecord {
        n: v.n,
        g6: graph6::encode(g),
        energy: v.energy,
        mu: v.mu,
        delta: v.delta,
        score: v.score.value(),
        is_conjecture_counterexample: v.is_conjecture_counterexample,
    }))
}

fn evaluate_record(text: &str, delta_max: Option<usize>, tol: f64) -> Result<(usize, Option<HitRecord>), RecordError> {
    let g = graph6::decode_str(text)?;
    Ok((g.order(), evaluate(&g, delta_max, tol)?))
}

/// Blank lines and lines starting with `#` carry no record.
fn is_record(line: &str) -> bool {
    !line.is_empty() && !line.starts_with('#')
}

/// Scans one graph6 record per line. Chunks of [`CHUNK_SIZE`] records are
/// evaluated in parallel and folded in input order, so the outcome does
/// not depend on the thread count.
pub fn scan_stream<R: BufRead>(reader: R, opts: &ScanOptions) -> Result<ScanOutcome, ScanError> {
    let ex = Executor::new(opts.parallelism);
    let mut outcome = ScanOutcome::default();
    let mut chunk: Vec<(usize, String)> = Vec::with_capacity(CHUNK_SIZE);
    let mut lines = reader.lines().enumerate();
    loop {
        chunk.clear();
        for (idx, line) in lines.by_ref() {
            let line = line?;
            let text = line.trim_end();
            if is_record(text) {
                chunk.push((idx + 1, text.to_owned()));
                if chunk.len() == CHUNK_SIZE {
                    break;
                }
            }
        }
        if chunk.is_empty() {
            break;
        }
        let results = ex.map(&chunk, |(_, text)| evaluate_record(text, opts.delta_max, opts.tol));
        for ((line, _), result) in chunk.iter().zip(results) {
            match result {
                Ok((n, hit)) => outcome.absorb(n, hit),
                Err(source) => match opts.on_error {
                    OnError::Abort => return Err(ScanError::Record { line: *line, source }),
                    OnError::Skip => outcome.skipped.push(SkippedRecord { line: *line, message: source.to_string() }),
                },
            }
        }
    }
    Ok(outcome.finish())
}

/// Same as [`scan_stream`] for graphs already in memory.
pub fn scan_graphs(graphs: &[Graph], opts: &ScanOptions) -> Result<ScanOutcome, ScanError> {
    let ex = Executor::new(opts.parallelism);
    let results = ex.map(graphs, |g| evaluate(g, opts.delta_max, opts.tol).map(|hit| (g.order(), hit)));
    let mut outcome = ScanOutcome::default();
    for (i, result) in results.into_iter().enumerate() {
        match result {
            Ok((n, hit)) => outcome.absorb(n, hit),
            Err(source) => match opts.on_error {
                OnError::Abort => return Err(ScanError::Record { line: i + 1, source }),
                OnError::Skip => outcome.skipped.push(SkippedRecord { line: i + 1, message: source.to_string() }),
            },
        }
    }
    Ok(outcome.finish())
}
