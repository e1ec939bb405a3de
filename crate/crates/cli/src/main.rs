mod args;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use energia::conjecture::verdict;
use energia::enumerate::{
    generate_connected_bounded_with, scan_counts_table, scan_stream, CountRow, GenerateError, ScanError, ScanOptions,
    ScanOutcome, ScanReport, SourceResolver, TableError,
};
use energia::graph6::{self, Graph6Error};
use energia::search::{run_search, SearchConfig, SearchError, SearchTrace};
use energia::spectral::{energy, SpectralError};
use energia::wineglass::{
    build_wineglass, energy_closed, limit_l, ratio_convergence_with, WineGlassError, WineGlassKind, WineGlassSpec,
};
use energia::{Executor, Parallelism};

use args::{
    CheckArgs, Cli, Command, Emit, Format, GenerateArgs, LimitArgs, ScanArgs, SearchArgs, TableArgs, WineglassArgs,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{}: {source}", path.display())]
    File { path: std::path::PathBuf, source: io::Error },
    #[error("invalid graph6: {0}")]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Scan(#[from] ScanError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    WineGlass(#[from] WineGlassError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{0}")]
    Usage(String),
}

/// Outcome of a subcommand that completed.
enum Status {
    Success,
    Negative,
}

#[derive(Serialize)]
struct Header<'a> {
    tool: &'a str,
    version: &'a str,
    args: String,
}

/// Output sink that knows the run's provenance header.
struct Out<W: Write> {
    w: W,
    args: String,
}

impl<W: Write> Out<W> {
    fn json_header(&mut self) -> io::Result<()> {
        let h = Header { tool: "energia", version: energia::VERSION, args: self.args.clone() };
        self.json(&h)
    }

    fn comment_header(&mut self) -> io::Result<()> {
        writeln!(self.w, "# energia {} {}", energia::VERSION, self.args)
    }

    fn header(&mut self, format: Format) -> io::Result<()> {
        match format {
            Format::Jsonl => self.json_header(),
            Format::Csv => self.comment_header(),
        }
    }

    fn json<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.w, value)?;
        writeln!(self.w)
    }

    fn line(&mut self, s: &str) -> io::Result<()> {
        writeln!(self.w, "{s}")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = Out { w: BufWriter::new(stdout.lock()), args: cli.canonical_string() };
    let result = run(&cli, &mut out).and_then(|s| out.w.flush().map(|_| s).map_err(CliError::from));
    match result {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("energia: {e}");
            ExitCode::from(2)
        }
    }
}

fn run<W: Write>(cli: &Cli, out: &mut Out<W>) -> Result<Status, CliError> {
    match &cli.command {
        Command::Check(a) => check(a, out),
        Command::Scan(a) => scan(a, out),
        Command::Wineglass(a) => wineglass(a, out),
        Command::Limit(a) => limit(a, out),
        Command::Generate(a) => generate(a, out),
        Command::Search(a) => search(a, out),
        Command::Table(a) => table(a, out),
    }
}

fn check<W: Write>(a: &CheckArgs, out: &mut Out<W>) -> Result<Status, CliError> {
    let g = graph6::decode_str(&a.graph6)?;
    let v = verdict(&g, a.tol)?;
    out.json_header()?;
    out.json(&v)?;
    Ok(if v.is_conjecture_counterexample { Status::Success } else { Status::Negative })
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>, CliError> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path).map_err(|source| CliError::File { path: path.to_owned(), source })?;
    Ok(Box::new(BufReader::new(f)))
}

fn create(path: &Path, args: &str) -> Result<Out<BufWriter<File>>, CliError> {
    let f = File::create(path).map_err(|source| CliError::File { path: path.to_owned(), source })?;
    Ok(Out { w: BufWriter::new(f), args: args.to_owned() })
}

fn write_hits<W: Write>(outcome: &ScanOutcome, out: &mut Out<W>) -> io::Result<()> {
    out.json_header()?;
    for hit in outcome.hits() {
        out.json(hit)?;
    }
    Ok(())
}

fn write_summary<W: Write>(outcome: &ScanOutcome, out: &mut Out<W>) -> io::Result<()> {
    out.comment_header()?;
    out.line(ScanReport::CSV_HEADER)?;
    for r in outcome.reports.values() {
        out.line(&r.csv_row())?;
    }
    Ok(())
}

fn scan<W: Write>(a: &ScanArgs, out: &mut Out<W>) -> Result<Status, CliError> {
    let opts = ScanOptions {
        delta_max: (a.delta_max > 0).then_some(a.delta_max),
        tol: a.tol,
        parallelism: Parallelism::from_jobs(a.jobs),
        on_error: a.on_error.into(),
    };
    let outcome = scan_stream(open_input(&a.input)?, &opts)?;
    for s in &outcome.skipped {
        eprintln!("energia: skipped line {}: {}", s.line, s.message);
    }
    match a.format {
        Format::Jsonl => write_hits(&outcome, out)?,
        Format::Csv => write_summary(&outcome, out)?,
    }
    if let Some(p) = &a.hits_out {
        let mut f = create(p, &out.args)?;
        write_hits(&outcome, &mut f)?;
        f.w.flush()?;
    }
    if let Some(p) = &a.summary_out {
        let mut f = create(p, &out.args)?;
        write_summary(&outcome, &mut f)?;
        f.w.flush()?;
    }
    Ok(Status::Success)
}

#[derive(Serialize)]
struct Metrics {
    kind: WineGlassKind,
    k: usize,
    n: usize,
    direct_energy: f64,
    closed_energy: f64,
    difference: f64,
    mu: usize,
    delta: usize,
    score: f64,
    is_conjecture_counterexample: bool,
}

fn wineglass<W: Write>(a: &WineglassArgs, out: &mut Out<W>) -> Result<Status, CliError> {
    let kind: WineGlassKind = a.kind.into();
    let ex = Executor::new(Parallelism::from_jobs(a.jobs));
    match a.emit {
        Emit::Graph6 => {
            let graphs =
                a.k.iter().map(|&k| WineGlassSpec::new(kind, k).map(build_wineglass)).collect::<Result<Vec<_>, _>>()?;
            out.comment_header()?;
            for g in &graphs {
                out.line(&graph6::encode(g))?;
            }
        }
        Emit::Metrics => {
            let mut rows = Vec::new();
            for &k in &a.k {
                let g = build_wineglass(WineGlassSpec::new(kind, k)?);
                let v = verdict(&g, energia::DEFAULT_TOL)?;
                let direct = energy(&g)?;
                let closed = energy_closed(kind, k, &ex)?;
                rows.push(Metrics {
                    kind,
                    k,
                    n: g.order(),
                    direct_energy: direct,
                    closed_energy: closed,
                    difference: direct - closed,
                    mu: v.mu,
                    delta: v.delta,
                    score: v.score.value(),
                    is_conjecture_counterexample: v.is_conjecture_counterexample,
                });
            }
            out.header(a.format)?;
            match a.format {
                Format::Jsonl => rows.iter().try_for_each(|r| out.json(r))?,
                Format::Csv => {
                    out.line(
                        "kind,k,n,direct_energy,closed_energy,difference,mu,delta,score,is_conjecture_counterexample",
                    )?;
                    for r in &rows {
                        out.line(&format!(
                            "{},{},{},{},{},{},{},{},{},{}",
                            r.kind,
                            r.k,
                            r.n,
                            r.direct_energy,
                            r.closed_energy,
                            r.difference,
                            r.mu,
                            r.delta,
                            r.score,
                            r.is_conjecture_counterexample
                        ))?;
                    }
                }
            }
        }
        Emit::Ratio => {
            #[derive(Serialize)]
            struct Ratio {
                kind: WineGlassKind,
                k: usize,
                ratio: f64,
            }
            let ratios = ratio_convergence_with(kind, &a.k, &ex)?;
            out.header(a.format)?;
            match a.format {
                Format::Jsonl => {
                    for (k, ratio) in ratios {
                        out.json(&Ratio { kind, k, ratio })?;
                    }
                }
                Format::Csv => {
                    out.line("kind,k,ratio")?;
                    for (k, ratio) in ratios {
                        out.line(&format!("{kind},{k},{ratio}"))?;
                    }
                }
            }
        }
    }
    Ok(Status::Success)
}

fn limit<W: Write>(a: &LimitArgs, out: &mut Out<W>) -> Result<Status, CliError> {
    #[derive(Serialize)]
    struct Limit {
        #[serde(rename = "L")]
        l: f64,
        /// Ten decimal places.
        #[serde(rename = "L_10")]
        l_10: String,
        #[serde(rename = "L_cos_form")]
        l_cos_form: f64,
        forms_difference: f64,
        alpha_m2: f64,
        alpha_p2: f64,
        beta_p2: f64,
        quadrature_error_estimate: f64,
    }
    let r = limit_l(a.quad_tol)?;
    let row = Limit {
        l: r.l,
        l_10: format!("{:.10}", r.l),
        l_cos_form: r.l_cos_form,
        forms_difference: r.l - r.l_cos_form,
        alpha_m2: r.alpha_m2,
        alpha_p2: r.alpha_p2,
        beta_p2: r.beta_p2,
        quadrature_error_estimate: r.quadrature_error_estimate,
    };
    out.header(a.format)?;
    match a.format {
        Format::Jsonl => out.json(&row)?,
        Format::Csv => {
            out.line("L,L_cos_form,forms_difference,alpha_m2,alpha_p2,beta_p2,quadrature_error_estimate")?;
            out.line(&format!(
                "{:.12},{:.12},{},{},{},{},{}",
                row.l,
                row.l_cos_form,
                row.forms_difference,
                row.alpha_m2,
                row.alpha_p2,
                row.beta_p2,
                row.quadrature_error_estimate
            ))?;
        }
    }
    Ok(Status::Success)
}

fn generate<W: Write>(a: &GenerateArgs, out: &mut Out<W>) -> Result<Status, CliError> {
    let graphs = generate_connected_bounded_with(a.n, a.delta_max, &Executor::new(Parallelism::from_jobs(a.jobs)))?;
    out.comment_header()?;
    for g in &graphs {
        out.line(&graph6::encode(g))?;
    }
    Ok(Status::Success)
}

fn search<W: Write>(a: &SearchArgs, out: &mut Out<W>) -> Result<Status, CliError> {
    let config = SearchConfig {
        population: a.population,
        elite_frac: a.elite_frac,
        smoothing: a.smoothing,
        delta_penalty: a.delta_penalty,
        parallelism: Parallelism::from_jobs(a.jobs),
        ..SearchConfig::new(a.n, a.generations, a.seed)
    };
    let trace: SearchTrace = run_search(&config)?;
    out.header(a.format)?;
    match a.format {
        Format::Csv => {
            out.line(SearchTrace::CSV_HEADER)?;
            for row in trace.csv_rows() {
                out.line(&row)?;
            }
        }
        Format::Jsonl => {
            #[derive(Serialize)]
            struct Final<'a> {
                best_score: energia::Score,
                best_g6: Option<&'a str>,
                counterexamples: Vec<String>,
            }
            for r in &trace.records {
                out.json(r)?;
            }
            let best = trace.best();
            out.json(&Final {
                best_score: best.map_or(energia::Score::NegInfinity, |b| b.0),
                best_g6: best.map(|b| b.1),
                counterexamples: trace.counterexamples(),
            })?;
        }
    }
    Ok(Status::Success)
}

fn table<W: Write>(a: &TableArgs, out: &mut Out<W>) -> Result<Status, CliError> {
    if a.n_min == 0 || a.n_min > a.n_max {
        return Err(CliError::Usage(format!("empty vertex range {}..={}", a.n_min, a.n_max)));
    }
    let opts = ScanOptions {
        delta_max: Some(a.delta_max),
        tol: a.tol,
        parallelism: Parallelism::from_jobs(a.jobs),
        ..ScanOptions::default()
    };
    let rows = scan_counts_table(a.n_min..=a.n_max, &opts, &SourceResolver::from_env())?;
    out.header(a.format)?;
    match a.format {
        Format::Jsonl => rows.iter().try_for_each(|r| out.json(r))?,
        Format::Csv => {
            out.line(CountRow::CSV_HEADER)?;
            for r in &rows {
                out.line(&r.csv_row())?;
            }
        }
    }
    Ok(Status::Success)
}
