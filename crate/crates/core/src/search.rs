//! Cross-entropy search for graphs with a high score `E − 2μ√Δ`.
//!
//! The sampling distribution is one independent Bernoulli variable per
//! vertex pair. Each generation draws a population, keeps the best
//! `⌈elite_frac · population⌉` connected samples, and moves every edge
//! probability toward its frequency among them.
//!
//! Candidate `i` of generation `t` draws from its own ChaCha8 stream
//! `(t << 32) | i` under the run seed, so a trace is the same at every
//! thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::conjecture::{score, verdict, Score, DEFAULT_TOL};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6;
use crate::parallel::{compensated_sum, Executor, Parallelism};
use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    pub generations: usize,
    pub population: usize,
    pub elite_frac: f64,
    pub smoothing: f64,
    pub seed: u64,
    /// Samples with `Δ` above this score `−∞`.
    pub delta_penalty: Option<usize>,
    pub initial_p: f64,
    pub p_floor: f64,
    pub p_ceil: f64,
    #[serde(skip)]
    pub parallelism: Parallelism,
}

impl SearchConfig {
    pub fn new(n: usize, generations: usize, seed: u64) -> Self {
        SearchConfig {
            n,
            generations,
            population: 1000,
            elite_frac: 0.1,
            smoothing: 0.7,
            seed,
            delta_penalty: None,
            initial_p: 0.5,
            p_floor: 0.01,
            p_ceil: 0.99,
            parallelism: Parallelism::Auto,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let fail = |msg: String| Err(SearchError::Config(msg));
        if self.n < 2 || self.n > MAX_VERTICES {
            return fail(format!("n must be in 2..={MAX_VERTICES}, got {}", self.n));
        }
        if self.population < 10 {
            return fail(format!("population must be at least 10, got {}", self.population));
        }
        if !(self.elite_frac > 0.0 && self.elite_frac < 1.0) {
            return fail(format!("elite_frac must lie in (0, 1), got {}", self.elite_frac));
        }
        if !(0.0..=1.0).contains(&self.smoothing) {
            return fail(format!("smoothing must lie in [0, 1], got {}", self.smoothing));
        }
        if !(0.0 <= self.p_floor && self.p_floor <= self.p_ceil && self.p_ceil <= 1.0) {
            return fail(format!("clamp [{}, {}] is not a sub-interval of [0, 1]", self.p_floor, self.p_ceil));
        }
        if !(0.0..=1.0).contains(&self.initial_p) {
            return fail(format!("initial_p must lie in [0, 1], got {}", self.initial_p));
        }
        Ok(())
    }

    pub fn elite_count(&self) -> usize {
        ((self.elite_frac * self.population as f64).ceil() as usize).clamp(1, self.population)
    }
}

/// Independent edge probabilities, one per unordered pair in graph6 order
/// (`(0,1), (0,2), (1,2), (0,3), …`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CePolicy {
    n: usize,
    edge_probs: Vec<f64>,
    p_floor: f64,
    p_ceil: f64,
}

impl CePolicy {
    pub fn uniform(n: usize, p: f64, p_floor: f64, p_ceil: f64) -> Self {
        let pairs = n * (n - 1) / 2;
        CePolicy { n, edge_probs: vec![p.clamp(p_floor, p_ceil); pairs], p_floor, p_ceil }
    }

    pub fn edge_probs(&self) -> &[f64] {
        &self.edge_probs
    }

    fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
        (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Graph {
        let mut g = Graph::empty(self.n).expect("validated vertex count");
        for ((i, j), &p) in Self::pairs(self.n).zip(&self.edge_probs) {
            if rng.random::<f64>() < p {
                g.set_edge(i, j);
            }
        }
        g
    }

    /// `p ← s·freq + (1 − s)·p`, then clamped. An empty elite leaves the
    /// policy unchanged.
    pub fn update(&mut self, elites: &[&Graph], smoothing: f64) {
        if elites.is_empty() {
            return;
        }
        let m = elites.len() as f64;
        for ((i, j), p) in Self::pairs(self.n).zip(self.edge_probs.iter_mut()) {
            let hits = elites.iter().filter(|g| g.has_edge(i, j)).count() as f64;
            let updated = smoothing * (hits / m) + (1.0 - smoothing) * *p;
            *p = updated.clamp(self.p_floor, self.p_ceil);
        }
    }
}

/// `score(g)`, or `−∞` when `Δ(g)` exceeds `delta_penalty`.
pub fn score_with_penalty(g: &Graph, delta_penalty: Option<usize>) -> Result<Score, SpectralError> {
    if delta_penalty.is_some_and(|d| g.max_degree() > d) {
        return Ok(Score::NegInfinity);
    }
    score(g)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationRecord {
    pub generation: usize,
    /// Mean score of the elite; `None` when no sample was connected.
    pub elite_mean: Option<f64>,
    /// Mean over every finite-scored sample.
    pub finite_mean: Option<f64>,
    pub finite_count: usize,
    pub best: Score,
    pub best_g6: Option<String>,
    pub best_so_far: Score,
    pub best_so_far_g6: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchTrace {
    pub config: SearchConfig,
    pub records: Vec<GenerationRecord>,
    pub final_policy: CePolicy,
}

impl SearchTrace {
    pub const CSV_HEADER: &'static str = "generation,elite_mean,best,best_g6,best_so_far";

    pub fn csv_rows(&self) -> impl Iterator<Item = String> + '_ {
        self.records.iter().map(|r| {
            let mean = r.elite_mean.map_or_else(|| "-inf".to_owned(), |m| m.to_string());
            format!("{},{},{},{},{}", r.generation, mean, r.best, r.best_g6.as_deref().unwrap_or(""), r.best_so_far)
        })
    }

    pub fn best(&self) -> Option<(Score, &str)> {
        let last = self.records.last()?;
        Some((last.best_so_far, last.best_so_far_g6.as_deref()?))
    }

    /// Distinct per-generation bests that re-verify as counterexamples,
    /// in order of first appearance.
    pub fn counterexamples(&self) -> Vec<String> {
        let mut seen = Vec::<String>::new();
        for g6 in self.records.iter().filter_map(|r| r.best_g6.as_ref()) {
            if seen.contains(g6) {
                continue;
            }
            let g = graph6::decode_str(g6).expect("trace holds valid graph6");
            if verdict(&g, DEFAULT_TOL).is_ok_and(|v| v.is_conjecture_counterexample) {
                seen.push(g6.clone());
            }
        }
        seen
    }
}

fn candidate_rng(seed: u64, generation: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((generation as u64) << 32) | index as u64);
    rng
}

pub fn run_search(config: &SearchConfig) -> Result<SearchTrace, SearchError> {
    config.validate()?;
    let ex = Executor::new(config.parallelism);
    let mut policy = CePolicy::uniform(config.n, config.initial_p, config.p_floor, config.p_ceil);
    let mut records = Vec::with_capacity(config.generations);
    let mut best_so_far = Score::NegInfinity;
    let mut best_so_far_g6: Option<String> = None;
    let elite_quota = config.elite_count();

    for generation in 0..config.generations {
        let scored: Vec<Result<(Graph, Score), SpectralError>> = ex.map_range(0..config.population, |i| {
            let g = policy.sample(&mut candidate_rng(config.seed, generation, i));
            score_with_penalty(&g, config.delta_penalty).map(|s| (g, s))
        });
        let scored = scored.into_iter().collect::<Result<Vec<_>, _>>()?;

        let mut ranked: Vec<usize> = (0..scored.len()).filter(|&i| scored[i].1.is_finite()).collect();
        // descending score, ties by sample index
        ranked.sort_by(|&a, &b| scored[b].1.total_cmp(&scored[a].1).then(a.cmp(&b)));
        let elite: Vec<usize> = ranked.iter().copied().take(elite_quota).collect();

        let mean = |idx: &[usize]| {
            (!idx.is_empty()).then(|| compensated_sum(idx.iter().map(|&i| scored[i].1.value())) / idx.len() as f64)
        };
        let elite_mean = mean(&elite);
        let finite_mean = mean(&ranked);

        let (best, best_g6) = match ranked.first() {
            Some(&i) => (scored[i].1, Some(graph6::encode(&scored[i].0))),
            None => (Score::NegInfinity, None),
        };
        if best.total_cmp(&best_so_far).is_gt() {
            best_so_far = best;
            best_so_far_g6 = best_g6.clone();
        }

        let elite_graphs: Vec<&Graph> = elite.iter().map(|&i| &scored[i].0).collect();
        policy.update(&elite_graphs, config.smoothing);

        records.push(GenerationRecord {
            generation,
            elite_mean,
            finite_mean,
            finite_count: ranked.len(),
            best,
            best_g6,
            best_so_far,
            best_so_far_g6: best_so_far_g6.clone(),
        });
    }
    Ok(SearchTrace { config: config.clone(), records, final_policy: policy })
}
