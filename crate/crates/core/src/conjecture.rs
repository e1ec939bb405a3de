//! The bound `E(G) <= 2 μ(G) √Δ` and its counterexample predicates.
//!
//! Two predicates are exposed. [`raw_exceeds`] is the plain threshold test
//! `E > 2μ√Δ + tol` on connected graphs. The conjecture-aware flag in
//! [`ConjectureVerdict`] additionally requires `2 <= Δ <= 5` and excludes
//! the cycles `C3`, `C5` and `C7`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::Graph;
use crate::matching::matching_number;
use crate::spectral::{energy, SpectralError};

/// Threshold added to the bound before a graph counts as exceeding it.
pub const DEFAULT_TOL: f64 = 1e-7;

/// Cycles the conjecture explicitly excludes.
pub const EXCLUDED_CYCLES: [usize; 3] = [3, 5, 7];

/// Degree window in which the conjecture is stated.
pub const CONJECTURE_DELTA_RANGE: std::ops::RangeInclusive<usize> = 2..=5;

/// `E(G) - 2 μ(G) √Δ` for connected graphs; disconnected graphs score
/// [`Score::NegInfinity`].
///
/// Serializes as a JSON number, or the string `"-inf"` for the sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Score {
    Finite(f64),
    NegInfinity,
}

impl Score {
    pub fn value(self) -> f64 {
        match self {
            Score::Finite(x) => x,
            Score::NegInfinity => f64::NEG_INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Score::Finite(x) => Some(x),
            Score::NegInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Score::Finite(_))
    }

    /// Total order with the sentinel below every finite score.
    pub fn total_cmp(&self, other: &Score) -> std::cmp::Ordering {
        self.value().total_cmp(&other.value())
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Finite(x) => write!(f, "{x}"),
            Score::NegInfinity => f.write_str("-inf"),
        }
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Score::Finite(x) => s.serialize_f64(*x),
            Score::NegInfinity => s.serialize_str("-inf"),
        }
    }
}

/// Everything the scan and the CLI report about one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureVerdict {
    pub n: usize,
    pub connected: bool,
    pub energy: f64,
    pub mu: usize,
    pub delta: usize,
    pub score: Score,
    pub raw_exceeds: bool,
    pub is_conjecture_counterexample: bool,
}

/// `2 μ √Δ`.
pub fn bound(mu: usize, delta: usize) -> f64 {
    2.0 * mu as f64 * (delta as f64).sqrt()
}

pub fn score(g: &Graph) -> Result<Score, SpectralError> {
    if !g.is_connected() {
        return Ok(Score::NegInfinity);
    }
    let e = energy(g)?;
    Ok(Score::Finite(e - bound(matching_number(g), g.max_degree())))
}

/// `E(G) > 2 μ(G) √Δ + tol` for connected `g`.
pub fn raw_exceeds(g: &Graph, tol: f64) -> Result<bool, SpectralError> {
    verdict(g, tol).map(|v| v.raw_exceeds)
}

/// True for the cycles the conjecture excludes.
pub fn is_excluded_cycle(g: &Graph) -> bool {
    EXCLUDED_CYCLES.iter().any(|&m| g.is_cycle_of_length(m))
}

pub fn verdict(g: &Graph, tol: f64) -> Result<ConjectureVerdict, SpectralError> {
    let connected = g.is_connected();
    let energy = energy(g)?;
    let mu = matching_number(g);
    let delta = g.max_degree();
    let b = bound(mu, delta);
    let score = if connected { Score::Finite(energy - b) } else { Score::NegInfinity };
    let raw_exceeds = connected && energy > b + tol;
    let is_conjecture_counterexample = raw_exceeds && CONJECTURE_DELTA_RANGE.contains(&delta) && !is_excluded_cycle(g);
    Ok(ConjectureVerdict {
        n: g.order(),
        connected,
        energy,
        mu,
        delta,
        score,
        raw_exceeds,
        is_conjecture_counterexample,
    })
}
