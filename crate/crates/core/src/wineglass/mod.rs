//! Wine glass paths `Wgp_k` and cycles `Wgc_k`, their closed-form
//! energies and the limit of `E/μ` along both families.
//!
//! A glass `j` is a stem vertex `q_j` joined to two consecutive base
//! vertices `p_j`, `p_{j+1}` and to the apex `r_j` of a triangle
//! `r_j s_j t_j`. In the path the base vertices `p_0..p_k` are distinct; in
//! the cycle `p_k` is `p_0`.

mod limit;
mod roots;

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::graph::Graph;
use crate::parallel::{compensated_sum, Executor};
use crate::quad::QuadError;

pub use limit::{limit_l, LimitResult, DEFAULT_QUAD_TOL};
pub use roots::{alpha, beta, f, f_prime, quartic_coefficients, roots, RootError, RootQuartet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WineGlassKind {
    Path,
    Cycle,
}

impl WineGlassKind {
    pub fn min_k(self) -> usize {
        match self {
            WineGlassKind::Path => 1,
            WineGlassKind::Cycle => 2,
        }
    }
}

impl fmt::Display for WineGlassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WineGlassKind::Path => "path",
            WineGlassKind::Cycle => "cycle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WineGlassError {
    #[error("k = {k} is out of range for a wine glass {kind} (minimum {min}, maximum {max} for graph construction)")]
    KOutOfRange { kind: WineGlassKind, k: usize, min: usize, max: usize },
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("quadrature tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

/// Largest `k` whose wine glass fits in a [`Graph`]. The closed forms have
/// no such limit.
pub const MAX_GRAPH_K: usize = 12;

/// Which family and how many glasses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WineGlassSpec {
    pub kind: WineGlassKind,
    pub k: usize,
}

impl WineGlassSpec {
    pub fn new(kind: WineGlassKind, k: usize) -> Result<Self, WineGlassError> {
        if k < kind.min_k() || k > MAX_GRAPH_K {
            return Err(WineGlassError::KOutOfRange { kind, k, min: kind.min_k(), max: MAX_GRAPH_K });
        }
        Ok(WineGlassSpec { kind, k })
    }

    pub fn path(k: usize) -> Result<Self, WineGlassError> {
        Self::new(WineGlassKind::Path, k)
    }

    pub fn cycle(k: usize) -> Result<Self, WineGlassError> {
        Self::new(WineGlassKind::Cycle, k)
    }

    pub fn vertex_count(&self) -> usize {
        match self.kind {
            WineGlassKind::Path => 5 * self.k + 1,
            WineGlassKind::Cycle => 5 * self.k,
        }
    }

    /// `μ = 2k` for both families.
    pub fn matching_number(&self) -> usize {
        2 * self.k
    }
}

pub fn build_wineglass(spec: WineGlassSpec) -> Graph {
    let k = spec.k;
    let n = spec.vertex_count();
    let p = |j: usize| if spec.kind == WineGlassKind::Cycle && j == k { 0 } else { 5 * j };
    let mut g = Graph::empty(n).expect("spec bounds keep n within the graph limit");
    for j in 0..k {
        let (q, r, s, t) = (5 * j + 1, 5 * j + 2, 5 * j + 3, 5 * j + 4);
        for (u, v) in [(q, p(j)), (q, p(j + 1)), (q, r), (r, s), (r, t), (s, t)] {
            g.set_edge(u, v);
        }
    }
    g
}

fn check_k(kind: WineGlassKind, k: usize) -> Result<(), WineGlassError> {
    if k < kind.min_k() {
        return Err(WineGlassError::KOutOfRange { kind, k, min: kind.min_k(), max: usize::MAX });
    }
    Ok(())
}

/// `α(y) + β(y)`, the per-eigenvalue contribution in both closed forms.
fn alpha_plus_beta(y: f64) -> Result<f64, RootError> {
    Ok(alpha(y)? + beta(y)?)
}

fn closed_form(k: usize, levels: impl Fn(usize) -> f64 + Sync + Send, ex: &Executor) -> Result<f64, WineGlassError> {
    let terms = ex.map_range(0..k, |j| alpha_plus_beta(levels(j)));
    let terms = terms.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(2.0 * k as f64 - 2.0 * compensated_sum(terms))
}

/// `E(Wgp_k) = 2k − 2 Σ_{j=1}^{k} [α + β](2 cos(jπ/(k+1)))`.
pub fn energy_wgp_closed(k: usize) -> Result<f64, WineGlassError> {
    energy_wgp_closed_with(k, &Executor::sequential())
}

pub fn energy_wgp_closed_with(k: usize, ex: &Executor) -> Result<f64, WineGlassError> {
    check_k(WineGlassKind::Path, k)?;
    closed_form(k, |i| 2.0 * ((i + 1) as f64 * PI / (k + 1) as f64).cos(), ex)
}

/// `E(Wgc_k) = 2k − 2 Σ_{j=0}^{k−1} [α + β](2 cos(2jπ/k))`. The level is
/// set to exactly 2 at `j = 0` and exactly −2 at `j = k/2`.
pub fn energy_wgc_closed(k: usize) -> Result<f64, WineGlassError> {
    energy_wgc_closed_with(k, &Executor::sequential())
}

pub fn energy_wgc_closed_with(k: usize, ex: &Executor) -> Result<f64, WineGlassError> {
    check_k(WineGlassKind::Cycle, k)?;
    closed_form(
        k,
        |j| {
            if j == 0 {
                2.0
            } else if 2 * j == k {
                -2.0
            } else {
                2.0 * (2.0 * j as f64 * PI / k as f64).cos()
            }
        },
        ex,
    )
}

pub fn energy_closed(kind: WineGlassKind, k: usize, ex: &Executor) -> Result<f64, WineGlassError> {
    match kind {
        WineGlassKind::Path => energy_wgp_closed_with(k, ex),
        WineGlassKind::Cycle => energy_wgc_closed_with(k, ex),
    }
}

/// `(k, E_closed / (2k))` for each `k`.
pub fn ratio_convergence(kind: WineGlassKind, k_list: &[usize]) -> Result<Vec<(usize, f64)>, WineGlassError> {
    ratio_convergence_with(kind, k_list, &Executor::sequential())
}

pub fn ratio_convergence_with(
    kind: WineGlassKind,
    k_list: &[usize],
    ex: &Executor,
) -> Result<Vec<(usize, f64)>, WineGlassError> {
    k_list.iter().map(|&k| energy_closed(kind, k, ex).map(|e| (k, e / (2 * k) as f64))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::{verdict, DEFAULT_TOL};
    use crate::matching::matching_number;
    use crate::parallel::Parallelism;
    use crate::spectral::{eigenvalues_symmetric, energy, DEFAULT_CLUSTER_TOL};

    fn build(kind: WineGlassKind, k: usize) -> Graph {
        build_wineglass(WineGlassSpec::new(kind, k).unwrap())
    }

    #[test]
    fn construction_sizes() {
        let g = build(WineGlassKind::Path, 1);
        assert_eq!((g.order(), g.edge_count(), g.max_degree()), (6, 6, 3));
        let g = build(WineGlassKind::Cycle, 2);
        assert_eq!((g.order(), g.max_degree()), (10, 3));
        assert!(g.is_connected());
        assert_eq!(build(WineGlassKind::Path, 7).order(), 36);
        for k in 1..=MAX_GRAPH_K {
            let p = build(WineGlassKind::Path, k);
            assert_eq!((p.order(), p.edge_count(), p.max_degree()), (5 * k + 1, 6 * k, 3));
            assert_eq!(matching_number(&p), 2 * k);
            if k >= 2 {
                let c = build(WineGlassKind::Cycle, k);
                assert_eq!((c.order(), c.edge_count(), c.max_degree()), (5 * k, 6 * k, 3));
                assert_eq!(matching_number(&c), 2 * k);
                assert!(c.is_connected());
            }
        }
    }

    #[test]
    fn bad_k_is_rejected() {
        assert!(WineGlassSpec::path(0).is_err());
        assert!(WineGlassSpec::cycle(1).is_err());
        assert!(WineGlassSpec::cycle(13).is_err());
        assert!(energy_wgc_closed(1).is_err());
        assert!(energy_wgp_closed(0).is_err());
    }

    #[test]
    fn closed_forms_match_direct_energy() {
        for k in 1..=MAX_GRAPH_K {
            let direct = energy(&build(WineGlassKind::Path, k)).unwrap();
            let closed = energy_wgp_closed(k).unwrap();
            assert!((direct - closed).abs() <= 1e-8, "Wgp_{k}: {direct} vs {closed}");
            if k >= 2 {
                let direct = energy(&build(WineGlassKind::Cycle, k)).unwrap();
                let closed = energy_wgc_closed(k).unwrap();
                assert!((direct - closed).abs() <= 1e-8, "Wgc_{k}: {direct} vs {closed}");
            }
        }
        assert!((energy_wgp_closed(1).unwrap() - 7.191_688_434_954_841).abs() < 1e-10);
    }

    #[test]
    fn closed_forms_are_identical_in_parallel() {
        let par = Executor::new(Parallelism::Threads(3));
        for k in [1, 5, 64, 301] {
            assert_eq!(energy_wgp_closed(k).unwrap(), energy_wgp_closed_with(k, &par).unwrap());
            assert_eq!(energy_wgc_closed(k + 1).unwrap(), energy_wgc_closed_with(k + 1, &par).unwrap());
        }
    }

    #[test]
    fn cycle_sum_symmetry() {
        // the terms for j and k − j coincide, so folding the sum must agree
        for k in 2usize..40 {
            let level = |j: usize| 2.0 * (2.0 * j as f64 * PI / k as f64).cos();
            let mut folded = alpha_plus_beta(2.0).unwrap();
            for j in 1..k.div_ceil(2) {
                folded += 2.0 * alpha_plus_beta(level(j)).unwrap();
            }
            if k % 2 == 0 {
                folded += alpha_plus_beta(-2.0).unwrap();
            }
            let e = 2.0 * k as f64 - 2.0 * folded;
            assert!((e - energy_wgc_closed(k).unwrap()).abs() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn spectral_structure() {
        for k in 1..=MAX_GRAPH_K {
            let s = eigenvalues_symmetric(&build(WineGlassKind::Path, k)).unwrap();
            assert_eq!(s.multiplicity(-1.0, DEFAULT_CLUSTER_TOL), k, "Wgp_{k}");
            assert_eq!(s.multiplicity(0.0, DEFAULT_CLUSTER_TOL), 1, "Wgp_{k}");
            assert_eq!(s.multiplicity(2.0, DEFAULT_CLUSTER_TOL), 0, "Wgp_{k}");
            if k >= 2 {
                let s = eigenvalues_symmetric(&build(WineGlassKind::Cycle, k)).unwrap();
                assert_eq!(s.multiplicity(-1.0, DEFAULT_CLUSTER_TOL), k, "Wgc_{k}");
                let zero = if k % 2 == 0 { 1 } else { 0 };
                assert_eq!(s.multiplicity(0.0, DEFAULT_CLUSTER_TOL), zero, "Wgc_{k}");
            }
        }
    }

    #[test]
    fn family_counterexample_status() {
        let mut exceptions = Vec::new();
        for k in 1..=MAX_GRAPH_K {
            let v = verdict(&build(WineGlassKind::Path, k), DEFAULT_TOL).unwrap();
            if !v.is_conjecture_counterexample {
                exceptions.push(format!("Wgp_{k}"));
            }
            if k >= 2 {
                let v = verdict(&build(WineGlassKind::Cycle, k), DEFAULT_TOL).unwrap();
                if !v.is_conjecture_counterexample {
                    exceptions.push(format!("Wgc_{k}"));
                }
            }
        }
        // the two smallest even cycles fall below the bound: E(Wgc_2) ≈ 13.26
        // against 8√3 ≈ 13.86, and E(Wgc_4) ≈ 27.645 against 16√3 ≈ 27.713
        assert_eq!(exceptions, ["Wgc_2", "Wgc_4"]);
    }

    #[test]
    fn ratios() {
        let r = ratio_convergence(WineGlassKind::Path, &[1]).unwrap();
        // E/μ exceeds 2√3, equivalently E/(2μ) exceeds √3
        assert!((r[0].1 - 7.191_688_434_954_841 / 2.0).abs() < 1e-10);
        assert!(r[0].1 > 2.0 * 3f64.sqrt());
        let l = limit_l(DEFAULT_QUAD_TOL).unwrap().l;
        let r = ratio_convergence(WineGlassKind::Cycle, &[10, 100, 1000, 2000]).unwrap();
        let gaps: Vec<f64> = r.iter().map(|&(_, x)| (x - l).abs()).collect();
        assert!(gaps.windows(2).take(2).all(|w| w[1] <= w[0]), "{gaps:?}");
        assert!(gaps[3] < 1e-6);
        let p = ratio_convergence(WineGlassKind::Path, &[2000]).unwrap();
        assert!((p[0].1 - l).abs() < 1e-3);
    }
}
