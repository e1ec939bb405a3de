//! Adjacency spectra and graph energy.
//!
//! Eigenvalues come from Householder reduction to tridiagonal form followed
//! by the implicit-shift QL iteration. For the 0/1 matrices seen here the
//! absolute error is a small multiple of machine epsilon times `Δ`.

use serde::Serialize;

use crate::graph::Graph;

/// Default window for grouping numerically equal eigenvalues.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

const MAX_QL_ITERATIONS: usize = 60;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("QL iteration did not converge for eigenvalue {index} after {MAX_QL_ITERATIONS} sweeps")]
    NoConvergence { index: usize },
    #[error("matrix has {len} entries, expected {n}x{n}")]
    Shape { len: usize, n: usize },
}

/// Sorted adjacency eigenvalues (descending) and their absolute sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<f64>,
    pub energy: f64,
}

impl SpectralSummary {
    /// Number of eigenvalues within `cluster_tol` of `target`.
    pub fn multiplicity(&self, target: f64, cluster_tol: f64) -> usize {
        eigenvalue_multiplicity(self, target, cluster_tol)
    }
}

/// Full adjacency spectrum of `g`, sorted from largest to smallest.
pub fn eigenvalues_symmetric(g: &Graph) -> Result<SpectralSummary, SpectralError> {
    let n = g.order();
    let mut values = symmetric_eigenvalues(&g.adjacency_matrix(), n)?;
    values.sort_by(|a, b| b.total_cmp(a));
    let energy = values.iter().map(|x| x.abs()).sum();

    #[cfg(debug_assertions)]
    {
        let trace: f64 = values.iter().sum();
        let frob: f64 = values.iter().map(|x| x * x).sum();
        let tol = 1e-8 * (1.0 + n as f64);
        debug_assert!(trace.abs() < tol, "spectrum trace {trace} != 0");
        debug_assert!((frob - 2.0 * g.edge_count() as f64).abs() < tol, "sum of squares {frob}");
    }

    Ok(SpectralSummary { eigenvalues: values, energy })
}

/// E(G), the sum of absolute adjacency eigenvalues.
pub fn energy(g: &Graph) -> Result<f64, SpectralError> {
    eigenvalues_symmetric(g).map(|s| s.energy)
}

pub fn eigenvalue_multiplicity(s: &SpectralSummary, target: f64, cluster_tol: f64) -> usize {
    s.eigenvalues.iter().filter(|&&x| (x - target).abs() <= cluster_tol).count()
}

/// Eigenvalues (unsorted) of a dense symmetric `n x n` row-major matrix.
/// The input is symmetrized as `(A + Aᵀ) / 2` first.
pub fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Result<Vec<f64>, SpectralError> {
    if matrix.len() != n * n {
        return Err(SpectralError::Shape { len: matrix.len(), n });
    }
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (matrix[i * n + j] + matrix[j * n + i]);
        }
    }
    let (mut d, mut e) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut d, &mut e)?;
    Ok(d)
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
/// Returns the diagonal and the sub-diagonal (`e[i]` couples `i-1` and `i`).
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let at = |i: usize, j: usize| i * n + j;
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[at(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[at(i, l)];
            } else {
                for k in 0..=l {
                    a[at(i, k)] /= scale;
                    h += a[at(i, k)] * a[at(i, k)];
                }
                let f = a[at(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[at(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[at(j, k)] * a[at(i, k)];
                    }
                    for k in j + 1..=l {
                        g += a[at(k, j)] * a[at(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * a[at(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[at(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[at(j, k)] -= f * e[k] + g * a[at(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[at(i, l)];
        }
        d[i] = h;
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[at(i, i)];
    }
    if n > 0 {
        e[0] = 0.0;
    }
    (d, e)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. On return `d` holds
/// the eigenvalues; `e` is destroyed.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<(), SpectralError> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(SpectralError::NoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
