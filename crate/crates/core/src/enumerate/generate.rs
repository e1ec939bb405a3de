//! Connected graphs of bounded maximum degree, one per isomorphism class.
//!
//! Every connected graph on `n ≥ 2` vertices has a vertex whose removal
//! leaves it connected, and removing a vertex never raises a degree. So
//! the classes on `n` vertices are exactly the canonical forms of the
//! graphs obtained by attaching one new vertex to a nonempty set `S` of a
//! class on `n − 1` vertices, with `|S| ≤ Δmax` and every vertex of `S`
//! still below `Δmax`.

use std::collections::BTreeSet;

use crate::canon::{canonical_code, CanonicalCode};
use crate::graph::Graph;
use crate::parallel::Executor;

/// Largest `n` the built-in generator accepts.
pub const GENERATOR_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("built-in generation supports 1 to {GENERATOR_LIMIT} vertices, got {0}; supply a graph6 file instead")]
    OutOfRange(usize),
}

/// Canonical representatives of all connected graphs on `n` vertices with
/// maximum degree at most `delta_max`, sorted by canonical code.
pub fn generate_connected_bounded(n: usize, delta_max: usize) -> Result<Vec<Graph>, GenerateError> {
    generate_connected_bounded_with(n, delta_max, &Executor::sequential())
}

pub fn generate_connected_bounded_with(n: usize, delta_max: usize, ex: &Executor) -> Result<Vec<Graph>, GenerateError> {
    if n == 0 || n > GENERATOR_LIMIT {
        return Err(GenerateError::OutOfRange(n));
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1).expect("one vertex")];
    for m in 2..=n {
        let children: Vec<Vec<CanonicalCode>> = ex.map(&level, |g| extensions(g, delta_max));
        let codes: BTreeSet<CanonicalCode> = children.into_iter().flatten().collect();
        level = codes.iter().map(CanonicalCode::to_graph).collect();
        debug_assert!(level.iter().all(|g| g.order() == m));
    }
    Ok(level)
}

/// Canonical codes of every one-vertex extension of `g`.
fn extensions(g: &Graph, delta_max: usize) -> Vec<CanonicalCode> {
    let n = g.order();
    let open: Vec<usize> = (0..n).filter(|&v| g.degree(v) < delta_max).collect();
    let mut out = Vec::new();
    for subset in 1u64..(1 << open.len()) {
        if subset.count_ones() as usize > delta_max {
            continue;
        }
        let mut rows: Vec<u64> = g.rows().to_vec();
        let mut new_row = 0u64;
        for (i, &v) in open.iter().enumerate() {
            if subset >> i & 1 == 1 {
                rows[v] |= 1 << n;
                new_row |= 1 << v;
            }
        }
        rows.push(new_row);
        let child = Graph::from_rows(rows).expect("extension stays simple");
        out.push(canonical_code(&child).expect("generator limit is below the canonical limit"));
    }
    out
}
