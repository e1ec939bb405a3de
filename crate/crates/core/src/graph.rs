//! Simple undirected graphs stored as 64-bit adjacency rows.

use std::fmt;

/// Largest vertex count a [`Graph`] can hold (one `u64` row per vertex).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph must have between 1 and {MAX_VERTICES} vertices, got {0}")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// A simple undirected graph on `n` vertices.
///
/// Row `v` is the neighbourhood bitmask of vertex `v`. Rows are kept
/// symmetric with an empty diagonal, so graphs are immutable values once
/// built and can be shared freely across threads.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Self { n, rows: vec![0; n] })
    }

    /// Builds a graph from an edge list. Repeated edges (in either
    /// orientation) collapse to a single edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating symmetry and the
    /// diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Self::empty(n)?;
        for (u, &row) in rows.iter().enumerate() {
            if row >> u & 1 == 1 {
                return Err(GraphError::SelfLoop(u));
            }
            let mut bits = row;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Δ(G), the largest vertex degree.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let mut above = self.rows[u] & !low_mask(u + 1);
            std::iter::from_fn(move || {
                if above == 0 {
                    return None;
                }
                let v = above.trailing_zeros() as usize;
                above &= above - 1;
                Some((u, v))
            })
        })
    }

    /// Bitmask with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn is_connected(&self) -> bool {
        let all = self.vertex_mask();
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen == all
    }

    /// True iff the graph is the cycle `C_m`: connected, `m` vertices, all
    /// degrees equal to two.
    pub fn is_cycle_of_length(&self, m: usize) -> bool {
        self.n == m && m >= 3 && (0..self.n).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    /// Relabels vertices so that old vertex `v` becomes `perm[v]`.
    ///
    /// # Panics
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut seen = 0u64;
        for &p in perm {
            assert!(p < self.n && seen >> p & 1 == 0, "not a permutation");
            seen |= 1 << p;
        }
        let mut rows = vec![0u64; self.n];
        for (u, v) in self.edges() {
            rows[perm[u]] |= 1 << perm[v];
            rows[perm[v]] |= 1 << perm[u];
        }
        Graph { n: self.n, rows }
    }

    /// Dense 0/1 adjacency matrix in row-major order.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for (u, v) in self.edges() {
            a[u * n + v] = 1.0;
            a[v * n + u] = 1.0;
        }
        a
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

#[inline]
pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
    }

    /// Star `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn from_edges_examples() {
        let c3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(c3.max_degree(), 2);
        assert_eq!(c3.edge_count(), 3);

        let k1 = Graph::from_edges(1, []).unwrap();
        assert_eq!(k1.max_degree(), 0);

        let k2 = Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(k2.edge_count(), 1);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(0, []), Err(GraphError::VertexCount(0)));
        assert_eq!(Graph::from_edges(65, []), Err(GraphError::VertexCount(65)));
    }

    #[test]
    fn from_rows_symmetrizes_and_validates() {
        let g = Graph::from_rows(vec![0b10, 0, 0]).unwrap();
        assert!(g.has_edge(1, 0));
        assert_eq!(Graph::from_rows(vec![0b1]), Err(GraphError::SelfLoop(0)));
        assert!(matches!(Graph::from_rows(vec![0b100, 0]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })));
    }

    #[test]
    fn connectivity() {
        assert!(cycle(5).is_connected());
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
        assert!(path(64).is_connected());
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(cycle(7).max_degree(), 2);
        assert_eq!(star(4).max_degree(), 4);
    }

    #[test]
    fn cycle_recognition() {
        assert!(cycle(7).is_cycle_of_length(7));
        assert!(!cycle(7).is_cycle_of_length(5));
        assert!(!path(7).is_cycle_of_length(7));
        // two disjoint triangles are 2-regular but not a cycle
        let tt = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!tt.is_cycle_of_length(6));
    }

    #[test]
    fn edges_are_sorted_and_complete() {
        let k4 = complete(4);
        let e: Vec<_> = k4.edges().collect();
        assert_eq!(e, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let sum: usize = k4.degrees().iter().sum();
        assert_eq!(sum, 2 * k4.edge_count());
    }

    #[test]
    fn permuted_preserves_degree_multiset() {
        let g = path(5);
        let h = g.permuted(&[4, 2, 0, 1, 3]);
        let mut a = g.degrees();
        let mut b = h.degrees();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(h.edge_count(), 4);
        assert!(h.has_edge(4, 2));
    }
}
