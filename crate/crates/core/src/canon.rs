//! Canonical labelling for small graphs.
//!
//! The canonical code is the lexicographically smallest upper-triangle bit
//! string over all labellings reached by an individualisation-refinement
//! search. Every step of the search depends only on the graph structure,
//! never on the input labels, so isomorphic graphs produce the same code.
//! The search is exact and exponential in the worst case; it is meant for
//! graphs of at most [`CANONICAL_LIMIT`] vertices.

use crate::graph::Graph;

/// Largest vertex count accepted by [`canonical_code`].
pub const CANONICAL_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("canonical codes are limited to {CANONICAL_LIMIT} vertices, got {0}")]
pub struct CanonError(pub usize);

/// Isomorphism-invariant encoding of a graph on at most 16 vertices.
///
/// `bits` holds the upper triangle in graph6 order, first pair in the most
/// significant used position, so numeric order is lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    n: u8,
    bits: u128,
}

impl CanonicalCode {
    pub fn order(&self) -> usize {
        usize::from(self.n)
    }

    /// Big-endian byte form: vertex count followed by the 16 code bytes.
    pub fn to_bytes(&self) -> [u8; 17] {
        let mut out = [0u8; 17];
        out[0] = self.n;
        out[1..].copy_from_slice(&self.bits.to_be_bytes());
        out
    }

    /// The canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let pairs = n * (n - 1) / 2;
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (pairs - 1 - k) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, edges).expect("code holds a valid graph")
    }
}

/// Canonical code of `g`.
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, CanonError> {
    canonical_labeling(g).map(|(code, _)| code)
}

/// Canonical code together with a labelling `order` such that vertex
/// `order[pos]` of `g` sits at position `pos` of the canonical graph.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalCode, Vec<usize>), CanonError> {
    let n = g.order();
    if n > CANONICAL_LIMIT {
        return Err(CanonError(n));
    }
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(g, &mut cells);
    let mut best: Option<(u128, Vec<usize>)> = None;
    search(g, cells, &mut best);
    let (bits, order) = best.expect("search visits at least one leaf");
    Ok((CanonicalCode { n: n as u8, bits }, order))
}

/// Splits cells by neighbour counts into every current cell until the
/// partition is equitable. Sub-cells are ordered by their count vectors.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| cell_mask(c)).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks.iter().map(|m| (g.neighbors(v) & m).count_ones() as u8).collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let split = next.len() > cells.len();
        *cells = next;
        if !split {
            return;
        }
    }
}

fn cell_mask(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

/// True when every cell is a clique or an independent set and every pair of
/// cells is joined completely or not at all. Then all leaves below this node
/// give the same code.
fn is_homogeneous(g: &Graph, cells: &[Vec<usize>]) -> bool {
    let masks: Vec<u64> = cells.iter().map(|c| cell_mask(c)).collect();
    cells.iter().enumerate().all(|(ci, cell)| {
        masks.iter().enumerate().all(|(cj, &m)| {
            let expected = |v: usize| {
                let k = (g.neighbors(v) & m).count_ones() as usize;
                (k, if ci == cj { cell.len() - 1 } else { cells[cj].len() })
            };
            let (k0, full) = expected(cell[0]);
            (k0 == 0 || k0 == full) && cell.iter().all(|&v| expected(v).0 == k0)
        })
    })
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(u128, Vec<usize>)>) {
    let target = cells.iter().position(|c| c.len() > 1);
    let Some(t) = target.filter(|_| !is_homogeneous(g, &cells)) else {
        let order: Vec<usize> = cells.into_iter().flatten().collect();
        let code = leaf_code(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    for &v in &cells[t] {
        let mut child = Vec::with_capacity(cells.len() + 1);
        child.extend(cells[..t].iter().cloned());
        child.push(vec![v]);
        child.push(cells[t].iter().copied().filter(|&w| w != v).collect());
        child.extend(cells[t + 1..].iter().cloned());
        refine(g, &mut child);
        search(g, child, best);
    }
}

fn leaf_code(g: &Graph, order: &[usize]) -> u128 {
    let mut bits = 0u128;
    for j in 1..order.len() {
        for i in 0..j {
            bits = (bits << 1) | u128::from(g.has_edge(order[i], order[j]));
        }
    }
    bits
}
