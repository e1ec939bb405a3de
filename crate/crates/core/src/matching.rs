//! Maximum cardinality matching in general graphs (Edmonds' blossom
//! algorithm), plus an exhaustive oracle for small graphs.

use serde::Serialize;

use crate::graph::Graph;

/// Edge budget for [`matching_number_bruteforce`].
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 24;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("brute-force matching is limited to {BRUTE_FORCE_EDGE_LIMIT} edges, graph has {0}")]
pub struct EdgeBudgetExceeded(pub usize);

/// A set of pairwise disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
    pub size: usize,
}

impl Matching {
    /// Checks disjointness and that every edge belongs to `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut used = 0u64;
        self.edges.len() == self.size
            && self.edges.iter().all(|&(u, v)| {
                let ok = u < g.order() && v < g.order() && g.has_edge(u, v) && used & (1 << u | 1 << v) == 0;
                used |= 1 << u | 1 << v;
                ok
            })
    }
}

struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        Self {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS over alternating paths from `root`; returns an exposed endpoint
    /// of an augmenting path, or `NONE`.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.g.order();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let mut nbrs = self.g.neighbors(v);
            while nbrs != 0 {
                let to = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        NONE
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.g.order();
        // greedy start
        for v in 0..n {
            if self.mate[v] != NONE {
                continue;
            }
            let mut nbrs = self.g.neighbors(v);
            while nbrs != 0 {
                let u = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if self.mate[u] == NONE {
                    self.mate[u] = v;
                    self.mate[v] = u;
                    break;
                }
            }
        }
        for v in 0..n {
            if self.mate[v] != NONE {
                continue;
            }
            let mut u = self.find_path(v);
            while u != NONE {
                let pv = self.parent[u];
                let ppv = self.mate[pv];
                self.mate[u] = pv;
                self.mate[pv] = u;
                u = ppv;
            }
        }
        self.mate
    }
}

/// A maximum cardinality matching of `g`.
pub fn maximum_matching(g: &Graph) -> Matching {
    let mate = Blossom::new(g).run();
    let edges: Vec<(usize, usize)> =
        mate.iter().enumerate().filter(|&(v, &m)| m != NONE && v < m).map(|(v, &m)| (v, m)).collect();
    Matching { size: edges.len(), edges }
}

/// μ(G) from the blossom algorithm.
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).size
}

/// μ(G) by exhaustive branch and bound: the lowest undecided vertex is
/// either left unmatched or matched to one of its undecided neighbours.
pub fn matching_number_bruteforce(g: &Graph) -> Result<usize, EdgeBudgetExceeded> {
    let m = g.edge_count();
    if m > BRUTE_FORCE_EDGE_LIMIT {
        return Err(EdgeBudgetExceeded(m));
    }
    fn go(g: &Graph, free: u64, size: usize, best: &mut usize) {
        // bound: at most half the undecided vertices can still be matched
        let upper = size + (free.count_ones() as usize) / 2;
        if upper <= *best {
            return;
        }
        if free == 0 {
            *best = size;
            return;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut nbrs = g.neighbors(v) & rest;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            go(g, rest & !(1 << u), size + 1, best);
        }
        go(g, rest, size, best);
    }
    let mut best = 0;
    go(g, g.vertex_mask(), 0, &mut best);
    Ok(best)
}
