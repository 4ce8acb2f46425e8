//! Small simple graphs with bitset adjacency.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

/// Largest vertex count for which a dense adjacency matrix is built.
pub const MAX_DENSE_VERTICES: usize = 8192;

#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<FixedBitSet>,
}

/// Result of an all-pairs BFS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Diameter {
    Finite(usize),
    Disconnected,
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Disconnected => f.write_str("disconnected"),
        }
    }
}

impl SimpleGraph {
    pub fn new(n: usize) -> SimpleGraph {
        SimpleGraph {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Builds a graph from a symmetric predicate on vertex pairs.
    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool + Sync) -> SimpleGraph {
        use rayon::prelude::*;
        let adj = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    if i != j && edge(i, j) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        SimpleGraph { adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "loops are not allowed");
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.adj.iter().enumerate() {
            out.extend(row.ones().filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.vertex_count()).all(|v| self.degree(v) == k)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .into_iter()
            .all(|(a, b)| self.adj[a].is_disjoint(&self.adj[b]))
    }

    /// Distances from `src`; `None` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for u in self.adj[v].ones() {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// A shortest path from `a` to `b`, inclusive.
    pub fn shortest_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut prev = vec![usize::MAX; n];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                let mut path = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for u in self.adj[v].ones() {
                if prev[u] == usize::MAX {
                    prev[u] = v;
                    queue.push_back(u);
                }
            }
        }
        None
    }

    /// Largest BFS eccentricity; `None` for the empty graph.
    pub fn diameter(&self) -> Option<Diameter> {
        use rayon::prelude::*;
        let n = self.vertex_count();
        if n == 0 {
            return None;
        }
        let ecc: Vec<Option<usize>> = (0..n)
            .into_par_iter()
            .map(|v| {
                let d = self.bfs(v);
                d.iter().try_fold(0, |m, x| x.map(|x| m.max(x)))
            })
            .collect();
        Some(if ecc.iter().any(Option::is_none) {
            Diameter::Disconnected
        } else {
            Diameter::Finite(ecc.into_iter().flatten().max().unwrap_or(0))
        })
    }

    /// Connected components, each sorted, listed by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.adj[v].ones() {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced on `vs`, vertex `i` of the result being `vs[i]`.
    pub fn induced(&self, vs: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::new(vs.len());
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Same vertices, complemented edges.
    pub fn complement(&self) -> SimpleGraph {
        let n = self.vertex_count();
        let mut adj = self.adj.clone();
        for (i, row) in adj.iter_mut().enumerate() {
            row.toggle_range(..);
            row.set(i, false);
        }
        debug_assert!(adj.iter().all(|r| r.len() == n));
        SimpleGraph { adj }
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), each sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        let x = FixedBitSet::with_capacity(n);
        self.bron_kerbosch(&mut Vec::new(), p, x, &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        mut p: FixedBitSet,
        mut x: FixedBitSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_clear() && x.is_clear() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| self.adj[u].intersection_count(&p))
            .unwrap();
        let candidates: Vec<usize> = p.difference(&self.adj[pivot]).collect();
        for v in candidates {
            let mut p2 = p.clone();
            p2.intersect_with(&self.adj[v]);
            let mut x2 = x.clone();
            x2.intersect_with(&self.adj[v]);
            r.push(v);
            self.bron_kerbosch(r, p2, x2, out);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }

    pub fn max_clique_size(&self) -> usize {
        if self.vertex_count() == 0 {
            return 0;
        }
        self.maximal_cliques()
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut s = String::from("graph cuts {\n");
        for (i, l) in labels.iter().enumerate() {
            s.push_str(&format!("  {i} [label=\"{l}\"];\n"));
        }
        for (a, b) in self.edges() {
            s.push_str(&format!("  {a} -- {b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimpleGraph({} vertices, edges {:?})",
            self.vertex_count(),
            self.edges()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> SimpleGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        SimpleGraph::from_edges(10, &e)
    }

    #[test]
    fn petersen_invariants() {
        let g = petersen();
        assert_eq!(g.edge_count(), 15);
        assert!(g.is_regular(3));
        assert!(g.is_triangle_free());
        assert_eq!(g.diameter(), Some(Diameter::Finite(2)));
        assert_eq!(g.max_clique_size(), 2);
        assert_eq!(g.maximal_cliques().len(), 15);
    }

    #[test]
    fn edgeless_graph() {
        let g = SimpleGraph::new(3);
        assert_eq!(g.diameter(), Some(Diameter::Disconnected));
        assert_eq!(g.components().len(), 3);
        let c = g.complement();
        assert_eq!(c.edge_count(), 3);
        assert_eq!(c.maximal_cliques(), vec![vec![0, 1, 2]]);
        assert_eq!(SimpleGraph::new(0).diameter(), None);
    }

    #[test]
    fn paths_and_induced() {
        let g = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.shortest_path(0, 3), Some(vec![0, 1, 2, 3]));
        let h = g.induced(&[0, 2, 3]);
        assert_eq!(h.edges(), vec![(1, 2)]);
    }
}
