//! Simple undirected graphs over `0..n` with bitmap adjacency rows.

use crate::bitset::{words_for, VertexSet};
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`Graph`].
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

/// Pair counts over a vertex set, as returned by [`Graph::classify_set`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SetClass {
    pub is_clique: bool,
    pub is_stable: bool,
    pub edge_count: usize,
    pub nonedge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph too large: {n}");
        let words = words_for(n);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidParameters(format!("n = {n} exceeds {MAX_VERTICES}")));
        }
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n).complement()
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Disjoint union of `self` followed by `other` (vertices of `other` shifted by `self.n()`).
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, self.n + v);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    /// Neighborhood bitmap row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v))
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u * self.words + (v >> 6)] >> (v & 63)) & 1 == 1
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u * self.words + (v >> 6)] |= 1u64 << (v & 63);
        self.adj[v * self.words + (u >> 6)] |= 1u64 << (u & 63);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + (v >> 6)] &= !(1u64 << (v & 63));
        self.adj[v * self.words + (u >> 6)] &= !(1u64 << (u & 63));
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if present {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbors of `v` inside `set`.
    #[inline]
    pub fn degree_in(&self, v: usize, set: &VertexSet) -> usize {
        set.intersection_len(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            let full = VertexSet::full(self.n);
            let start = u * self.words;
            for (i, w) in full.words().iter().enumerate() {
                g.adj[start + i] = w & !self.adj[start + i];
            }
            g.adj[start + (u >> 6)] &= !(1u64 << (u & 63));
        }
        g
    }

    /// Subgraph induced by `vertices`, relabeled `0..k` in the given order.
    /// The returned map sends new labels back to the original ones.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut seen = VertexSet::new(self.n);
        for &v in vertices {
            if seen.contains(v) {
                return Err(Error::InvalidParameters(format!("vertex {v} listed twice")));
            }
            seen.insert(v);
        }
        Ok((self.induced_unchecked(vertices), vertices.to_vec()))
    }

    pub(crate) fn induced_unchecked(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn induced_set(&self, set: &VertexSet) -> Graph {
        self.induced_unchecked(&set.to_vec())
    }

    /// Edge and non-edge counts over the unordered pairs of `vertices`.
    pub fn classify_set(&self, vertices: &[usize]) -> Result<SetClass> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let set = VertexSet::from_iter_with_capacity(self.n, vertices.iter().copied());
        Ok(self.classify_vertex_set(&set))
    }

    pub fn classify_vertex_set(&self, set: &VertexSet) -> SetClass {
        let size = set.len();
        let twice: usize = set.iter().map(|v| self.degree_in(v, set)).sum();
        let edge_count = twice / 2;
        let nonedge_count = size * size.saturating_sub(1) / 2 - edge_count;
        SetClass {
            is_clique: nonedge_count == 0,
            is_stable: edge_count == 0,
            edge_count,
            nonedge_count,
        }
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let size = set.len();
        set.iter().all(|v| self.degree_in(v, set) + 1 == size)
    }

    pub fn is_stable(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.degree_in(v, set) == 0)
    }

    /// True when the induced subgraph on `set` contains no induced `P3`,
    /// i.e. it is a disjoint union of cliques.
    pub fn is_cluster(&self, set: &VertexSet) -> bool {
        for u in set.iter() {
            let mut closed_u = VertexSet::from_words(self.n, self.row(u));
            closed_u.intersect_with(set.words());
            closed_u.insert(u);
            for w in closed_u.iter().filter(|&w| w != u) {
                let mut closed_w = VertexSet::from_words(self.n, self.row(w));
                closed_w.intersect_with(set.words());
                closed_w.insert(w);
                if closed_w != closed_u {
                    return false;
                }
            }
        }
        true
    }

    /// Plain edge-list text: `n m` on the first line, then one `u v` per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        });
        let mut next = |what: &str| -> Result<usize> {
            tokens
                .next()
                .unwrap_or_else(|| Err(Error::Parse(format!("missing {what}"))))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let u = next("edge endpoint")?;
            let v = next("edge endpoint")?;
            edges.push((u, v));
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing tokens after edge list".into()));
        }
        Graph::from_edges(n, &edges)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_path_and_errors() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::from_edges(0, &[]).unwrap().n(), 0);
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::InvalidVertex { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn complement_examples() {
        let p3 = Graph::path(3);
        assert_eq!(p3.complement().edges(), vec![(0, 2)]);
        assert_eq!(Graph::complete(4).complement().edge_count(), 0);
        let big = Graph::cycle(70);
        assert_eq!(big.complement().complement(), big);
        assert_eq!(big.complement().edge_count(), 70 * 69 / 2 - 70);
    }

    #[test]
    fn induced_examples() {
        let c5 = Graph::cycle(5);
        let (g, map) = c5.induced(&[1, 2, 3]).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(c5.induced(&[]).unwrap().0.n(), 0);
        assert_eq!(Graph::complete(5).induced(&[0, 2, 4]).unwrap().0, Graph::complete(3));
        assert!(matches!(c5.induced(&[7]), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn classify_examples() {
        let c4 = Graph::cycle(4);
        let c = c4.classify_set(&[0, 1, 2, 3]).unwrap();
        assert_eq!(c.nonedge_count, 2);
        assert!(!c.is_clique && !c.is_stable);
        let single = c4.classify_set(&[2]).unwrap();
        assert!(single.is_clique && single.is_stable);
        let mut k6 = Graph::complete(6);
        k6.remove_edge(0, 1);
        assert_eq!(k6.classify_set(&[0, 1, 2]).unwrap().nonedge_count, 1);
        assert!(matches!(c4.classify_set(&[4]), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn cluster_detection() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(2));
        assert!(g.is_cluster(&g.vertex_set()));
        assert!(!Graph::path(3).is_cluster(&VertexSet::full(3)));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::petersen();
        let text = g.to_edge_list();
        assert!(text.starts_with("10 15\n"));
        assert_eq!(Graph::from_edge_list(&text).unwrap(), g);
        assert!(matches!(Graph::from_edge_list("3 1\n0"), Err(Error::Parse(_))));
    }
}
