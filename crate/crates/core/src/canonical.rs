//! Canonical labeling for small graphs and isomorphism-class enumeration.
//!
//! The canonical code is the lexicographically smallest graph6-order adjacency
//! string over all vertex orderings that list vertices by nondecreasing degree.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Largest order handled by [`canonical_code`] (the code must fit in 64 bits).
pub const MAX_CANONICAL_N: usize = 11;

/// Canonical code of `g`: equal for two graphs iff they are isomorphic.
pub fn canonical_code(g: &Graph) -> u64 {
    canonical_labeling(g).0
}

/// Canonical code plus the ordering `order[position] = vertex` realizing it.
pub fn canonical_labeling(g: &Graph) -> (u64, Vec<usize>) {
    let n = g.n();
    assert!(
        n <= MAX_CANONICAL_N,
        "canonical labeling supports n <= {MAX_CANONICAL_N}"
    );
    if n <= 1 {
        return (0, (0..n).collect());
    }
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by_key(|&v| (deg[v], v));
    let total_bits = n * (n - 1) / 2;
    let mut search = Search {
        g,
        deg: &deg,
        slot_degree: sorted.iter().map(|&v| deg[v]).collect(),
        total_bits,
        best: u64::MAX,
        best_order: Vec::new(),
        order: Vec::with_capacity(n),
        used: 0,
    };
    search.run(0, 0);
    (search.best, search.best_order)
}

struct Search<'a> {
    g: &'a Graph,
    deg: &'a [usize],
    slot_degree: Vec<usize>,
    total_bits: usize,
    best: u64,
    best_order: Vec<usize>,
    order: Vec<usize>,
    used: u64,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, prefix: u64) {
        let n = self.g.n();
        if pos == n {
            if prefix < self.best {
                self.best = prefix;
                self.best_order = self.order.clone();
            }
            return;
        }
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.deg[v] != self.slot_degree[pos] {
                continue;
            }
            let mut p = prefix;
            for &u in &self.order {
                p = (p << 1) | self.g.has_edge(u, v) as u64;
            }
            let bits = pos * pos.saturating_sub(1) / 2 + pos;
            // compare with the best code's prefix of the same length
            if self.best != u64::MAX {
                let best_prefix = self.best >> (self.total_bits - bits);
                if p > best_prefix {
                    continue;
                }
            }
            self.order.push(v);
            self.used |= 1 << v;
            self.run(pos + 1, p);
            self.used &= !(1 << v);
            self.order.pop();
        }
    }
}

/// Relabels `g` into its canonical form.
pub fn canonical_form(g: &Graph) -> Graph {
    let (_, order) = canonical_labeling(g);
    g.induced_unchecked(&order)
}

/// One representative (in canonical form) of every isomorphism class of graphs
/// on exactly `n` vertices, sorted by canonical code.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::new(0)];
    for k in 1..=n {
        level = extend_level(&level, k, |_| true);
    }
    level
}

/// Extends each graph on `k - 1` vertices by one new vertex in every possible
/// way, keeping canonical representatives accepted by `keep`.
pub(crate) fn extend_level<F: Fn(&Graph) -> bool>(prev: &[Graph], k: usize, keep: F) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for base in prev {
        for mask in 0u64..(1 << (k - 1)) {
            let mut g = Graph::new(k);
            for (u, v) in base.edges() {
                g.add_edge(u, v);
            }
            for u in 0..k - 1 {
                if mask >> u & 1 == 1 {
                    g.add_edge(u, k - 1);
                }
            }
            let (code, order) = canonical_labeling(&g);
            if seen.insert(code) {
                let canon = g.induced_unchecked(&order);
                if keep(&canon) {
                    out.push((code, canon));
                }
            }
        }
    }
    out.sort_by_key(|(c, _)| *c);
    out.into_iter().map(|(_, g)| g).collect()
}
