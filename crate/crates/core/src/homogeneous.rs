//! Exact maximum homogeneous sets by clique branch-and-bound.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomogeneousKind {
    Clique,
    Stable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousSet {
    pub size: usize,
    pub witness: Vec<usize>,
    pub kind: HomogeneousKind,
}

/// Maximum clique of `g` (greedy-coloring bound, MCQ style).
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut best = Vec::new();
    if n == 0 {
        return best;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut current = Vec::new();
    expand(g, &mut current, order, &mut best);
    best.sort_unstable();
    best
}

/// Greedy sequential coloring of `cand` (in the given order); returns the
/// vertices sorted by color together with their color numbers (1-based).
fn color_sort(g: &Graph, cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut classes: Vec<VertexSet> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        let slot = classes.iter().position(|c| c.is_disjoint(g.row(v)));
        match slot {
            Some(i) => {
                classes[i].insert(v);
                members[i].push(v);
            }
            None => {
                let mut c = VertexSet::new(n);
                c.insert(v);
                classes.push(c);
                members.push(vec![v]);
            }
        }
    }
    let mut verts = Vec::with_capacity(cand.len());
    let mut colors = Vec::with_capacity(cand.len());
    for (i, m) in members.into_iter().enumerate() {
        for v in m {
            verts.push(v);
            colors.push(i + 1);
        }
    }
    (verts, colors)
}

fn expand(g: &Graph, current: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>) {
    let (verts, colors) = color_sort(g, &cand);
    let mut remaining = VertexSet::from_iter_with_capacity(g.n(), cand.iter().copied());
    for idx in (0..verts.len()).rev() {
        if current.len() + colors[idx] <= best.len() {
            return;
        }
        let v = verts[idx];
        current.push(v);
        let next: Vec<usize> = cand
            .iter()
            .copied()
            .filter(|&u| remaining.contains(u) && g.has_edge(u, v))
            .collect();
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(g, current, next, best);
        }
        current.pop();
        remaining.remove(v);
    }
}

/// `h(G)`: the larger of the clique number and the independence number.
/// Ties report the clique. The empty graph has `h = 0`.
pub fn max_homogeneous(g: &Graph) -> HomogeneousSet {
    let clique = max_clique(g);
    let stable = max_clique(&g.complement());
    if stable.len() > clique.len() {
        HomogeneousSet {
            size: stable.len(),
            witness: stable,
            kind: HomogeneousKind::Stable,
        }
    } else {
        HomogeneousSet {
            size: clique.len(),
            witness: clique,
            kind: HomogeneousKind::Clique,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    fn brute_h(g: &Graph) -> usize {
        let n = g.n();
        (0u32..(1 << n))
            .filter(|&m| {
                let s: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                let c = g.classify_set(&s).unwrap();
                c.is_clique || c.is_stable
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn examples() {
        assert_eq!(max_homogeneous(&Graph::cycle(5)).size, 2);
        assert_eq!(max_homogeneous(&Graph::complete(7)).size, 7);
        let p = max_homogeneous(&Graph::petersen());
        assert_eq!(p.size, 4);
        assert_eq!(p.kind, HomogeneousKind::Stable);
        assert_eq!(brute_h(&Graph::petersen()), 4);
        assert!(Graph::petersen().is_stable(&VertexSet::from_iter_with_capacity(10, p.witness)));
        assert_eq!(max_homogeneous(&Graph::new(0)).size, 0);
    }

    proptest! {
        #[test]
        fn matches_subset_brute_force(g in arb_graph(7)) {
            let h = max_homogeneous(&g);
            prop_assert_eq!(h.size, brute_h(&g));
            let set = VertexSet::from_iter_with_capacity(g.n(), h.witness.iter().copied());
            prop_assert_eq!(set.len(), h.size);
            match h.kind {
                HomogeneousKind::Clique => prop_assert!(g.is_clique(&set)),
                HomogeneousKind::Stable => prop_assert!(g.is_stable(&set)),
            }
        }

        #[test]
        fn complement_invariant(g in arb_graph(14)) {
            prop_assert_eq!(max_homogeneous(&g).size, max_homogeneous(&g.complement()).size);
        }
    }
}
