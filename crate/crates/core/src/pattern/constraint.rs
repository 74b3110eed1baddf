//! Hereditary per-part membership predicates.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::induced::{find_induced_copy, is_isomorphic};

/// Membership predicate for one part of a pattern. Every kind is hereditary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartConstraint {
    /// Edgeless graphs.
    Stable,
    /// Complete graphs.
    Clique,
    /// Graphs with at most one non-edge.
    AtMostOneNonEdge,
    /// Induced subgraphs of the payload.
    Iota(Graph),
    /// Disjoint unions of an induced subgraph of the payload with a clique.
    UnionClique(Graph),
    /// Joins of an induced subgraph of the payload with a clique.
    JoinClique(Graph),
    /// Complete graphs, or a complete graph plus one vertex of degree at most one.
    CliquePlusPendant,
    /// Complete graphs and complements of stars.
    CliqueOrAntistar,
    /// Graphs containing none of the payload graphs as an induced subgraph.
    ForbList(Vec<Graph>),
}

impl PartConstraint {
    /// `Forb(P3)`: disjoint unions of cliques.
    pub fn p3_free() -> Self {
        PartConstraint::ForbList(vec![Graph::path(3)])
    }

    pub fn name(&self) -> String {
        match self {
            PartConstraint::Stable => "stable".into(),
            PartConstraint::Clique => "clique".into(),
            PartConstraint::AtMostOneNonEdge => "at-most-one-non-edge".into(),
            PartConstraint::Iota(j) => format!("iota({})", crate::graph6::encode_graph6(j)),
            PartConstraint::UnionClique(j) => {
                format!("union-clique({})", crate::graph6::encode_graph6(j))
            }
            PartConstraint::JoinClique(j) => {
                format!("join-clique({})", crate::graph6::encode_graph6(j))
            }
            PartConstraint::CliquePlusPendant => "clique-plus-pendant".into(),
            PartConstraint::CliqueOrAntistar => "clique-or-antistar".into(),
            PartConstraint::ForbList(list) => format!(
                "forb({})",
                list.iter()
                    .map(crate::graph6::encode_graph6)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    pub(crate) fn is_p3_only(&self) -> bool {
        matches!(self, PartConstraint::ForbList(list)
            if list.len() == 1 && is_isomorphic(&list[0], &Graph::path(3)))
    }
}

fn is_complete(g: &Graph) -> bool {
    g.edge_count() == g.n() * g.n().saturating_sub(1) / 2
}

fn without(g: &Graph, removed: &VertexSet) -> Graph {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !removed.contains(v)).collect();
    g.induced_unchecked(&keep)
}

fn in_iota(g: &Graph, j: &Graph) -> bool {
    g.n() <= j.n() && find_induced_copy(j, g).is_some()
}

/// Exact membership of `g` in the class described by `c`.
pub fn satisfies_constraint(g: &Graph, c: &PartConstraint) -> bool {
    let n = g.n();
    match c {
        PartConstraint::Stable => g.edge_count() == 0,
        PartConstraint::Clique => is_complete(g),
        PartConstraint::AtMostOneNonEdge => n * n.saturating_sub(1) / 2 - g.edge_count() <= 1,
        PartConstraint::Iota(j) => in_iota(g, j),
        PartConstraint::UnionClique(j) => {
            if in_iota(g, j) {
                return true;
            }
            // the clique side, when nonempty, is a complete connected component
            let mut done = VertexSet::new(n);
            for v in 0..n {
                if done.contains(v) {
                    continue;
                }
                let mut comp = g.neighbors(v);
                comp.insert(v);
                done.union_with(comp.words());
                let is_complete_component = comp
                    .iter()
                    .all(|u| g.degree(u) + 1 == comp.len() && g.neighbors(u).is_subset(comp.words()));
                if is_complete_component && in_iota(&without(g, &comp), j) {
                    return true;
                }
            }
            false
        }
        PartConstraint::JoinClique(j) => {
            let universal = VertexSet::from_iter_with_capacity(n, (0..n).filter(|&v| g.degree(v) + 1 == n));
            in_iota(&without(g, &universal), j)
        }
        PartConstraint::CliquePlusPendant => {
            is_complete(g)
                || (0..n)
                    .any(|v| g.degree(v) <= 1 && is_complete(&without(g, &VertexSet::from_iter_with_capacity(n, [v]))))
        }
        PartConstraint::CliqueOrAntistar => {
            is_complete(g)
                || (0..n)
                    .any(|v| g.degree(v) == 0 && is_complete(&without(g, &VertexSet::from_iter_with_capacity(n, [v]))))
        }
        PartConstraint::ForbList(list) => {
            if c.is_p3_only() {
                return g.is_cluster(&g.vertex_set());
            }
            list.iter().all(|f| f.n() > n || find_induced_copy(g, f).is_none())
        }
    }
}
