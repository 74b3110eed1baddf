//! s-star recognition and constructive finders for large structured induced
//! subgraphs.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homogeneous::max_clique;
use crate::induced::{is_isomorphic, Embedding};

/// Smallest set `S` with `|S| <= s` (lexicographically first among those of
/// minimum size) such that `V - S` is homogeneous and every vertex of `S` is
/// complete or anticomplete to `V - S`.
pub fn is_s_star(g: &Graph, s: usize) -> Option<Vec<usize>> {
    let n = g.n();
    for size in 0..=s.min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if is_core_set(g, &combo) {
                return Some(combo);
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && combo[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    None
}

fn is_core_set(g: &Graph, s: &[usize]) -> bool {
    let n = g.n();
    let mut rest = VertexSet::full(n);
    for &v in s {
        rest.remove(v);
    }
    if !(g.is_clique(&rest) || g.is_stable(&rest)) {
        return false;
    }
    s.iter().all(|&v| {
        let k = rest.intersection_len(g.row(v));
        k == 0 || k == rest.len()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// Host has at least two non-edges.
    TwoNonedge,
    /// Host is neither complete nor edgeless.
    Nonclique,
    /// Neither the host nor its complement is edgeless or a star.
    Nonstar,
}

impl std::str::FromStr for WitnessKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two_nonedge" | "two-nonedge" => Ok(WitnessKind::TwoNonedge),
            "nonclique" => Ok(WitnessKind::Nonclique),
            "nonstar" => Ok(WitnessKind::Nonstar),
            _ => Err(Error::Parse(format!("unknown witness kind {s:?}"))),
        }
    }
}

/// An induced subgraph of a named shape together with its placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundWitness {
    pub shape: String,
    pub graph: Graph,
    pub embedding: Embedding,
}

fn found(g: &Graph, shape: &str, vertices: Vec<usize>) -> FoundWitness {
    FoundWitness {
        shape: shape.to_string(),
        graph: g.induced_unchecked(&vertices),
        embedding: Embedding { map: vertices },
    }
}

fn nonedge_count(g: &Graph) -> usize {
    g.n() * g.n().saturating_sub(1) / 2 - g.edge_count()
}

fn is_edgeless(g: &Graph) -> bool {
    g.edge_count() == 0
}

/// `K_{1,n-1}` (with `K_1` counted as a star).
fn is_star(g: &Graph) -> bool {
    let n = g.n();
    n >= 1 && g.edge_count() == n - 1 && (0..n).any(|v| g.degree(v) == n - 1)
}

fn max_clique_within(g: &Graph, within: &[usize]) -> Vec<usize> {
    let sub = g.induced_unchecked(within);
    max_clique(&sub).into_iter().map(|i| within[i]).collect()
}

fn max_stable_within(g: &Graph, within: &[usize]) -> Vec<usize> {
    let sub = g.induced_unchecked(within).complement();
    max_clique(&sub).into_iter().map(|i| within[i]).collect()
}

/// Shape test for the two-non-edge finder: edgeless, an antistar, or a join of
/// `S3`, `C4` or the complement of `P3` with a complete graph.
pub fn is_two_nonedge_shape(j: &Graph) -> bool {
    if is_edgeless(j) || is_star(&j.complement()) {
        return true;
    }
    let n = j.n();
    let rest: Vec<usize> = (0..n).filter(|&v| j.degree(v) + 1 != n).collect();
    let core = j.induced_unchecked(&rest);
    [Graph::new(3), Graph::cycle(4), Graph::path(3).complement()]
        .iter()
        .any(|c| is_isomorphic(c, &core))
}

/// Shape test for the non-clique finder: `J` or its complement is a star or
/// has exactly one edge.
pub fn is_nonclique_shape(j: &Graph) -> bool {
    [j.clone(), j.complement()]
        .iter()
        .any(|x| is_star(x) || x.edge_count() == 1)
}

/// Shape test for the non-star finder: `J` or its complement has exactly one
/// edge, is a star minus one edge, or is a join of a 2-vertex graph with a
/// stable set.
pub fn is_nonstar_shape(j: &Graph) -> bool {
    let n = j.n();
    [j.clone(), j.complement()].iter().any(|x| {
        if x.edge_count() == 1 {
            return true;
        }
        // star minus an edge: K_{1,n-2} plus an isolated vertex
        let star_minus_edge = (0..n).any(|iso| {
            x.degree(iso) == 0 && {
                let keep: Vec<usize> = (0..n).filter(|&v| v != iso).collect();
                is_star(&x.induced_unchecked(&keep))
            }
        });
        // join of {u, v} with a stable set of size n - 2
        let join = (0..n).any(|u| {
            (u + 1..n).any(|v| {
                let rest: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
                rest.iter().all(|&w| x.has_edge(u, w) && x.has_edge(v, w))
                    && x.induced_unchecked(&rest).edge_count() == 0
            })
        });
        star_minus_edge || join
    })
}

/// Runs the constructive argument for `kind`, looking for an induced subgraph
/// on exactly `h_size` vertices of the promised shape. `Ok(None)` means the
/// construction's ingredients are absent in `g` (typically: `g` is too small).
pub fn find_witness(g: &Graph, h_size: usize, kind: WitnessKind) -> Result<Option<FoundWitness>> {
    if h_size < 3 {
        return Err(Error::InvalidParameters(format!("h_size = {h_size} is below 3")));
    }
    let result = match kind {
        WitnessKind::TwoNonedge => {
            if nonedge_count(g) < 2 {
                return Err(Error::HypothesisUnmet("fewer than two non-edges".into()));
            }
            two_nonedge(g, h_size)
        }
        WitnessKind::Nonclique => {
            if is_edgeless(g) || nonedge_count(g) == 0 {
                return Err(Error::HypothesisUnmet("graph is complete or edgeless".into()));
            }
            nonclique(g, h_size).or_else(|| complemented(g, h_size, nonclique))
        }
        WitnessKind::Nonstar => {
            let co = g.complement();
            if is_edgeless(g) || is_star(g) || is_edgeless(&co) || is_star(&co) {
                return Err(Error::HypothesisUnmet(
                    "graph or complement is edgeless or a star".into(),
                ));
            }
            nonstar(g, h_size).or_else(|| complemented(g, h_size, nonstar))
        }
    };
    Ok(result)
}

fn complemented(g: &Graph, h: usize, f: fn(&Graph, usize) -> Option<FoundWitness>) -> Option<FoundWitness> {
    let co = g.complement();
    f(&co, h).map(|w| found(g, &format!("complement of {}", w.shape), w.embedding.map))
}

fn two_nonedge(g: &Graph, h: usize) -> Option<FoundWitness> {
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    let stable = max_stable_within(g, &all);
    if stable.len() >= h {
        return Some(found(g, "edgeless", stable[..h].to_vec()));
    }
    for v in 0..n {
        let non: Vec<usize> = (0..n).filter(|&u| u != v && !g.has_edge(u, v)).collect();
        let clique = max_clique_within(g, &non);
        if clique.len() + 1 >= h {
            let mut verts = vec![v];
            verts.extend_from_slice(&clique[..h - 1]);
            return Some(found(g, "antistar", verts));
        }
    }
    // small cores from pairs of non-edges, then a clique in their common neighborhood
    let nonedges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    let mut cores: Vec<Vec<usize>> = Vec::new();
    for (i, &(a, b)) in nonedges.iter().enumerate() {
        for &(c, d) in &nonedges[i + 1..] {
            let mut core = vec![a, b, c, d];
            core.sort_unstable();
            core.dedup();
            if !cores.contains(&core) {
                cores.push(core);
            }
        }
    }
    for core in cores {
        if core.len() > h {
            continue;
        }
        let sub = g.induced_unchecked(&core);
        let shape = if is_isomorphic(&sub, &Graph::new(3)) {
            "S3"
        } else if is_isomorphic(&sub, &Graph::cycle(4)) {
            "C4"
        } else if is_isomorphic(&sub, &Graph::path(3).complement()) {
            "co-P3"
        } else {
            continue;
        };
        let common: Vec<usize> = (0..n)
            .filter(|&w| !core.contains(&w) && core.iter().all(|&x| g.has_edge(x, w)))
            .collect();
        let clique = max_clique_within(g, &common);
        if clique.len() + core.len() >= h {
            let mut verts = core.clone();
            verts.extend_from_slice(&clique[..h - core.len()]);
            return Some(found(g, &format!("join of {shape} with K{}", h - core.len()), verts));
        }
    }
    None
}

fn nonclique(g: &Graph, h: usize) -> Option<FoundWitness> {
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    let s = max_stable_within(g, &all);
    for v in (0..n).filter(|v| !s.contains(v)) {
        let nb: Vec<usize> = s.iter().copied().filter(|&x| g.has_edge(v, x)).collect();
        let non: Vec<usize> = s.iter().copied().filter(|&x| !g.has_edge(v, x)).collect();
        if nb.len() + 1 >= h {
            let mut verts = vec![v];
            verts.extend_from_slice(&nb[..h - 1]);
            return Some(found(g, "star", verts));
        }
        if !nb.is_empty() && non.len() + 2 >= h {
            let mut verts = vec![v, nb[0]];
            verts.extend_from_slice(&non[..h - 2]);
            return Some(found(g, "one edge", verts));
        }
    }
    None
}

fn nonstar(g: &Graph, h: usize) -> Option<FoundWitness> {
    let n = g.n();
    for u in 0..n {
        let nbrs: Vec<usize> = g.neighbors(u).to_vec();
        // a maximal induced star centered at u: a maximal stable set of leaves
        let leaves = max_stable_within(g, &nbrs);
        if leaves.len() < h.saturating_sub(2) {
            continue;
        }
        for v in (0..n).filter(|&v| v != u && !leaves.contains(&v)) {
            let nb: Vec<usize> = leaves.iter().copied().filter(|&x| g.has_edge(v, x)).collect();
            let non: Vec<usize> = leaves.iter().copied().filter(|&x| !g.has_edge(v, x)).collect();
            if nb.len() + 2 >= h {
                let pair = if g.has_edge(u, v) { "K2" } else { "S2" };
                let mut verts = vec![u, v];
                verts.extend_from_slice(&nb[..h - 2]);
                return Some(found(g, &format!("join of {pair} with a stable set"), verts));
            }
            if !nb.is_empty() && non.len() + 2 >= h {
                let mut verts = vec![v, nb[0]];
                verts.extend_from_slice(&non[..h - 2]);
                return Some(found(g, "one edge", verts));
            }
            if nb.is_empty() && !g.has_edge(u, v) && leaves.len() + 2 >= h {
                let mut verts = vec![u, v];
                verts.extend_from_slice(&leaves[..h - 2]);
                return Some(found(g, "star minus an edge", verts));
            }
        }
    }
    None
}
