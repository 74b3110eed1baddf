//! Induced-subgraph search.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Injective map from pattern vertices to host vertices that preserves both
/// adjacency and non-adjacency. `map[p]` is the image of pattern vertex `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.map.len() != pattern.n() || self.map.iter().any(|&h| h >= host.n()) {
            return false;
        }
        let mut seen = VertexSet::new(host.n());
        for &h in &self.map {
            if seen.contains(h) {
                return false;
            }
            seen.insert(h);
        }
        (0..pattern.n())
            .all(|a| (a + 1..pattern.n()).all(|b| pattern.has_edge(a, b) == host.has_edge(self.map[a], self.map[b])))
    }
}

/// Search order: start from a highest-degree vertex, then repeatedly take the
/// vertex with the most already-ordered neighbors (then degree, then index).
fn pattern_order(pattern: &Graph) -> Vec<usize> {
    let n = pattern.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                (links[a], pattern.degree(a))
                    .cmp(&(links[b], pattern.degree(b)))
                    .then(b.cmp(&a))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
        for v in pattern.neighbors(next).iter() {
            links[v] += 1;
        }
    }
    order
}

/// Finds an induced copy of `pattern` in `host`, or `None` when `host` is
/// `pattern`-free.
pub fn find_induced_copy(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    let (hn, pn) = (host.n(), pattern.n());
    if pn > hn {
        return None;
    }
    if pn == 0 {
        return Some(Embedding { map: Vec::new() });
    }
    let order = pattern_order(pattern);
    // Degree filter: the image needs at least as many neighbors and non-neighbors.
    let host_deg: Vec<usize> = (0..hn).map(|v| host.degree(v)).collect();
    let allowed: Vec<VertexSet> = (0..pn)
        .map(|p| {
            let d = pattern.degree(p);
            let nd = pn - 1 - d;
            VertexSet::from_iter_with_capacity(hn, (0..hn).filter(|&h| host_deg[h] >= d && hn - 1 - host_deg[h] >= nd))
        })
        .collect();
    if allowed.iter().any(|a| a.is_empty()) {
        return None;
    }
    let mut map = vec![usize::MAX; pn];
    let mut used = VertexSet::new(hn);
    if extend(host, pattern, &order, &allowed, 0, &mut map, &mut used) {
        Some(Embedding { map })
    } else {
        None
    }
}

fn extend(
    host: &Graph,
    pattern: &Graph,
    order: &[usize],
    allowed: &[VertexSet],
    depth: usize,
    map: &mut [usize],
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let mut cand = allowed[p].clone();
    cand.difference_with(used.words());
    for &q in &order[..depth] {
        let img = map[q];
        if pattern.has_edge(p, q) {
            cand.intersect_with(host.row(img));
        } else {
            cand.difference_with(host.row(img));
        }
        if cand.is_empty() {
            return false;
        }
    }
    for h in cand.iter() {
        map[p] = h;
        used.insert(h);
        if extend(host, pattern, order, allowed, depth + 1, map, used) {
            return true;
        }
        used.remove(h);
    }
    map[p] = usize::MAX;
    false
}

/// True if `small` is isomorphic to an induced subgraph of `big`.
pub fn is_induced_subgraph(small: &Graph, big: &Graph) -> bool {
    find_induced_copy(big, small).is_some()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && find_induced_copy(a, b).is_some()
}
