//! Backtracking search for vertex partitions whose parts satisfy per-part
//! hereditary constraints.

use crate::bitset::VertexSet;
use crate::budget::Budget;
use crate::graph::Graph;

use super::constraint::{satisfies_constraint, PartConstraint};

/// An ordered list of part constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub parts: Vec<PartConstraint>,
}

impl Pattern {
    pub fn new(parts: Vec<PartConstraint>) -> Self {
        assert!(!parts.is_empty(), "a pattern needs at least one part");
        Pattern { parts }
    }

    /// `s` stable parts followed by `t` clique parts.
    pub fn st(s: usize, t: usize) -> Self {
        let mut parts = vec![PartConstraint::Stable; s];
        parts.extend(std::iter::repeat_n(PartConstraint::Clique, t));
        Pattern::new(parts)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// True when `parts` (indexed like the pattern) is a partition of `V(g)`
    /// whose parts satisfy their constraints.
    pub fn accepts(&self, g: &Graph, parts: &[Vec<usize>]) -> bool {
        if parts.len() != self.parts.len() {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for p in parts {
            for &v in p {
                if v >= g.n() || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.iter().all(|&s| s) && self.accepts_parts(g, parts)
    }

    /// True when each part satisfies its constraint; coverage is not checked.
    pub fn accepts_parts(&self, g: &Graph, parts: &[Vec<usize>]) -> bool {
        parts.len() == self.parts.len()
            && parts
                .iter()
                .zip(&self.parts)
                .all(|(p, c)| satisfies_constraint(&g.induced_unchecked(p), c))
    }
}

/// Result of [`pattern_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// A partition, parts indexed like the pattern (possibly empty).
    Found(Vec<Vec<usize>>),
    /// Every partition, one per orbit under swapping identical constraints.
    All(Vec<Vec<Vec<usize>>>),
    /// Exhaustive search proved that no partition exists.
    NoPartition,
    /// The node budget ran out before the search finished.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: Outcome,
    pub nodes: u64,
}

impl SearchReport {
    pub fn found(&self) -> Option<&Vec<Vec<usize>>> {
        match &self.outcome {
            Outcome::Found(p) => Some(p),
            Outcome::All(all) => all.first(),
            _ => None,
        }
    }

    pub fn exists(&self) -> Option<bool> {
        match &self.outcome {
            Outcome::Found(_) => Some(true),
            Outcome::All(all) => Some(!all.is_empty()),
            Outcome::NoPartition => Some(false),
            Outcome::Unknown => None,
        }
    }
}

struct PartState {
    set: VertexSet,
    nonedges: usize,
}

/// Extra test applied to complete partitions.
type Accept<'a> = &'a dyn Fn(&[Vec<usize>]) -> bool;

struct Search<'a> {
    g: &'a Graph,
    pattern: &'a Pattern,
    order: Vec<usize>,
    /// `twin_before[i]`: the nearest earlier part with an identical constraint.
    twin_before: Vec<Option<usize>>,
    p3_only: Vec<bool>,
    parts: Vec<PartState>,
    find_all: bool,
    limit: usize,
    accept: Option<Accept<'a>>,
    results: Vec<Vec<Vec<usize>>>,
    budget: Budget,
}

impl Search<'_> {
    fn can_add(&self, i: usize, v: usize) -> bool {
        let g = self.g;
        let state = &self.parts[i];
        let row = g.row(v);
        match &self.pattern.parts[i] {
            PartConstraint::Stable => state.set.is_disjoint(row),
            PartConstraint::Clique => state.set.intersection_len(row) == state.set.len(),
            PartConstraint::AtMostOneNonEdge => state.nonedges + state.set.len() - state.set.intersection_len(row) <= 1,
            c if self.p3_only[i] => {
                let _ = c;
                // adding v keeps a cluster graph iff v's neighbors in the part
                // form exactly one whole component (or nothing)
                let mut inside = state.set.clone();
                inside.intersect_with(row);
                match inside.first() {
                    None => true,
                    Some(a) => {
                        let mut comp = state.set.clone();
                        comp.intersect_with(g.row(a));
                        comp.insert(a);
                        comp == inside
                    }
                }
            }
            c => {
                let mut members = state.set.to_vec();
                members.push(v);
                satisfies_constraint(&g.induced_unchecked(&members), c)
            }
        }
    }

    fn snapshot(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|p| p.set.to_vec()).collect()
    }

    /// Returns `Err` on budget exhaustion, `Ok(true)` when the search may stop.
    fn run(&mut self, depth: usize) -> Result<bool, crate::budget::Exhausted> {
        self.budget.tick()?;
        if depth == self.order.len() {
            if let Some(accept) = self.accept {
                if !accept(&self.snapshot()) {
                    return Ok(false);
                }
            }
            if self.find_all {
                let snap = self.snapshot();
                self.results.push(snap);
                return Ok(self.results.len() >= self.limit);
            }
            return Ok(true);
        }
        let v = self.order[depth];
        for i in 0..self.parts.len() {
            if self.parts[i].set.is_empty() {
                if let Some(t) = self.twin_before[i] {
                    if self.parts[t].set.is_empty() {
                        continue;
                    }
                }
            }
            if !self.can_add(i, v) {
                continue;
            }
            let added = self.parts[i].set.len() - self.parts[i].set.intersection_len(self.g.row(v));
            self.parts[i].set.insert(v);
            self.parts[i].nonedges += added;
            let stop = self.run(depth + 1)?;
            if stop {
                return Ok(true);
            }
            self.parts[i].set.remove(v);
            self.parts[i].nonedges -= added;
        }
        Ok(false)
    }
}

/// Vertices most constrained first: by `|2 deg(v) - n|` descending, then index.
fn vertex_order(g: &Graph) -> Vec<usize> {
    let n = g.n() as i64;
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse((2 * g.degree(v) as i64 - n).abs()), v));
    order
}

/// Searches for a partition of `V(g)` into `pattern.len()` (possibly empty)
/// parts, part `i` inducing a member of `pattern.parts[i]`.
///
/// With `find_all`, enumerates every such partition up to swapping parts with
/// identical constraints. `budget` bounds the number of search nodes.
pub fn pattern_partition(g: &Graph, pattern: &Pattern, find_all: bool, budget: u64) -> SearchReport {
    let run = run_search(g, pattern, find_all, usize::MAX, None, budget);
    report(run, find_all)
}

/// Searches for a partition as in [`pattern_partition`] that also satisfies
/// `accept`, which is evaluated on complete partitions only.
pub fn find_partition_where(
    g: &Graph,
    pattern: &Pattern,
    accept: &dyn Fn(&[Vec<usize>]) -> bool,
    budget: u64,
) -> SearchReport {
    report(run_search(g, pattern, false, 1, Some(accept), budget), false)
}

fn report(run: Run, find_all: bool) -> SearchReport {
    let outcome = match run.stop {
        Err(_) => Outcome::Unknown,
        Ok(_) if find_all => Outcome::All(run.results),
        Ok(true) => Outcome::Found(run.results.into_iter().next().unwrap_or_default()),
        Ok(false) => Outcome::NoPartition,
    };
    SearchReport {
        outcome,
        nodes: run.nodes,
    }
}

/// Partitions found by a bounded enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub partitions: Vec<Vec<Vec<usize>>>,
    /// True when the search space was exhausted, so `partitions` is the full
    /// list; false when the limit or the budget stopped the search.
    pub complete: bool,
    pub budget_exhausted: bool,
    pub nodes: u64,
}

/// Like [`pattern_partition`] with `find_all`, stopping after `limit`
/// partitions.
pub fn enumerate_partitions(g: &Graph, pattern: &Pattern, limit: usize, budget: u64) -> Enumeration {
    let run = run_search(g, pattern, true, limit.max(1), None, budget);
    Enumeration {
        complete: run.stop == Ok(false),
        budget_exhausted: run.stop.is_err(),
        partitions: run.results,
        nodes: run.nodes,
    }
}

struct Run {
    stop: Result<bool, crate::budget::Exhausted>,
    results: Vec<Vec<Vec<usize>>>,
    nodes: u64,
}

fn run_search<'a>(
    g: &'a Graph,
    pattern: &'a Pattern,
    find_all: bool,
    limit: usize,
    accept: Option<Accept<'a>>,
    budget: u64,
) -> Run {
    let k = pattern.len();
    let twin_before = (0..k)
        .map(|i| (0..i).rev().find(|&j| pattern.parts[j] == pattern.parts[i]))
        .collect();
    let mut search = Search {
        g,
        pattern,
        order: vertex_order(g),
        twin_before,
        p3_only: pattern.parts.iter().map(PartConstraint::is_p3_only).collect(),
        parts: (0..k)
            .map(|_| PartState {
                set: VertexSet::new(g.n()),
                nonedges: 0,
            })
            .collect(),
        find_all,
        limit,
        accept,
        results: Vec::new(),
        budget: Budget::new(budget),
    };
    let stop = search.run(0);
    if stop == Ok(true) && !find_all {
        search.results.push(search.snapshot());
    }
    Run {
        stop,
        results: search.results,
        nodes: search.budget.spent(),
    }
}

/// `g ∈ H(s, t)`: `V(g)` splits into `s` stable sets and `t` cliques.
pub fn st_member(g: &Graph, s: usize, t: usize) -> bool {
    if s + t == 0 {
        return g.n() == 0;
    }
    pattern_partition(g, &Pattern::st(s, t), false, u64::MAX)
        .exists()
        .expect("unbounded search terminates")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ChiC {
    pub value: usize,
    /// `(s, t)` with `s + t = value` and `h ∉ H(s, t)`.
    pub witness: Option<(usize, usize)>,
}

/// Largest `l <= l_max` such that `h ∉ H(s, l - s)` for some `s`; the witness
/// is the smallest such `s` at that level.
pub fn chi_c(h: &Graph, l_max: usize) -> ChiC {
    let mut best = ChiC {
        value: 0,
        witness: None,
    };
    for l in 1..=l_max {
        if let Some(s) = (0..=l).find(|&s| !st_member(h, s, l - s)) {
            best = ChiC {
                value: l,
                witness: Some((s, l - s)),
            };
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Reduced {
    pub reduced: bool,
    pub good_s: Option<usize>,
}

/// Pattern `(ι(J), s stable parts, l-1-s clique parts)`.
pub fn reduced_pattern(j: &Graph, s: usize, l: usize) -> Pattern {
    let mut parts = vec![PartConstraint::Iota(j.clone())];
    parts.extend(std::iter::repeat_n(PartConstraint::Stable, s));
    parts.extend(std::iter::repeat_n(PartConstraint::Clique, l - 1 - s));
    Pattern::new(parts)
}

/// `J` is reduced for `Forb(H)` at level `l` iff for some `s < l`, `H` has no
/// partition into an induced subgraph of `J`, `s` stable sets and `l-1-s`
/// cliques.
pub fn is_reduced(j: &Graph, h: &Graph, l: usize) -> Reduced {
    assert!(l >= 1, "level must be positive");
    let good_s = (0..l).find(|&s| {
        !pattern_partition(h, &reduced_pattern(j, s, l), false, u64::MAX)
            .exists()
            .expect("unbounded search terminates")
    });
    Reduced {
        reduced: good_s.is_some(),
        good_s,
    }
}

/// Every dangerous (not reduced) graph on at most `n_max` vertices all of whose
/// one-vertex-deleted subgraphs are reduced, one canonical representative per
/// isomorphism class, ordered by vertex count then canonical code.
pub fn minimal_dangerous(h: &Graph, l: usize, n_max: usize) -> crate::error::Result<Vec<Graph>> {
    if n_max > 8 {
        return Err(crate::error::Error::InvalidParameters(format!(
            "n_max = {n_max} exceeds 8"
        )));
    }
    let empty = Graph::new(0);
    if !is_reduced(&empty, h, l).reduced {
        return Ok(vec![empty]);
    }
    let mut out = Vec::new();
    let mut reduced_level = vec![empty];
    for k in 1..=n_max {
        let level = crate::canonical::extend_level(&reduced_level, k, |_| true);
        let mut next = Vec::new();
        for g in level {
            if is_reduced(&g, h, l).reduced {
                next.push(g);
            } else if (0..k).all(|v| {
                let keep: Vec<usize> = (0..k).filter(|&u| u != v).collect();
                is_reduced(&g.induced_unchecked(&keep), h, l).reduced
            }) {
                out.push(g);
            }
        }
        reduced_level = next;
        if reduced_level.is_empty() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{all_graphs, arb_graph, assignments};
    use proptest::prelude::*;

    fn brute_force(g: &Graph, pattern: &Pattern) -> bool {
        assignments(g.n(), pattern.len()).any(|a| {
            let parts: Vec<Vec<usize>> = (0..pattern.len())
                .map(|i| (0..g.n()).filter(|&v| a[v] == i).collect())
                .collect();
            pattern.accepts(g, &parts)
        })
    }

    #[test]
    fn small_examples() {
        let c3 = Graph::complete(3);
        let c5 = Graph::cycle(5);
        assert_eq!(
            pattern_partition(&c3, &Pattern::st(2, 0), false, 1000).outcome,
            Outcome::NoPartition
        );
        let r = pattern_partition(&c5, &Pattern::st(2, 1), false, 1000);
        assert!(Pattern::st(2, 1).accepts(&c5, r.found().unwrap()));
        assert_eq!(
            pattern_partition(&c5, &Pattern::st(1, 1), false, 1000).outcome,
            Outcome::NoPartition
        );
        assert!(!st_member(&c3, 2, 0));
        assert!(st_member(&c3, 0, 1));
        assert!(st_member(&c5, 2, 1));
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let g = Graph::cycle(9);
        let r = pattern_partition(&g, &Pattern::st(1, 1), false, 3);
        assert_eq!(r.outcome, Outcome::Unknown);
        assert_eq!(r.nodes, 3);
    }

    #[test]
    fn solver_matches_brute_force_on_all_small_graphs() {
        let patterns = [
            Pattern::st(2, 0),
            Pattern::st(1, 1),
            Pattern::st(0, 2),
            Pattern::new(vec![PartConstraint::AtMostOneNonEdge; 2]),
            Pattern::new(vec![PartConstraint::CliqueOrAntistar, PartConstraint::Clique]),
            Pattern::new(vec![PartConstraint::p3_free(), PartConstraint::Stable]),
            Pattern::new(vec![
                PartConstraint::Iota(Graph::path(3)),
                PartConstraint::Stable,
                PartConstraint::Clique,
            ]),
            Pattern::new(vec![
                PartConstraint::CliquePlusPendant,
                PartConstraint::UnionClique(Graph::complete(2)),
            ]),
        ];
        for n in 0..=5 {
            for g in all_graphs(n) {
                for p in &patterns {
                    let r = pattern_partition(&g, p, false, u64::MAX);
                    assert_eq!(r.exists(), Some(brute_force(&g, p)), "{g:?} {p:?}");
                    if let Some(parts) = r.found() {
                        assert!(p.accepts(&g, parts));
                    }
                }
            }
        }
    }

    #[test]
    fn find_all_counts_orbits() {
        // two disjoint triangles into two near-cliques: exactly one unordered partition
        let g = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let r = pattern_partition(
            &g,
            &Pattern::new(vec![PartConstraint::AtMostOneNonEdge; 2]),
            true,
            u64::MAX,
        );
        match r.outcome {
            Outcome::All(all) => assert_eq!(all, vec![vec![vec![0, 1, 2], vec![3, 4, 5]]]),
            o => panic!("{o:?}"),
        }
        // K2 into (Stable, Clique): {}, {0,1} and {0},{1} and {1},{0}
        let r = pattern_partition(&Graph::complete(2), &Pattern::st(1, 1), true, u64::MAX);
        match r.outcome {
            Outcome::All(all) => assert_eq!(all.len(), 3),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn chi_c_examples() {
        assert_eq!(
            chi_c(&Graph::complete(3), 4),
            ChiC {
                value: 2,
                witness: Some((2, 0))
            }
        );
        assert_eq!(chi_c(&Graph::cycle(5), 4).value, 2);
        assert_eq!(
            chi_c(&Graph::complete(2), 4),
            ChiC {
                value: 1,
                witness: Some((1, 0))
            }
        );
    }

    #[test]
    fn reduced_examples() {
        let c3 = Graph::complete(3);
        assert_eq!(
            is_reduced(&Graph::new(2), &c3, 2),
            Reduced {
                reduced: true,
                good_s: Some(1)
            }
        );
        assert_eq!(
            is_reduced(&Graph::complete(2), &c3, 2),
            Reduced {
                reduced: false,
                good_s: None
            }
        );
        assert_eq!(
            is_reduced(&Graph::path(3), &Graph::cycle(5), 2),
            Reduced {
                reduced: true,
                good_s: Some(1)
            }
        );
    }

    #[test]
    fn minimal_dangerous_examples() {
        let md = minimal_dangerous(&Graph::complete(3), 2, 3).unwrap();
        assert_eq!(md.len(), 1);
        assert!(crate::induced::is_isomorphic(&md[0], &Graph::complete(2)));
        let md = minimal_dangerous(&Graph::complete(2), 1, 2).unwrap();
        assert_eq!(md.len(), 1);
        assert!(crate::induced::is_isomorphic(&md[0], &Graph::complete(2)));
        for g in minimal_dangerous(&Graph::cycle(5), 2, 5).unwrap() {
            assert!(!is_reduced(&g, &Graph::cycle(5), 2).reduced);
            for v in 0..g.n() {
                let keep: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
                assert!(is_reduced(&g.induced_unchecked(&keep), &Graph::cycle(5), 2).reduced);
            }
        }
    }

    #[test]
    fn minimal_dangerous_matches_exhaustive_labeled_search() {
        let h = Graph::cycle(5);
        let md = minimal_dangerous(&h, 2, 4).unwrap();
        let mut expected = 0;
        let mut codes = std::collections::BTreeSet::new();
        for n in 0..=4 {
            for g in all_graphs(n) {
                let minimal = !is_reduced(&g, &h, 2).reduced
                    && (0..n).all(|v| {
                        let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
                        is_reduced(&g.induced_unchecked(&keep), &h, 2).reduced
                    });
                if minimal && codes.insert((n, crate::canonical::canonical_code(&g))) {
                    expected += 1;
                }
            }
        }
        assert_eq!(md.len(), expected);
    }

    proptest! {
        #[test]
        fn complement_duality(g in arb_graph(6), s in 0usize..3, t in 0usize..3) {
            prop_assert_eq!(st_member(&g, s, t), st_member(&g.complement(), t, s));
        }

        #[test]
        fn chi_c_monotone_and_stable(g in arb_graph(5)) {
            let mut prev = 0;
            for l_max in 1..=g.n() + 2 {
                let v = chi_c(&g, l_max).value;
                prop_assert!(v >= prev);
                prev = v;
            }
            prop_assert_eq!(chi_c(&g, g.n() + 1).value, chi_c(&g, g.n() + 3).value);
        }

        #[test]
        fn reduced_is_antitone(j in arb_graph(4), h in arb_graph(5), drop in 0usize..4) {
            if j.n() > 0 && is_reduced(&j, &h, 2).reduced {
                let v = drop % j.n();
                let keep: Vec<usize> = (0..j.n()).filter(|&u| u != v).collect();
                prop_assert!(is_reduced(&j.induced_unchecked(&keep), &h, 2).reduced);
            }
        }

        #[test]
        fn proper_pattern_existence_matches_chi_c(h in arb_graph(6), l in 1usize..=4) {
            let direct = (0..=l).any(|s| !st_member(&h, s, l - s));
            let via = chi_c(&h, l);
            prop_assert_eq!(direct, via.value == l);
        }
    }
}
