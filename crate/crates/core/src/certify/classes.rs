//! Certificates for the ARS and EPS axioms and for membership in `A(l)`.

use crate::bitset::VertexSet;
use crate::budget::{Budget, Exhausted};
use crate::certificate::{Certificate, Status, Witness};
use crate::constructions::BuildLog;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{
    enumerate_partitions, find_partition_where, pattern_partition, Enumeration, Outcome, PartConstraint, Pattern,
    SearchReport,
};

/// The four ARS2 part classes, in the order they are reported.
pub fn ars_classes() -> Vec<PartConstraint> {
    vec![
        PartConstraint::UnionClique(Graph::new(1)),
        PartConstraint::JoinClique(Graph::new(3)),
        PartConstraint::JoinClique(Graph::cycle(4)),
        PartConstraint::JoinClique(Graph::path(3).complement()),
    ]
}

/// The four EPS2 part classes, in the order they are reported.
pub fn eps_classes() -> Vec<PartConstraint> {
    vec![
        PartConstraint::UnionClique(Graph::new(2)),
        PartConstraint::UnionClique(Graph::complete(2)),
        PartConstraint::JoinClique(Graph::new(2)),
        PartConstraint::CliquePlusPendant,
    ]
}

/// Tracks the node budget of one claim across several searches.
struct Meter {
    budget: u64,
    spent: u64,
}

impl Meter {
    fn new(budget: u64) -> Self {
        Meter { budget, spent: 0 }
    }

    fn search(&mut self, g: &Graph, pattern: &Pattern, find_all: bool) -> SearchReport {
        let report = pattern_partition(g, pattern, find_all, self.budget - self.spent);
        self.spent += report.nodes;
        report
    }
}

fn nonempty(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    parts.iter().filter(|p| !p.is_empty()).cloned().collect()
}

/// Canonical form of a partition: nonempty parts sorted internally and
/// between each other.
pub fn normalize_parts(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = nonempty(parts)
        .into_iter()
        .map(|mut p| {
            p.sort_unstable();
            p
        })
        .collect();
    out.sort();
    out
}

/// `s` stable parts then `l - s` clique parts, built from the construction's
/// `Q` partition (stable sets) or from `R ∪ {Q_0}` and padded with empty parts.
fn log_st_witness(log: &BuildLog, s: usize, l: usize) -> Option<Vec<Vec<usize>>> {
    let (mut stable, mut cliques) = if s >= log.q.len() {
        (log.q.clone(), vec![])
    } else {
        (vec![log.q.first()?.clone()], log.r.clone())
    };
    if stable.len() > s || cliques.len() > l - s {
        return None;
    }
    stable.resize(s, vec![]);
    cliques.resize(l - s, vec![]);
    stable.extend(cliques);
    Some(stable)
}

/// ARS1 / EPS1: a partition into `s` stable sets and `l - s` cliques for
/// every `1 <= s <= l`.
fn st_claim(claim: &str, g: &Graph, l: usize, log: Option<&BuildLog>, budget: u64) -> Certificate {
    let mut meter = Meter::new(budget);
    let mut from_log = 0;
    for s in 1..=l {
        let pattern = Pattern::st(s, l - s);
        if let Some(w) = log.and_then(|log| log_st_witness(log, s, l)) {
            if pattern.accepts(g, &w) {
                from_log += 1;
                continue;
            }
        }
        match meter.search(g, &pattern, false).exists() {
            Some(true) => {}
            Some(false) => {
                return Certificate::refuted(
                    claim,
                    Witness::Parameter {
                        name: "s".into(),
                        value: s as i64,
                    },
                    meter.spent,
                )
            }
            None => return Certificate::unknown(claim, budget).with_param("s", s),
        }
    }
    Certificate::verified(claim, None, meter.spent)
        .with_param("l", l)
        .with_param("witnesses_from_log", from_log)
}

/// ARS2 / EPS2: for each class, a partition into one part of that class and
/// `l - 1` cliques. Blocks of the logged partitions are tried as witnesses
/// before searching.
fn class_claim(
    claim: &str,
    g: &Graph,
    l: usize,
    classes: &[PartConstraint],
    log: Option<&BuildLog>,
    budget: u64,
) -> Certificate {
    let mut meter = Meter::new(budget);
    for (idx, class) in classes.iter().enumerate() {
        let mut parts = vec![class.clone()];
        parts.extend(std::iter::repeat_n(PartConstraint::Clique, l - 1));
        let pattern = Pattern::new(parts);
        let logged = log.is_some_and(|log| {
            log.p.iter().any(|family| {
                (0..family.len()).any(|j| {
                    let mut w = vec![family[j].clone()];
                    w.extend(
                        family
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != j)
                            .map(|(_, b)| b.clone()),
                    );
                    w.resize(l, vec![]);
                    pattern.accepts(g, &w)
                })
            })
        });
        if logged {
            continue;
        }
        match meter.search(g, &pattern, false).exists() {
            Some(true) => {}
            Some(false) => {
                return Certificate::refuted(
                    claim,
                    Witness::Parameter {
                        name: "class".into(),
                        value: idx as i64,
                    },
                    meter.spent,
                )
                .with_param("class_name", class.name())
            }
            None => return Certificate::unknown(claim, budget).with_param("class_name", class.name()),
        }
    }
    Certificate::verified(claim, None, meter.spent).with_param("l", l)
}

fn nonedges_in(g: &Graph, part: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &u) in part.iter().enumerate() {
        for &v in &part[i + 1..] {
            if !g.has_edge(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Checks the ARS3 shape directly on the graph: a partition of `V(g)` into
/// `l` parts, all cliques except two with exactly one non-edge each, the four
/// endpoints of those non-edges pairwise non-adjacent.
pub fn is_ars3_partition(g: &Graph, l: usize, parts: &[Vec<usize>]) -> bool {
    if parts.len() != l {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in parts.iter().flatten() {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    let mut endpoints = Vec::new();
    let mut defective = 0;
    for p in parts {
        match nonedges_in(g, p).as_slice() {
            [] => {}
            [(u, v)] => {
                defective += 1;
                endpoints.extend([*u, *v]);
            }
            _ => return false,
        }
    }
    defective == 2 && g.classify_set(&endpoints).map(|c| c.is_stable).unwrap_or(false)
}

fn padded(parts: &[Vec<usize>], l: usize) -> Vec<Vec<usize>> {
    let mut w = normalize_parts(parts);
    w.resize(l.max(w.len()), vec![]);
    w
}

/// Partitions of `V(g)` into `l` (possibly empty) parts with at most one
/// non-edge each, one per set partition, stopping after `limit`.
pub fn ars4_partitions(g: &Graph, l: usize, limit: usize, budget: u64) -> Enumeration {
    enumerate_partitions(
        g,
        &Pattern::new(vec![PartConstraint::AtMostOneNonEdge; l]),
        limit,
        budget,
    )
}

/// Certificates ARS1..ARS4 for `g` at level `l`. The build log, when given,
/// supplies witnesses that are checked before any search. `budget` bounds the
/// search nodes of each claim.
pub fn certify_ars(g: &Graph, l: usize, log: Option<&BuildLog>, budget: u64) -> Result<Vec<Certificate>> {
    if l < 2 {
        return Err(Error::InvalidParameters(format!("ARS needs l >= 2, got {l}")));
    }
    let ars1 = st_claim("ARS1", g, l, log, budget);
    let ars2 = class_claim("ARS2", g, l, &ars_classes(), log, budget);

    let near_cliques = Pattern::new(vec![PartConstraint::AtMostOneNonEdge; l]);
    let logged_x0 = log
        .map(|log| padded(&log.p[0], l))
        .filter(|w| is_ars3_partition(g, l, w));
    let (ars3, x0) = match logged_x0 {
        Some(x0) => (
            Certificate::verified("ARS3", Some(Witness::Partition { parts: x0.clone() }), 0),
            Some(x0),
        ),
        None => {
            let shape = |parts: &[Vec<usize>]| is_ars3_partition(g, l, parts);
            let report = find_partition_where(g, &near_cliques, &shape, budget);
            match report.outcome {
                Outcome::Found(parts) => {
                    let x0 = padded(&parts, l);
                    let cert =
                        Certificate::verified("ARS3", Some(Witness::Partition { parts: x0.clone() }), report.nodes);
                    (cert, Some(x0))
                }
                Outcome::NoPartition => (
                    Certificate::refuted("ARS3", Witness::Exhausted { nodes: report.nodes }, report.nodes),
                    None,
                ),
                _ => (Certificate::unknown("ARS3", budget), None),
            }
        }
    };

    let found = ars4_partitions(g, l, 2, budget);
    let nodes = found.nodes;
    let refute4 = |p: &Vec<Vec<usize>>| Certificate::refuted("ARS4", Witness::Partition { parts: padded(p, l) }, nodes);
    let ars4 = match &x0 {
        Some(x0) => {
            let x0 = normalize_parts(x0);
            match found.partitions.iter().find(|p| normalize_parts(p) != x0) {
                Some(other) => refute4(other),
                None if found.complete => Certificate::verified("ARS4", Some(Witness::Exhausted { nodes }), nodes),
                None => Certificate::unknown("ARS4", budget),
            }
        }
        // without an ARS3 partition every near-clique partition violates ARS4
        None if ars3.status == Status::Refuted => match found.partitions.first() {
            Some(p) => refute4(p),
            None if found.complete => Certificate::refuted("ARS4", Witness::Exhausted { nodes }, nodes),
            None => Certificate::unknown("ARS4", budget),
        },
        None => match found.partitions.first() {
            Some(p) if found.partitions.len() >= 2 => refute4(p),
            _ => Certificate::unknown("ARS4", budget),
        },
    };
    Ok(vec![ars1, ars2, ars3, ars4])
}

/// Certificates EPS1..EPS3 for `g` at level `l`.
pub fn certify_eps(g: &Graph, l: usize, log: Option<&BuildLog>, budget: u64) -> Result<Vec<Certificate>> {
    if l < 1 {
        return Err(Error::InvalidParameters("EPS needs l >= 1".into()));
    }
    let eps1 = st_claim("EPS1", g, l, log, budget);
    let eps2 = class_claim("EPS2", g, l, &eps_classes(), log, budget);
    Ok(vec![eps1, eps2, eps3(g, l, budget)])
}

/// EPS3: no partition into one clique-or-antistar part and `l - 1` cliques.
pub fn eps3(g: &Graph, l: usize, budget: u64) -> Certificate {
    let mut parts = vec![PartConstraint::CliqueOrAntistar];
    parts.extend(std::iter::repeat_n(PartConstraint::Clique, l - 1));
    let report = pattern_partition(g, &Pattern::new(parts), false, budget);
    match report.outcome {
        Outcome::Found(parts) => Certificate::refuted("EPS3", Witness::Partition { parts }, report.nodes),
        Outcome::NoPartition => {
            Certificate::verified("EPS3", Some(Witness::Exhausted { nodes: report.nodes }), report.nodes)
        }
        _ => Certificate::unknown("EPS3", budget),
    }
}

struct ALSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    parts: Vec<VertexSet>,
    nonedge: Vec<Option<(usize, usize)>>,
    budget: Budget,
}

impl ALSearch<'_> {
    /// True when the non-edges `a` and `b` span an independent 4-set.
    fn independent(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        [a.0, a.1]
            .iter()
            .all(|&x| [b.0, b.1].iter().all(|&y| x != y && !self.g.has_edge(x, y)))
    }

    fn run(&mut self, depth: usize) -> std::result::Result<bool, Exhausted> {
        self.budget.tick()?;
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        let mut opened_empty = false;
        for i in 0..self.parts.len() {
            if self.parts[i].is_empty() {
                if opened_empty {
                    continue;
                }
                opened_empty = true;
            }
            let missing: Vec<usize> = self.parts[i].iter().filter(|&u| !self.g.has_edge(u, v)).collect();
            let new_nonedge = match (missing.as_slice(), self.nonedge[i]) {
                ([], _) => None,
                ([u], None) => Some((*u, v)),
                _ => continue,
            };
            if let Some(e) = new_nonedge {
                if self.nonedge.iter().flatten().any(|&f| self.independent(e, f)) {
                    continue;
                }
                self.nonedge[i] = Some(e);
            }
            self.parts[i].insert(v);
            if self.run(depth + 1)? {
                return Ok(true);
            }
            self.parts[i].remove(v);
            if new_nonedge.is_some() {
                self.nonedge[i] = None;
            }
        }
        Ok(false)
    }
}

/// Membership in `A(l)`: a partition into `l` parts with at most one non-edge
/// each, such that no two parts contain an independent 4-set in their union.
pub fn check_a_l(g: &Graph, l: usize, budget: u64) -> Result<Certificate> {
    if l < 1 {
        return Err(Error::InvalidParameters("A(l) needs l >= 1".into()));
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.n() - 1 - g.degree(v)), v));
    let mut search = ALSearch {
        g,
        order,
        parts: vec![VertexSet::new(g.n()); l],
        nonedge: vec![None; l],
        budget: Budget::new(budget),
    };
    let cert = match search.run(0) {
        Ok(true) => Certificate::verified(
            "A(l)",
            Some(Witness::Partition {
                parts: search.parts.iter().map(VertexSet::to_vec).collect(),
            }),
            search.budget.spent(),
        ),
        Ok(false) => {
            let nodes = search.budget.spent();
            Certificate::refuted("A(l)", Witness::Exhausted { nodes }, nodes)
        }
        Err(Exhausted) => Certificate::unknown("A(l)", budget),
    };
    Ok(cert.with_param("l", l))
}
