//! Graph assemblies on top of a sampled partition system.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Family;
use crate::rng::{self, Rng};
use crate::system::{PartitionSystem, P_COUNT};

/// Attempts made by a builder before giving up.
pub const MAX_BUILD_ATTEMPTS: u64 = 2_000;

/// A modified pool block and the vertices the modification is anchored at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChosenBlock {
    pub role: String,
    /// Index `i` of the family `P_i`.
    pub family: usize,
    pub index: usize,
    pub block: Vec<usize>,
    pub exclusive: Vec<usize>,
    pub endpoints: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildLog {
    pub construction: String,
    pub seed: u64,
    pub retries: u64,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<usize>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<usize>>,
    /// The partitions `P_0..P_4`.
    #[serde(rename = "P")]
    pub p: Vec<Vec<Vec<usize>>>,
    pub chosen: Vec<ChosenBlock>,
    pub deleted_edges: Vec<(usize, usize)>,
    pub added_edges: Vec<(usize, usize)>,
}

impl BuildLog {
    pub fn block(&self, role: &str) -> Option<&ChosenBlock> {
        self.chosen.iter().find(|c| c.role == role)
    }
}

struct Candidates {
    /// Per family: (block index, exclusive elements) of distinctive blocks.
    distinctive: Vec<Vec<(usize, Vec<usize>)>>,
}

impl Candidates {
    fn new(sys: &PartitionSystem) -> Result<Self> {
        let distinctive: Vec<_> = (0..P_COUNT).map(|i| sys.distinctive_blocks(i)).collect();
        if let Some(i) = distinctive.iter().position(Vec::is_empty) {
            return Err(Error::NotDistinctive(format!("P{i}")));
        }
        if distinctive[0].len() < 2 {
            return Err(Error::NotDistinctive("P0 (two are needed)".into()));
        }
        Ok(Candidates { distinctive })
    }

    fn pick(&self, family: usize, rng: &mut Rng) -> (usize, Vec<usize>) {
        self.distinctive[family].choose(rng).expect("nonempty").clone()
    }
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn pool_graph(sys: &PartitionSystem, families: &[Vec<Vec<usize>>]) -> Graph {
    let mut g = Graph::new(sys.x);
    for fam in families {
        for b in fam {
            for (i, &u) in b.iter().enumerate() {
                for &v in &b[i + 1..] {
                    g.add_edge(u, v);
                }
            }
        }
    }
    g
}

fn all_pool_families(sys: &PartitionSystem) -> Vec<Vec<Vec<usize>>> {
    let mut fams = vec![sys.r.clone()];
    fams.extend(sys.p.iter().cloned());
    fams
}

fn distinct(vs: &[usize]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

fn chosen(
    role: &str,
    family: usize,
    index: usize,
    sys: &PartitionSystem,
    exclusive: Vec<usize>,
    endpoints: Vec<usize>,
) -> ChosenBlock {
    ChosenBlock {
        role: role.into(),
        family,
        index,
        block: sys.p[family][index].clone(),
        exclusive,
        endpoints,
    }
}

/// Shuffled copy of `v`.
fn shuffled(v: &[usize], rng: &mut Rng) -> Vec<usize> {
    let mut v = v.to_vec();
    v.shuffle(rng);
    v
}

type P0Quad = (usize, Vec<usize>, usize, Vec<usize>, [usize; 4]);

/// All choices of two distinctive `P0` blocks and an exclusive pair in each
/// whose four cross pairs are uncovered by the pool.
fn p0_quadruples(cand: &Candidates, pool: &Family) -> Vec<P0Quad> {
    let d = &cand.distinctive[0];
    let pairs = |ex: &[usize]| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &a) in ex.iter().enumerate() {
            for &b in &ex[i + 1..] {
                out.push((a, b));
            }
        }
        out
    };
    let mut quads = Vec::new();
    for (x, (i1, ex1)) in d.iter().enumerate() {
        for (i2, ex2) in &d[x + 1..] {
            for &(a1, b1) in &pairs(ex1) {
                for &(a2, b2) in &pairs(ex2) {
                    let cross = [(a1, a2), (a1, b2), (b1, a2), (b1, b2)];
                    if cross.iter().all(|&(u, v)| u != v && !pool.pair_covered(u, v)) {
                        quads.push((*i1, ex1.clone(), *i2, ex2.clone(), [a1, b1, a2, b2]));
                    }
                }
            }
        }
    }
    quads
}

/// Chosen blocks and the edges deleted from them.
type Modifications = (Vec<ChosenBlock>, Vec<(usize, usize)>);

fn ars_attempt(sys: &PartitionSystem, cand: &Candidates, quads: &[P0Quad], rng: &mut Rng) -> Option<Modifications> {
    let mut blocks = Vec::new();
    let mut deleted = Vec::new();
    let mut keys: Vec<usize> = Vec::new();

    // P0: two distinctive blocks, one deleted edge each between exclusive
    // elements, cross pairs uncovered
    let &(i1, ref ex1, i2, ref ex2, [a1, b1, a2, b2]) = quads.choose(rng)?;
    blocks.push(chosen("P0'", 0, i1, sys, ex1.clone(), vec![a1, b1]));
    blocks.push(chosen("P0''", 0, i2, sys, ex2.clone(), vec![a2, b2]));
    deleted.push(norm(a1, b1));
    deleted.push(norm(a2, b2));
    keys.extend([a1, b1, a2, b2]);

    // P1: every edge at one exclusive vertex
    let (i, ex) = cand.pick(1, rng);
    let w = *ex.choose(rng).expect("distinctive");
    let block = &sys.p[1][i];
    deleted.extend(block.iter().filter(|&&x| x != w).map(|&x| norm(w, x)));
    blocks.push(chosen("P1", 1, i, sys, ex, vec![w]));
    keys.push(w);

    // P2: two edges sharing an exclusive end
    let (i, ex) = cand.pick(2, rng);
    let block = &sys.p[2][i];
    if block.len() < 3 {
        return None;
    }
    let c = *ex.choose(rng).expect("distinctive");
    let others = shuffled(&block.iter().copied().filter(|&x| x != c).collect::<Vec<_>>(), rng);
    let (x, y) = (others[0], others[1]);
    deleted.extend([norm(c, x), norm(c, y)]);
    blocks.push(chosen("P2", 2, i, sys, ex, vec![c, x, y]));
    keys.extend([c, x, y]);

    // P3: a matching of size two (one edge when the block has three elements),
    // each edge at an exclusive vertex
    let (i, ex) = cand.pick(3, rng);
    let block = &sys.p[3][i];
    let size = (block.len() / 2).min(2);
    if size == 0 {
        return None;
    }
    let ex_s = shuffled(&ex, rng);
    let mut ends = Vec::new();
    let mut used: Vec<usize> = ex_s[..size.min(ex_s.len())].to_vec();
    if used.len() < size {
        return None;
    }
    for &x in &ex_s[..size] {
        let partner = shuffled(block, rng).into_iter().find(|v| !used.contains(v))?;
        used.push(partner);
        deleted.push(norm(x, partner));
        ends.extend([x, partner]);
    }
    blocks.push(chosen("P3", 3, i, sys, ex, ends.clone()));
    keys.extend(ends);

    // P4: a triangle with at least two exclusive corners
    let (i, ex) = cand.pick(4, rng);
    let block = &sys.p[4][i];
    if block.len() < 3 {
        return None;
    }
    let ex_s = shuffled(&ex, rng);
    let (t1, t2) = (ex_s[0], ex_s[1]);
    let t3 = shuffled(block, rng).into_iter().find(|&v| v != t1 && v != t2)?;
    deleted.extend([norm(t1, t2), norm(t1, t3), norm(t2, t3)]);
    blocks.push(chosen("P4", 4, i, sys, ex, vec![t1, t2, t3]));
    keys.extend([t1, t2, t3]);

    distinct(&keys).then_some((blocks, deleted))
}

/// Every pool block becomes a clique, then edges are deleted inside two
/// distinctive `P0` blocks (one each, endpoints independent), one `P1` block
/// (a vertex's edges), one `P2` block (two edges sharing an end), one `P3`
/// block (a matching) and one `P4` block (a triangle). Every deleted edge has
/// an exclusive endpoint, so it lies in exactly one pool block.
pub fn build_ars_graph(sys: &PartitionSystem, seed: u64) -> Result<(Graph, BuildLog)> {
    let cand = Candidates::new(sys)?;
    let quads = p0_quadruples(&cand, &sys.pool());
    let attempts = if quads.is_empty() { 0 } else { MAX_BUILD_ATTEMPTS };
    for attempt in 0..attempts {
        let mut rng = rng::substream(seed, attempt);
        let Some((chosen, mut deleted)) = ars_attempt(sys, &cand, &quads, &mut rng) else {
            continue;
        };
        deleted.sort_unstable();
        deleted.dedup();
        let mut g = pool_graph(sys, &all_pool_families(sys));
        for &(u, v) in &deleted {
            g.remove_edge(u, v);
        }
        let log = BuildLog {
            construction: "ars".into(),
            seed,
            retries: attempt,
            q: sys.q.clone(),
            r: sys.r.clone(),
            p: sys.p.clone(),
            chosen,
            deleted_edges: deleted,
            added_edges: vec![],
        };
        check_log(sys, &log)?;
        return Ok((g, log));
    }
    Err(Error::BudgetExhausted {
        property: "independent endpoints for the two P0 deletions".into(),
        attempts,
    })
}

/// Every pool block outside `P0` becomes a clique; inside one distinctive
/// block of each `P1..P4` with exclusive `u_i, v_i`: delete `u1v1`; delete
/// every `P2` edge at `u2` or `v2`; delete every `P3` edge at `u3` or `v3`
/// except `u3v3`; delete every `P4` edge at `u4` except `u4v4`. Then each of
/// the eight anchors `z` is joined to every `x` in `Q_1..Q_{⌊k/2⌋}` with
/// `{x, z}` uncovered by the pool.
pub fn build_eps_graph(sys: &PartitionSystem, seed: u64) -> Result<(Graph, BuildLog)> {
    let cand = Candidates::new(sys)?;
    let pool = sys.pool();
    let mut fams = vec![sys.r.clone()];
    fams.extend(sys.p[1..].iter().cloned());
    for attempt in 0..MAX_BUILD_ATTEMPTS {
        let mut rng = rng::substream(seed, attempt);
        let mut chosen_blocks = Vec::new();
        let mut anchors = Vec::new();
        let mut deleted = Vec::new();
        for fam in 1..P_COUNT {
            let (i, ex) = cand.pick(fam, &mut rng);
            let e = shuffled(&ex, &mut rng);
            let (u, v) = (e[0], e[1]);
            let block = &sys.p[fam][i];
            match fam {
                1 => deleted.push(norm(u, v)),
                2 => {
                    for &x in block {
                        for a in [u, v] {
                            if x != a {
                                deleted.push(norm(a, x));
                            }
                        }
                    }
                }
                3 => {
                    for &x in block {
                        for (a, b) in [(u, v), (v, u)] {
                            if x != a && x != b {
                                deleted.push(norm(a, x));
                            }
                        }
                    }
                }
                _ => deleted.extend(block.iter().filter(|&&x| x != u && x != v).map(|&x| norm(u, x))),
            }
            chosen_blocks.push(chosen(&format!("P{fam}"), fam, i, sys, ex, vec![u, v]));
            anchors.extend([u, v]);
        }
        if !distinct(&anchors) {
            continue;
        }
        deleted.sort_unstable();
        deleted.dedup();
        let mut g = pool_graph(sys, &fams);
        for &(u, v) in &deleted {
            g.remove_edge(u, v);
        }
        let targets: Vec<usize> = sys.q[1..=sys.k / 2].iter().flatten().copied().collect();
        let mut added = Vec::new();
        for &z in &anchors {
            for &x in &targets {
                if x != z && !pool.pair_covered(x, z) {
                    added.push(norm(x, z));
                }
            }
        }
        added.sort_unstable();
        added.dedup();
        for &(u, v) in &added {
            g.add_edge(u, v);
        }
        let log = BuildLog {
            construction: "eps".into(),
            seed,
            retries: attempt,
            q: sys.q.clone(),
            r: sys.r.clone(),
            p: sys.p.clone(),
            chosen: chosen_blocks,
            deleted_edges: deleted,
            added_edges: added,
        };
        check_log(sys, &log)?;
        return Ok((g, log));
    }
    Err(Error::BudgetExhausted {
        property: "distinct exclusive anchors".into(),
        attempts: MAX_BUILD_ATTEMPTS,
    })
}

/// Re-checks the log invariants: deleted edges lie in exactly one pool block,
/// added edges are uncovered pairs.
pub fn check_log(sys: &PartitionSystem, log: &BuildLog) -> Result<()> {
    let blocks = sys.pool_blocks();
    for &(u, v) in &log.deleted_edges {
        let holders = blocks
            .iter()
            .filter(|(_, _, b)| b.contains(&u) && b.contains(&v))
            .count();
        if holders != 1 {
            return Err(Error::InvalidParameters(format!(
                "deleted edge ({u}, {v}) lies in {holders} pool blocks"
            )));
        }
    }
    let pool = sys.pool();
    if let Some(&(u, v)) = log.added_edges.iter().find(|&&(u, v)| pool.pair_covered(u, v)) {
        return Err(Error::InvalidParameters(format!("added edge ({u}, {v}) is covered")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{satisfies_constraint, PartConstraint};
    use crate::system::{sample_partition_system, Thresholds};

    fn system(l: usize, k: usize, seed: u64) -> PartitionSystem {
        sample_partition_system(l, k, seed, 10_000, Thresholds::relaxed(l, k)).unwrap()
    }

    #[test]
    fn ars_failures_are_reported() {
        let mut built = 0;
        for seed in 0..40 {
            match build_ars_graph(&system(9, 3, seed), seed) {
                Ok(_) => built += 1,
                Err(Error::BudgetExhausted { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(built >= 20);
    }

    #[test]
    fn ars_postconditions() {
        for seed in 0..8 {
            let sys = system(9, 3, seed);
            let Ok((g, log)) = build_ars_graph(&sys, seed) else {
                continue;
            };
            let base = pool_graph(&sys, &all_pool_families(&sys));
            assert_eq!(base.edge_count() - g.edge_count(), log.deleted_edges.len());
            for &(u, v) in &log.deleted_edges {
                assert!(!g.has_edge(u, v));
            }
            let p0a = log.block("P0'").unwrap();
            let p0b = log.block("P0''").unwrap();
            let quad: Vec<usize> = p0a.endpoints.iter().chain(&p0b.endpoints).copied().collect();
            assert!(g.classify_set(&quad).unwrap().is_stable);
            let p4 = &log.block("P4").unwrap().block;
            let (sub, _) = g.induced(p4).unwrap();
            assert!(satisfies_constraint(&sub, &PartConstraint::JoinClique(Graph::new(3))));
        }
    }

    #[test]
    fn ars_deletion_count_at_block_size_four() {
        let sys = system(16, 4, 3);
        assert_eq!(sys.p[0][0].len(), 4);
        let (_, log) = build_ars_graph(&sys, 1).unwrap();
        let p1 = log.block("P1").unwrap().block.len();
        assert_eq!(log.deleted_edges.len(), 1 + 1 + (p1 - 1) + 2 + 2 + 3);
    }

    #[test]
    fn eps_postconditions() {
        for seed in 0..5 {
            let sys = system(9, 3, seed);
            let (g, log) = build_eps_graph(&sys, seed).unwrap();
            let anchors: Vec<usize> = log.chosen.iter().flat_map(|c| c.endpoints.clone()).collect();
            let targets: Vec<usize> = sys.q[1..=sys.k / 2].iter().flatten().copied().collect();
            for &(u, v) in &log.added_edges {
                assert!(g.has_edge(u, v));
                assert!(
                    (anchors.contains(&u) && targets.contains(&v)) || (anchors.contains(&v) && targets.contains(&u))
                );
            }
            let classes = [
                PartConstraint::JoinClique(Graph::new(2)),
                PartConstraint::UnionClique(Graph::new(2)),
                PartConstraint::UnionClique(Graph::complete(2)),
                PartConstraint::CliquePlusPendant,
            ];
            for (c, class) in log.chosen.iter().zip(&classes) {
                let (sub, _) = g.induced(&c.block).unwrap();
                assert!(satisfies_constraint(&sub, class), "{} {:?}", c.role, sub);
            }
        }
    }

    #[test]
    fn builds_are_deterministic() {
        let sys = system(9, 3, 8);
        assert_eq!(build_ars_graph(&sys, 4).unwrap(), build_ars_graph(&sys, 4).unwrap());
        assert_eq!(build_eps_graph(&sys, 4).unwrap(), build_eps_graph(&sys, 4).unwrap());
    }
}
