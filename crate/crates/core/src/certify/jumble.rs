//! Certificates for jumble graphs sampled from an `l`-pattern: the two jumble
//! axioms, regularity of `P3`-free sets and the diversity condition.

use rand::seq::SliceRandom;

use crate::bitset::VertexSet;
use crate::budget::{Budget, Exhausted};
use crate::certificate::{Certificate, Witness};
use crate::constructions::{s1_witness, LPattern};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::induced::is_isomorphic;
use crate::pattern::{pattern_partition, Outcome, PartConstraint, Pattern};
use crate::rng;

fn check_host(g: &Graph, pat: &LPattern) -> Result<()> {
    if g.n() != pat.vertex_count() {
        return Err(Error::InvalidParameters(format!(
            "graph has {} vertices but the pattern has {}",
            g.n(),
            pat.vertex_count()
        )));
    }
    Ok(())
}

fn covers(g: &Graph, parts: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; g.n()];
    for &v in parts.iter().flatten() {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    seen.iter().all(|&s| s)
}

fn induces_p3(g: &Graph, z: &[usize]) -> bool {
    z.len() == 3 && is_isomorphic(&g.induced_unchecked(z), &Graph::path(3))
}

/// The S1 partition for `s` stable parts: the induced `P3` first, then stable
/// parts, then cliques. Returns `None` when neither the pattern's witness nor
/// any other induced `P3` works.
fn s1_partition(
    g: &Graph,
    pat: &LPattern,
    s: usize,
    budget: &mut Budget,
) -> std::result::Result<Option<Vec<Vec<usize>>>, Exhausted> {
    let t = pat.l * pat.l - s;
    let st = Pattern::st(s, t);
    if let Ok(w) = s1_witness(pat, s) {
        let mut parts = vec![pat.p3.clone()];
        parts.extend(w.blocks().cloned());
        if induces_p3(g, &pat.p3) && covers(g, &parts) && st.accepts_parts(g, &parts[1..]) {
            return Ok(Some(parts));
        }
    }
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let z = [a, b, c];
                if !induces_p3(g, &z) {
                    continue;
                }
                let rest: Vec<usize> = (0..n).filter(|v| !z.contains(v)).collect();
                let sub = g.induced_unchecked(&rest);
                let report = pattern_partition(&sub, &st, false, budget.remaining());
                budget.charge(report.nodes)?;
                match report.outcome {
                    Outcome::Found(parts) => {
                        let mut out = vec![z.to_vec()];
                        out.extend(parts.into_iter().map(|p| p.into_iter().map(|i| rest[i]).collect()));
                        return Ok(Some(out));
                    }
                    Outcome::Unknown => return Err(Exhausted),
                    _ => {}
                }
            }
        }
    }
    Ok(None)
}

/// Certificates S1 and S2 for a graph sampled from `pat`.
///
/// S1: for every `0 <= s <= l²` the vertices split into an induced `P3`, `s`
/// stable sets and `l² - s` cliques. S2: no partition into `l² + 1` parts
/// each inducing a `P3`-free graph.
pub fn certify_jumble(g: &Graph, pat: &LPattern, budget: u64) -> Result<Vec<Certificate>> {
    check_host(g, pat)?;
    let l2 = pat.l * pat.l;
    let mut b = Budget::new(budget);
    let mut s1 = None;
    for s in 0..=l2 {
        match s1_partition(g, pat, s, &mut b) {
            Ok(Some(_)) => {}
            Ok(None) => {
                s1 = Some(Certificate::refuted(
                    "S1",
                    Witness::Parameter {
                        name: "s".into(),
                        value: s as i64,
                    },
                    b.spent(),
                ));
                break;
            }
            Err(Exhausted) => {
                s1 = Some(Certificate::unknown("S1", budget).with_param("s", s));
                break;
            }
        }
    }
    let s1 = s1
        .unwrap_or_else(|| Certificate::verified("S1", None, b.spent()))
        .with_param("l", pat.l);

    let report = pattern_partition(g, &Pattern::new(vec![PartConstraint::p3_free(); l2 + 1]), false, budget);
    let s2 = match report.outcome {
        Outcome::Found(parts) => Certificate::refuted("S2", Witness::Partition { parts }, report.nodes),
        Outcome::NoPartition => {
            Certificate::verified("S2", Some(Witness::Exhausted { nodes: report.nodes }), report.nodes)
        }
        _ => Certificate::unknown("S2", budget),
    };
    Ok(vec![s1, s2.with_param("parts", l2 + 1)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityMode {
    /// Backtracking over every `P3`-free set.
    Exhaustive,
    /// Random maximal `P3`-free sets; can only refute or stay unknown.
    Sampled { seed: u64 },
}

struct Lines {
    l: usize,
    sets: Vec<VertexSet>,
}

impl Lines {
    fn new(g: &Graph, pat: &LPattern) -> Self {
        Lines {
            l: pat.l,
            sets: pat
                .lines()
                .into_iter()
                .map(|(_, b)| VertexSet::from_iter_with_capacity(g.n(), b.iter().copied()))
                .collect(),
        }
    }

    fn within_a_line(&self, x: &VertexSet) -> bool {
        x.is_empty() || self.sets.iter().any(|line| x.is_subset(line.words()))
    }

    /// (X1), (X2) or (X3) for `x`.
    fn regular(&self, x: &VertexSet) -> bool {
        let size = x.len();
        if 5 * size <= 2 * self.l || self.within_a_line(x) {
            return true;
        }
        5 * size <= 3 * self.l
            && x.iter().any(|v| {
                let mut rest = x.clone();
                rest.remove(v);
                self.within_a_line(&rest)
            })
    }
}

fn dfs(
    g: &Graph,
    lines: &Lines,
    start: usize,
    x: &mut VertexSet,
    budget: &mut Budget,
) -> std::result::Result<bool, Exhausted> {
    for v in start..g.n() {
        budget.tick()?;
        x.insert(v);
        if g.is_cluster(x) && (!lines.regular(x) || dfs(g, lines, v + 1, x, budget)?) {
            return Ok(true);
        }
        x.remove(v);
    }
    Ok(false)
}

/// Verified iff every `X` with `g[X]` `P3`-free lies in a line of the pattern
/// (X1), or has `5|X| <= 3l` and lies in a line after removing one vertex
/// (X2), or has `5|X| <= 2l` (X3).
pub fn check_regularity(g: &Graph, pat: &LPattern, mode: RegularityMode, budget: u64) -> Result<Certificate> {
    check_host(g, pat)?;
    let lines = Lines::new(g, pat);
    let mut b = Budget::new(budget);
    let violation = |x: &VertexSet, spent: u64| {
        Certificate::refuted(
            "regularity",
            Witness::Subset {
                set: x.to_vec(),
                line: None,
                outside: vec![],
            },
            spent,
        )
    };
    let cert = match mode {
        RegularityMode::Exhaustive => {
            let mut x = VertexSet::new(g.n());
            match dfs(g, &lines, 0, &mut x, &mut b) {
                Ok(true) => violation(&x, b.spent()),
                Ok(false) => {
                    Certificate::verified("regularity", Some(Witness::Exhausted { nodes: b.spent() }), b.spent())
                }
                Err(Exhausted) => Certificate::unknown("regularity", budget),
            }
        }
        RegularityMode::Sampled { seed } => {
            let mut found = None;
            'samples: for sample in 0.. {
                let mut order: Vec<usize> = (0..g.n()).collect();
                order.shuffle(&mut rng::substream(seed, sample));
                let mut x = VertexSet::new(g.n());
                for v in order {
                    if b.tick().is_err() {
                        break 'samples;
                    }
                    x.insert(v);
                    if !g.is_cluster(&x) {
                        x.remove(v);
                    }
                }
                if !lines.regular(&x) {
                    found = Some(x);
                    break;
                }
            }
            match found {
                Some(x) => violation(&x, b.spent()),
                None => Certificate::unknown("regularity", budget),
            }
        }
    };
    Ok(cert.with_param("l", pat.l))
}

/// Largest `X` inside `line` that is not `v`-diverse: `v` has at most one
/// neighbor or at most one non-neighbor in `X`.
fn largest_non_diverse(g: &Graph, line: &[usize], v: usize) -> Vec<usize> {
    let (nbrs, non): (Vec<usize>, Vec<usize>) = line.iter().partition(|&&x| g.has_edge(v, x));
    let few_nbrs: Vec<usize> = non.iter().chain(nbrs.first()).copied().collect();
    let few_non: Vec<usize> = nbrs.iter().chain(non.first()).copied().collect();
    if few_nbrs.len() >= few_non.len() {
        few_nbrs
    } else {
        few_non
    }
}

/// Largest `X` inside `line` that is neither `v1`- nor `v2`-diverse.
fn largest_non_diverse_pair(g: &Graph, line: &[usize], v1: usize, v2: usize) -> Vec<usize> {
    let cell = |a1: bool, a2: bool| -> Vec<usize> {
        line.iter()
            .copied()
            .filter(|&x| g.has_edge(v1, x) == a1 && g.has_edge(v2, x) == a2)
            .collect()
    };
    let mut best: Vec<usize> = Vec::new();
    for r1 in [false, true] {
        for r2 in [false, true] {
            // cells with adjacency r_i to v_i are free; at most one vertex
            // with the other adjacency to each v_i
            let mut x = cell(r1, r2);
            let both = cell(!r1, !r2);
            let only1 = cell(!r1, r2);
            let only2 = cell(r1, !r2);
            let split = usize::from(!only1.is_empty()) + usize::from(!only2.is_empty());
            if split >= usize::from(!both.is_empty()) {
                x.extend(only1.first());
                x.extend(only2.first());
            } else {
                x.extend(both.first());
            }
            if x.len() > best.len() {
                best = x;
            }
        }
    }
    best
}

/// The diversity condition: for every line `L`, every `X ⊆ L` and distinct
/// `v1, v2` outside `L`, if `7|X| >= 4l` then `X` is `v1`-diverse, and if
/// `3|X| >= l` then `X` is `v1`- or `v2`-diverse. A refutation names the line,
/// the outside vertices and a bad `X`.
pub fn check_star_condition(g: &Graph, pat: &LPattern) -> Result<Certificate> {
    check_host(g, pat)?;
    let l = pat.l;
    let mut checks = 0u64;
    for (_, line) in pat.lines() {
        let outside: Vec<usize> = (0..g.n()).filter(|v| !line.contains(v)).collect();
        for &v in &outside {
            checks += 1;
            let x = largest_non_diverse(g, line, v);
            if 7 * x.len() >= 4 * l {
                return Ok(star_refuted(x, line, vec![v], checks));
            }
        }
        for (i, &v1) in outside.iter().enumerate() {
            for &v2 in &outside[i + 1..] {
                checks += 1;
                let x = largest_non_diverse_pair(g, line, v1, v2);
                if 3 * x.len() >= l {
                    return Ok(star_refuted(x, line, vec![v1, v2], checks));
                }
            }
        }
    }
    Ok(Certificate::verified("star", None, checks).with_param("l", l))
}

fn star_refuted(mut x: Vec<usize>, line: &[usize], outside: Vec<usize>, checks: u64) -> Certificate {
    x.sort_unstable();
    Certificate::refuted(
        "star",
        Witness::Subset {
            set: x,
            line: Some(line.to_vec()),
            outside,
        },
        checks,
    )
}

/// True when `x` is `v`-diverse: `v` has at least two neighbors and two
/// non-neighbors in `x`.
pub fn is_diverse(g: &Graph, x: &[usize], v: usize) -> bool {
    let a = x.iter().filter(|&&u| g.has_edge(v, u)).count();
    a >= 2 && x.len() - a >= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Status;
    use crate::constructions::{make_l_pattern, sample_jumble_graph};
    use crate::testutil::assignments;
    use proptest::prelude::*;

    fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0u64..1 << items.len()).map(move |m| (0..items.len()).filter(|i| m >> i & 1 == 1).map(|i| items[i]).collect())
    }

    fn brute_star(g: &Graph, pat: &LPattern) -> bool {
        let l = pat.l;
        pat.lines().iter().all(|(_, line)| {
            let outside: Vec<usize> = (0..g.n()).filter(|v| !line.contains(v)).collect();
            subsets(line).all(|x| {
                let single = 7 * x.len() < 4 * l || outside.iter().all(|&v| is_diverse(g, &x, v));
                let pair = 3 * x.len() < l
                    || outside.iter().enumerate().all(|(i, &v1)| {
                        outside[i + 1..]
                            .iter()
                            .all(|&v2| is_diverse(g, &x, v1) || is_diverse(g, &x, v2))
                    });
                single && pair
            })
        })
    }

    fn brute_regular(g: &Graph, pat: &LPattern) -> bool {
        let lines = Lines::new(g, pat);
        let all: Vec<usize> = (0..g.n()).collect();
        let regular = subsets(&all).all(|x| {
            let set = VertexSet::from_iter_with_capacity(g.n(), x.iter().copied());
            !g.is_cluster(&set) || lines.regular(&set)
        });
        regular
    }

    #[test]
    fn s1_is_verified_for_l2_samples() {
        let pat = make_l_pattern(2);
        for seed in 0..5 {
            let g = sample_jumble_graph(&pat, seed);
            let certs = certify_jumble(&g, &pat, u64::MAX).unwrap();
            assert_eq!(certs[0].status, Status::Verified);
            assert_ne!(certs[1].status, Status::Unknown);
            if let Some(Witness::Partition { parts }) = &certs[1].witness {
                assert_eq!(parts.len(), 5);
                for p in parts {
                    assert!(g.is_cluster(&VertexSet::from_iter_with_capacity(g.n(), p.iter().copied())));
                }
            }
        }
    }

    #[test]
    fn s2_matches_assignment_enumeration_at_l2() {
        let pat = make_l_pattern(2);
        let g = sample_jumble_graph(&pat, 3);
        let exists = assignments(g.n(), 5).any(|a| {
            (0..5).all(|i| {
                let part = VertexSet::from_iter_with_capacity(g.n(), (0..g.n()).filter(|&v| a[v] == i));
                g.is_cluster(&part)
            })
        });
        let certs = certify_jumble(&g, &pat, u64::MAX).unwrap();
        assert_eq!(certs[1].status == Status::Refuted, exists);
    }

    #[test]
    fn wrong_host_size_is_rejected() {
        assert!(certify_jumble(&Graph::new(4), &make_l_pattern(2), 10).is_err());
    }

    #[test]
    fn regularity_matches_brute_force_at_l2() {
        let pat = make_l_pattern(2);
        for seed in 0..4 {
            let g = sample_jumble_graph(&pat, seed);
            let cert = check_regularity(&g, &pat, RegularityMode::Exhaustive, u64::MAX).unwrap();
            assert_eq!(cert.status == Status::Verified, brute_regular(&g, &pat), "seed {seed}");
            if let Some(Witness::Subset { set, .. }) = &cert.witness {
                let x = VertexSet::from_iter_with_capacity(g.n(), set.iter().copied());
                assert!(g.is_cluster(&x));
                assert!(!Lines::new(&g, &pat).regular(&x));
            }
        }
    }

    #[test]
    fn sampled_regularity_never_verifies() {
        let pat = make_l_pattern(3);
        let g = sample_jumble_graph(&pat, 1);
        let cert = check_regularity(&g, &pat, RegularityMode::Sampled { seed: 2 }, 20_000).unwrap();
        assert_ne!(cert.status, Status::Verified);
    }

    #[test]
    fn star_examples() {
        let g = Graph::complete(4);
        assert_eq!(largest_non_diverse(&g, &[1, 2, 3], 0), vec![1, 2, 3]);
        let mut g = Graph::new(5);
        g.add_edge(4, 0);
        g.add_edge(4, 1);
        let x = largest_non_diverse(&g, &[0, 1, 2, 3], 4);
        assert_eq!(x.len(), 3);
        assert!(!is_diverse(&g, &x, 4));
    }

    #[test]
    fn star_matches_brute_force_on_patterns() {
        for l in 1..=4 {
            let pat = make_l_pattern(l);
            for seed in 0..2 {
                let g = sample_jumble_graph(&pat, seed);
                let cert = check_star_condition(&g, &pat).unwrap();
                assert_eq!(
                    cert.status == Status::Verified,
                    brute_star(&g, &pat),
                    "l {l} seed {seed}"
                );
                if let Some(Witness::Subset { set, outside, .. }) = &cert.witness {
                    assert!(outside.iter().all(|&v| !is_diverse(&g, set, v)));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn pair_extremum_matches_subsets(bits in proptest::collection::vec(any::<(bool, bool)>(), 1..8)) {
            let n = bits.len() + 2;
            let mut g = Graph::new(n);
            for (i, &(a, b)) in bits.iter().enumerate() {
                g.set_edge(0, i + 2, a);
                g.set_edge(1, i + 2, b);
            }
            let line: Vec<usize> = (2..n).collect();
            let best = subsets(&line)
                .filter(|x| !is_diverse(&g, x, 0) && !is_diverse(&g, x, 1))
                .map(|x| x.len())
                .max()
                .unwrap();
            let x = largest_non_diverse_pair(&g, &line, 0, 1);
            prop_assert_eq!(x.len(), best);
            prop_assert!(!is_diverse(&g, &x, 0) && !is_diverse(&g, &x, 1));
            let single = subsets(&line).filter(|x| !is_diverse(&g, x, 0)).map(|x| x.len()).max().unwrap();
            prop_assert_eq!(largest_non_diverse(&g, &line, 0).len(), single);
        }
    }
}
