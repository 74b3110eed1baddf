//! Uniform cluster-graph sampling, homogeneous-set statistics and exact class
//! counts on small vertex sets.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homogeneous::max_homogeneous;
use crate::induced::find_induced_copy;
use crate::partition::SetPartition;
use crate::pattern::{find_template, st_member, Constellation, TemplateOutcome};
use crate::rng::{self, Rng};

/// Bell numbers `B(0..=n)`, computed exactly with the Bell triangle.
#[derive(Debug, Clone)]
pub struct BellTable {
    values: Vec<BigUint>,
}

impl BellTable {
    pub fn new(n: usize) -> Self {
        let mut values = vec![BigUint::one()];
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(row.last().expect("nonempty row").clone());
            for x in &row {
                let v = next.last().expect("nonempty row") + x;
                next.push(v);
            }
            values.push(next[0].clone());
            row = next;
        }
        values.truncate(n + 1);
        BellTable { values }
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n]
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    /// A uniformly random set partition of `{0, .., n-1}`: the block of the
    /// smallest remaining element has size `j` with probability
    /// `C(m-1, j-1) B(m-j) / B(m)` over the `m` remaining elements, and its
    /// other members are a uniform `(j-1)`-subset.
    pub fn sample(&self, n: usize, rng: &mut Rng) -> SetPartition {
        assert!(n <= self.max_n(), "Bell table too small for n = {n}");
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut blocks = Vec::new();
        while let Some(&first) = remaining.first() {
            let m = remaining.len();
            let r = rng.gen_biguint_below(self.get(m));
            let mut acc = BigUint::zero();
            let mut binom = BigUint::one();
            let mut size = m;
            for j in 1..=m {
                acc += &binom * self.get(m - j);
                if r < acc {
                    size = j;
                    break;
                }
                binom = binom * (m - j) / j;
            }
            let others: Vec<usize> = remaining[1..].choose_multiple(rng, size - 1).copied().collect();
            let mut block = vec![first];
            block.extend(&others);
            remaining.retain(|x| !block.contains(x));
            blocks.push(block);
        }
        SetPartition::new(n, blocks).expect("sampled blocks partition the ground set")
    }
}

/// Exact `B(n)`.
pub fn bell(n: usize) -> BigUint {
    BellTable::new(n).get(n).clone()
}

/// A uniformly random set partition of `{0, .., n-1}` drawn from `seed`.
pub fn sample_uniform_set_partition(n: usize, seed: u64) -> SetPartition {
    BellTable::new(n).sample(n, &mut rng::seeded(seed))
}

/// The cluster graph whose cliques are the blocks of `p`.
pub fn cluster_graph(p: &SetPartition) -> Graph {
    let mut g = Graph::new(p.universe);
    for b in &p.blocks {
        for (i, &u) in b.iter().enumerate() {
            for &v in &b[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

impl Quantiles {
    /// Linear-interpolation quantiles of `values`.
    pub fn of(values: &[f64]) -> Self {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            if v.is_empty() {
                return f64::NAN;
            }
            let pos = p * (v.len() - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        };
        Quantiles {
            min: q(0.0),
            q25: q(0.25),
            median: q(0.5),
            q75: q(0.75),
            max: q(1.0),
        }
    }
}

/// Homogeneous-set statistics of uniformly random `P3`-free graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub h: Vec<usize>,
    pub blocks: Vec<usize>,
    pub max_block: Vec<usize>,
    /// `h ln(n) / n` per trial.
    pub ratios: Vec<f64>,
    pub h_summary: Quantiles,
    pub ratio_summary: Quantiles,
    /// Trials whose `h` was recomputed by the exact branch and bound.
    pub cross_checked: usize,
}

/// Largest `n` for which trials are cross-checked by [`max_homogeneous`].
pub const CROSS_CHECK_MAX_N: usize = 30;

struct Trial {
    h: usize,
    blocks: usize,
    max_block: usize,
    checked: bool,
}

fn run_trial(table: &BellTable, n: usize, seed: u64, trial: usize) -> Trial {
    let p = table.sample(n, &mut rng::substream(seed, trial as u64));
    let blocks = p.blocks.len();
    let max_block = p.blocks.iter().map(Vec::len).max().unwrap_or(0);
    let h = blocks.max(max_block);
    let checked = n <= CROSS_CHECK_MAX_N;
    if checked {
        let exact = max_homogeneous(&cluster_graph(&p)).size;
        assert_eq!(exact, h, "cluster-graph identity failed for trial {trial}");
    }
    Trial {
        h,
        blocks,
        max_block,
        checked,
    }
}

/// Samples `trials` uniform `P3`-free graphs on `n` labeled vertices (trial
/// `i` uses sub-stream `i` of `seed`) and records `h = max(#blocks, max
/// block)`. Trials are split over `jobs` threads; the report does not depend
/// on `jobs`.
pub fn h_statistics_p3free(n: usize, trials: usize, seed: u64, jobs: usize) -> Result<HReport> {
    if n < 2 || trials < 1 {
        return Err(Error::InvalidParameters("need n >= 2 and trials >= 1".into()));
    }
    let table = BellTable::new(n);
    let jobs = jobs.clamp(1, trials);
    let mut results: Vec<Option<Trial>> = (0..trials).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunk = trials.div_ceil(jobs);
        for (c, slots) in results.chunks_mut(chunk).enumerate() {
            let table = &table;
            scope.spawn(move || {
                for (k, slot) in slots.iter_mut().enumerate() {
                    *slot = Some(run_trial(table, n, seed, c * chunk + k));
                }
            });
        }
    });
    let results: Vec<Trial> = results.into_iter().map(|t| t.expect("every trial ran")).collect();
    let h: Vec<usize> = results.iter().map(|t| t.h).collect();
    let ratios: Vec<f64> = h.iter().map(|&h| h as f64 * (n as f64).ln() / n as f64).collect();
    Ok(HReport {
        n,
        trials,
        seed,
        h_summary: Quantiles::of(&h.iter().map(|&x| x as f64).collect::<Vec<_>>()),
        ratio_summary: Quantiles::of(&ratios),
        blocks: results.iter().map(|t| t.blocks).collect(),
        max_block: results.iter().map(|t| t.max_block).collect(),
        cross_checked: results.iter().filter(|t| t.checked).count(),
        h,
        ratios,
    })
}

/// Largest `n` accepted by [`enumerate_class`].
pub const ENUMERATE_MAX_N: usize = 7;

/// Number of labeled graphs on `{0, .., n-1}` satisfying `predicate`,
/// iterating all `2^(n(n-1)/2)` graphs split over `jobs` threads.
pub fn enumerate_class<F>(n: usize, predicate: F, jobs: usize) -> Result<u64>
where
    F: Fn(&Graph) -> bool + Sync,
{
    if n > ENUMERATE_MAX_N {
        return Err(Error::InvalidParameters(format!("n = {n} exceeds {ENUMERATE_MAX_N}")));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let total = 1u64 << pairs;
    let jobs = (jobs.max(1) as u64).min(total);
    let chunk = total.div_ceil(jobs);
    let predicate = &predicate;
    let count = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|c| {
                scope.spawn(move || {
                    let mut g = Graph::new(n);
                    let mut count = 0;
                    for code in c * chunk..((c + 1) * chunk).min(total) {
                        let mut k = 0;
                        for v in 1..n {
                            for u in 0..v {
                                g.set_edge(u, v, code >> k & 1 == 1);
                                k += 1;
                            }
                        }
                        if predicate(&g) {
                            count += 1;
                        }
                    }
                    count
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    });
    Ok(count)
}

/// A named membership test usable with [`enumerate_class`].
pub type ClassPredicate = Box<dyn Fn(&Graph) -> bool + Sync + Send>;

/// Class names understood by [`named_class`].
pub const CLASS_NAMES: &[&str] = &[
    "all",
    "forb-p3",
    "forb-k2",
    "forb-k3",
    "forb-c4",
    "h-S-T (graphs splitting into S stable sets and T cliques)",
    "template-empty-L (templates of the empty constellation with L clique parts)",
];

fn forb(h: Graph) -> ClassPredicate {
    Box::new(move |g: &Graph| h.n() > g.n() || find_induced_copy(g, &h).is_none())
}

/// The membership test called `name`; see [`CLASS_NAMES`].
pub fn named_class(name: &str) -> Result<ClassPredicate> {
    let bad = || Error::InvalidParameters(format!("unknown class {name:?}"));
    let number = |s: &str| s.parse::<usize>().map_err(|_| bad());
    Ok(match name {
        "all" => Box::new(|_: &Graph| true),
        "forb-p3" => Box::new(|g: &Graph| g.is_cluster(&g.vertex_set())),
        "forb-k2" => Box::new(|g: &Graph| g.edge_count() == 0),
        "forb-k3" => forb(Graph::complete(3)),
        "forb-c4" => forb(Graph::cycle(4)),
        _ => {
            if let Some(rest) = name.strip_prefix("h-") {
                let (s, t) = rest.split_once('-').ok_or_else(bad)?;
                let (s, t) = (number(s)?, number(t)?);
                Box::new(move |g: &Graph| st_member(g, s, t))
            } else if let Some(l) = name.strip_prefix("template-empty-") {
                let c = Constellation::empty(vec![true; number(l)?]);
                Box::new(move |g: &Graph| matches!(find_template(g, &c, false, u64::MAX).0, TemplateOutcome::Found(_)))
            } else {
                return Err(bad());
            }
        }
    })
}

/// Output record of a named class count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub n: usize,
    pub predicate: String,
    /// Decimal string, so arbitrarily large counts survive JSON.
    pub count: String,
}

pub fn count_named_class(n: usize, name: &str, jobs: usize) -> Result<ClassCount> {
    let predicate = named_class(name)?;
    Ok(ClassCount {
        n,
        predicate: name.to_string(),
        count: enumerate_class(n, predicate, jobs)?.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let expected = [1u32, 1, 2, 5, 15, 52, 203, 877, 4140];
        let t = BellTable::new(8);
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(t.get(n), &BigUint::from(b));
        }
        assert_eq!(bell(25).to_string(), "4638590332229999353");
    }

    #[test]
    fn sampler_small_cases() {
        assert_eq!(sample_uniform_set_partition(1, 9).blocks, vec![vec![0]]);
        let p = sample_uniform_set_partition(50, 3);
        assert_eq!(p.blocks.iter().map(Vec::len).sum::<usize>(), 50);
        assert_eq!(p, sample_uniform_set_partition(50, 3));
    }

    #[test]
    fn first_block_size_distribution_n4() {
        // Pr[block of element 0 has size 4] = B(0) / B(4) = 1/15
        let t = BellTable::new(4);
        let draws = 60_000;
        let mut rng = rng::seeded(17);
        let full = (0..draws).filter(|_| t.sample(4, &mut rng).blocks.len() == 1).count();
        let freq = full as f64 / draws as f64;
        assert!((freq - 1.0 / 15.0).abs() < 0.005, "{freq}");
    }

    #[test]
    fn uniform_over_the_five_partitions_of_three() {
        let t = BellTable::new(3);
        let mut rng = rng::seeded(5);
        let mut counts = std::collections::BTreeMap::new();
        let draws = 100_000;
        for _ in 0..draws {
            let mut p = t.sample(3, &mut rng).blocks;
            p.sort();
            *counts.entry(p).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 5);
        for &c in counts.values() {
            assert!((c as f64 / draws as f64 - 0.2).abs() < 0.02);
        }
    }

    #[test]
    fn h_identity_is_cross_checked() {
        let r = h_statistics_p3free(30, 20, 4, 3).unwrap();
        assert_eq!(r.cross_checked, 20);
        for i in 0..20 {
            assert_eq!(r.h[i], r.blocks[i].max(r.max_block[i]));
        }
        assert_eq!(r, h_statistics_p3free(30, 20, 4, 1).unwrap());
    }

    #[test]
    fn class_counts() {
        let bells = [1u64, 2, 5, 15, 52, 203];
        for n in 1..=6 {
            assert_eq!(
                enumerate_class(n, named_class("forb-p3").unwrap(), 2).unwrap(),
                bells[n - 1]
            );
            assert_eq!(enumerate_class(n, named_class("forb-k2").unwrap(), 1).unwrap(), 1);
        }
        assert_eq!(enumerate_class(3, named_class("h-2-0").unwrap(), 1).unwrap(), 7);
        assert!(enumerate_class(8, |_| true, 1).is_err());
        assert!(named_class("nope").is_err());
        assert!(named_class("h-2").is_err());
    }

    #[test]
    fn empty_template_count_dominates_clique_partitions() {
        for n in 1..=5 {
            for l in 2..=3 {
                let templates = enumerate_class(n, named_class(&format!("template-empty-{l}")).unwrap(), 2).unwrap();
                let cliques = enumerate_class(n, named_class(&format!("h-0-{l}")).unwrap(), 2).unwrap();
                assert!(templates >= cliques);
            }
        }
    }
}
