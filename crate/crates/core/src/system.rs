//! Random partition systems `(Q, R, P0..P4)` and their property checkers.

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::partition::{intersection_size, normalize, Family};
use crate::rng::{self, Rng};

/// Number of `P` partitions in a system.
pub const P_COUNT: usize = 5;

/// Acceptance thresholds used by the sampler and the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Largest allowed intersection of blocks from distinct families.
    pub p5_tau: f64,
    /// Distinctive blocks required in every `P_i`.
    pub min_distinctive: usize,
    /// Disjoint sub-collection sizes are `ceil(a * l)` and `ceil(b * sqrt(k))`.
    pub p6_a_frac: f64,
    pub p6_b_frac: f64,
}

impl Thresholds {
    /// The asymptotic defaults: `tau = sqrt(k)`, two distinctive blocks,
    /// `l/10` and `sqrt(k)/10`.
    pub fn asymptotic(k: usize) -> Self {
        Thresholds {
            p5_tau: (k as f64).sqrt(),
            min_distinctive: 2,
            p6_a_frac: 0.1,
            p6_b_frac: 0.1,
        }
    }

    /// Desk-scale variant: intersections are not bounded below the block size.
    pub fn relaxed(l: usize, k: usize) -> Self {
        Thresholds {
            p5_tau: p_block_size(l, k) as f64,
            ..Self::asymptotic(k)
        }
    }
}

fn p_block_size(l: usize, k: usize) -> usize {
    k * (l - k) / l + 1
}

/// Identifies one of the six partitions making up the pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    R,
    P(usize),
}

impl FamilyId {
    pub fn all() -> [FamilyId; 6] {
        [
            FamilyId::R,
            FamilyId::P(0),
            FamilyId::P(1),
            FamilyId::P(2),
            FamilyId::P(3),
            FamilyId::P(4),
        ]
    }

    pub fn name(self) -> String {
        match self {
            FamilyId::R => "R".into(),
            FamilyId::P(i) => format!("P{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionSystem {
    pub l: usize,
    pub k: usize,
    /// Ground set size; elements are `0..x`.
    #[serde(rename = "X")]
    pub x: usize,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<usize>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<usize>>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<Vec<usize>>>,
    pub seed: u64,
    pub thresholds: Thresholds,
}

impl PartitionSystem {
    pub fn family(&self, id: FamilyId) -> &[Vec<usize>] {
        match id {
            FamilyId::R => &self.r,
            FamilyId::P(i) => &self.p[i],
        }
    }

    /// `R ∪ P0 ∪ ... ∪ P4` with the originating family of each block.
    pub fn pool_blocks(&self) -> Vec<(FamilyId, usize, Vec<usize>)> {
        FamilyId::all()
            .into_iter()
            .flat_map(|f| self.family(f).iter().enumerate().map(move |(i, b)| (f, i, b.clone())))
            .collect()
    }

    pub fn pool(&self) -> Family {
        Family::new(self.pool_blocks().into_iter().map(|(_, _, b)| b).collect())
    }

    /// Index of `P_i`'s block `j` inside [`Self::pool`].
    pub fn pool_index(&self, f: FamilyId, j: usize) -> usize {
        let mut offset = 0;
        for g in FamilyId::all() {
            if g == f {
                return offset + j;
            }
            offset += self.family(g).len();
        }
        unreachable!()
    }

    /// Indices of distinctive blocks of `P_i` with respect to the pool.
    pub fn distinctive_blocks(&self, i: usize) -> Vec<(usize, Vec<usize>)> {
        let pool = self.pool();
        (0..self.p[i].len())
            .filter_map(|j| {
                let e = pool.exclusivity(self.pool_index(FamilyId::P(i), j));
                e.distinctive.then_some((j, e.exclusive_elements))
            })
            .collect()
    }

    /// Checks (Q), (R), (P1) and (P2).
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        let (l, k) = (self.l, self.k);
        if self.x != (l - k) * k + l {
            return Err(format!("|X| = {} but expected {}", self.x, (l - k) * k + l));
        }
        if self.q.len() != k + 1 || self.q[0].len() != l || self.q[1..].iter().any(|b| b.len() != l - k) {
            return Err("Q block sizes".into());
        }
        let mut seen = vec![0u8; self.x];
        for b in &self.q {
            for &x in b {
                seen[x] += 1;
            }
        }
        if seen.iter().any(|&c| c != 1) {
            return Err("Q is not a partition of X".into());
        }
        let q0 = &self.q[0];
        let mut r_seen = vec![0u8; self.x];
        for b in &self.r {
            for &x in b {
                r_seen[x] += 1;
            }
        }
        if self.r.len() != l - k || (0..self.x).any(|x| r_seen[x] != u8::from(!q0.contains(&x))) {
            return Err("R is not an (l-k)-block partition of X - Q0".into());
        }
        if !crate::partition::are_transversal(&self.r, &self.q) {
            return Err("R is not transversal to Q".into());
        }
        let size = p_block_size(l, k);
        for (i, pi) in self.p.iter().enumerate() {
            let mut seen = vec![0u8; self.x];
            for b in pi {
                for &x in b {
                    seen[x] += 1;
                }
            }
            if pi.len() != l || pi.iter().any(|b| b.len() != size) || seen.iter().any(|&c| c != 1) {
                return Err(format!("P{i} violates the block-size shape"));
            }
            if !crate::partition::are_transversal(pi, &self.q) {
                return Err(format!("P{i} is not transversal to Q"));
            }
        }
        if self.p.len() != P_COUNT {
            return Err("expected five P partitions".into());
        }
        Ok(())
    }
}

fn validate_parameters(l: usize, k: usize) -> Result<()> {
    if k == 0 || l <= k {
        return Err(Error::InvalidParameters(format!(
            "need l > k >= 1, got l = {l}, k = {k}"
        )));
    }
    if !((l - k) * k).is_multiple_of(l) {
        return Err(Error::InvalidParameters(format!(
            "(l - k) k = {} is not divisible by l = {l}",
            (l - k) * k
        )));
    }
    Ok(())
}

/// Elements of `Q_j` in the canonical layout: `Q0 = 0..l`, then consecutive
/// runs of `l - k`.
fn q_blocks(l: usize, k: usize) -> Vec<Vec<usize>> {
    let mut q = vec![(0..l).collect::<Vec<_>>()];
    for j in 0..k {
        let start = l + j * (l - k);
        q.push((start..start + (l - k)).collect());
    }
    q
}

fn sample_r(q: &[Vec<usize>], l: usize, k: usize, rng: &mut Rng) -> Vec<Vec<usize>> {
    let mut r = vec![Vec::with_capacity(k); l - k];
    for qj in &q[1..] {
        let mut perm = qj.clone();
        perm.shuffle(rng);
        for (m, x) in perm.into_iter().enumerate() {
            r[m].push(x);
        }
    }
    r
}

/// One partition with `l` blocks of size `k(l-k)/l + 1`, transversal to `Q`:
/// each `Q_j` (j >= 1) picks `l - k` distinct blocks uniformly among those with
/// spare capacity, restarting when fewer remain; `Q0` is spread one per block.
fn sample_p(q: &[Vec<usize>], l: usize, k: usize, rng: &mut Rng) -> Result<Vec<Vec<usize>>> {
    let per_block = k * (l - k) / l;
    const MAX_RESTARTS: usize = 100_000;
    'restart: for _ in 0..MAX_RESTARTS {
        let mut cap = vec![per_block; l];
        let mut blocks: Vec<Vec<usize>> = vec![Vec::with_capacity(per_block + 1); l];
        for qj in &q[1..] {
            let mut avail: Vec<usize> = (0..l).filter(|&b| cap[b] > 0).collect();
            if avail.len() < l - k {
                continue 'restart;
            }
            avail.shuffle(rng);
            let mut elems = qj.clone();
            elems.shuffle(rng);
            for (&b, x) in avail.iter().zip(elems) {
                cap[b] -= 1;
                blocks[b].push(x);
            }
        }
        let mut q0 = q[0].clone();
        q0.shuffle(rng);
        for (b, x) in q0.into_iter().enumerate() {
            blocks[b].push(x);
        }
        return Ok(normalize(&blocks));
    }
    Err(Error::BudgetExhausted {
        property: "transversal P shape".into(),
        attempts: MAX_RESTARTS as u64,
    })
}

/// Draws `(Q, R, P0..P4)` satisfying (Q), (R), (P1), (P2) by construction and
/// resamples until (P3) and (P5) hold at the given thresholds. Attempt `a`
/// uses the sub-stream `a` of `seed`.
pub fn sample_partition_system(
    l: usize,
    k: usize,
    seed: u64,
    max_retries: u64,
    thresholds: Thresholds,
) -> Result<PartitionSystem> {
    validate_parameters(l, k)?;
    let q = q_blocks(l, k);
    let x = (l - k) * k + l;
    let mut last_failure = String::from("no attempts made");
    for attempt in 0..max_retries.max(1) {
        let mut rng = rng::substream(seed, attempt);
        let r = normalize(&sample_r(&q, l, k, &mut rng));
        let mut p = Vec::with_capacity(P_COUNT);
        for _ in 0..P_COUNT {
            p.push(sample_p(&q, l, k, &mut rng)?);
        }
        let sys = PartitionSystem {
            l,
            k,
            x,
            q: q.clone(),
            r,
            p,
            seed,
            thresholds,
        };
        debug_assert_eq!(sys.check_structure(), Ok(()));
        let p5 = check_p5(&sys, thresholds.p5_tau);
        if !p5.is_verified() {
            last_failure = "P5".into();
            continue;
        }
        if let Some(i) = (0..P_COUNT).find(|&i| sys.distinctive_blocks(i).len() < thresholds.min_distinctive) {
            last_failure = format!("P3 (P{i})");
            continue;
        }
        return Ok(sys);
    }
    Err(Error::BudgetExhausted {
        property: last_failure,
        attempts: max_retries.max(1),
    })
}

/// Every pair of blocks from distinct families meets in at most `tau` elements.
pub fn check_p5(sys: &PartitionSystem, tau: f64) -> Certificate {
    let fams = FamilyId::all();
    let mut scanned = 0u64;
    for (a, &fa) in fams.iter().enumerate() {
        for &fb in &fams[a + 1..] {
            for ba in sys.family(fa) {
                for bb in sys.family(fb) {
                    scanned += 1;
                    let inter = intersection_size(ba, bb);
                    if inter as f64 > tau {
                        return Certificate::refuted(
                            "P5",
                            Witness::BlockPair {
                                first_family: fa.name(),
                                first: ba.clone(),
                                second_family: fb.name(),
                                second: bb.clone(),
                                intersection: inter,
                            },
                            scanned,
                        )
                        .with_param("tau", tau);
                    }
                }
            }
        }
    }
    Certificate::verified("P5", None, scanned).with_param("tau", tau)
}

pub fn p6_sizes(sys: &PartitionSystem, a_frac: f64, b_frac: f64) -> (usize, usize) {
    let a = (a_frac * sys.l as f64 - 1e-9).ceil().max(0.0) as usize;
    let b = (b_frac * (sys.k as f64).sqrt() - 1e-9).ceil().max(0.0) as usize;
    (a, b)
}

/// Searches for `A ⊆ first`, `B ⊆ second` with `|A| >= need_a`, `|B| >= need_b`
/// and disjoint unions. Exact; `Err` on budget exhaustion.
pub(crate) fn disjoint_subcollections(
    first: &[Vec<usize>],
    second: &[Vec<usize>],
    need_a: usize,
    need_b: usize,
    budget: &mut Budget,
) -> std::result::Result<Option<(Vec<usize>, Vec<usize>)>, crate::budget::Exhausted> {
    if need_a > first.len() || need_b > second.len() {
        return Ok(None);
    }
    // compat[j] = blocks of `first` disjoint from second[j]
    let compat: Vec<Vec<bool>> = second
        .iter()
        .map(|b| first.iter().map(|a| intersection_size(a, b) == 0).collect())
        .collect();
    let all: Vec<bool> = vec![true; first.len()];
    let mut chosen = Vec::new();
    fn rec(
        compat: &[Vec<bool>],
        start: usize,
        common: &[bool],
        need_a: usize,
        need_b: usize,
        chosen: &mut Vec<usize>,
        budget: &mut Budget,
    ) -> std::result::Result<bool, crate::budget::Exhausted> {
        budget.tick()?;
        if common.iter().filter(|&&c| c).count() < need_a {
            return Ok(false);
        }
        if chosen.len() == need_b {
            return Ok(true);
        }
        let left = need_b - chosen.len();
        for j in start..compat.len() {
            if compat.len() - j < left {
                break;
            }
            let next: Vec<bool> = common.iter().zip(&compat[j]).map(|(&c, &d)| c && d).collect();
            chosen.push(j);
            if rec(compat, j + 1, &next, need_a, need_b, chosen, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    if rec(&compat, 0, &all, need_a, need_b, &mut chosen, budget)? {
        let common: Vec<usize> = (0..first.len())
            .filter(|&i| chosen.iter().all(|&j| compat[j][i]))
            .take(need_a)
            .collect();
        Ok(Some((common, chosen)))
    } else {
        Ok(None)
    }
}

/// (P6): for every ordered pair of distinct families, no sub-collections of
/// sizes `ceil(a_frac * l)` and `ceil(b_frac * sqrt(k))` have disjoint unions.
pub fn check_p6(sys: &PartitionSystem, a_frac: f64, b_frac: f64, budget: u64) -> Certificate {
    let (need_a, need_b) = p6_sizes(sys, a_frac, b_frac);
    let mut b = Budget::new(budget);
    let fams = FamilyId::all();
    for &fa in &fams {
        for &fb in &fams {
            if fa == fb {
                continue;
            }
            match disjoint_subcollections(sys.family(fa), sys.family(fb), need_a, need_b, &mut b) {
                Err(_) => {
                    return Certificate::unknown("P6", budget)
                        .with_param("a_frac", a_frac)
                        .with_param("b_frac", b_frac)
                }
                Ok(Some((ia, ib))) => {
                    let fam_a = sys.family(fa);
                    let fam_b = sys.family(fb);
                    return Certificate::refuted(
                        "P6",
                        Witness::Subcollections {
                            first_family: fa.name(),
                            first: ia.iter().map(|&i| fam_a[i].clone()).collect(),
                            second_family: fb.name(),
                            second: ib.iter().map(|&j| fam_b[j].clone()).collect(),
                        },
                        b.spent(),
                    )
                    .with_param("a_frac", a_frac)
                    .with_param("b_frac", b_frac)
                    .with_param("min_first", need_a)
                    .with_param("min_second", need_b);
                }
                Ok(None) => {}
            }
        }
    }
    Certificate::verified("P6", None, b.spent())
        .with_param("a_frac", a_frac)
        .with_param("b_frac", b_frac)
        .with_param("min_first", need_a)
        .with_param("min_second", need_b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TameMatch {
    /// The candidate equals `P_i` restricted to `X - Z`.
    Match { index: usize },
    /// The candidate differs from every restriction; `block` is a witness.
    Mismatch { block: Vec<usize> },
}

/// Decides which `P_i` (if any) a tame `l`-partition of `X - Z` coincides with.
pub fn classify_tame_partition(sys: &PartitionSystem, candidate: &[Vec<usize>], z: &[usize]) -> Result<TameMatch> {
    if z.len() > 9 {
        return Err(Error::InvalidParameters(format!("|Z| = {} exceeds 9", z.len())));
    }
    if candidate.len() != sys.l {
        return Err(Error::InvalidCandidate(format!(
            "{} blocks, expected {}",
            candidate.len(),
            sys.l
        )));
    }
    let mut seen = vec![false; sys.x];
    for b in candidate {
        if b.is_empty() {
            return Err(Error::InvalidCandidate("empty block".into()));
        }
        for &x in b {
            if x >= sys.x || z.contains(&x) || seen[x] {
                return Err(Error::InvalidCandidate(format!("element {x} misplaced")));
            }
            seen[x] = true;
        }
    }
    if (0..sys.x).any(|x| !seen[x] && !z.contains(&x)) {
        return Err(Error::InvalidCandidate("candidate does not cover X - Z".into()));
    }
    let pool = sys.pool();
    if let Some(b) = candidate.iter().find(|b| !pool.coverage(b).tame) {
        return Err(Error::NotTame { block: b.clone() });
    }
    let cand = normalize(candidate);
    let restricted: Vec<Vec<Vec<usize>>> = sys
        .p
        .iter()
        .map(|pi| {
            normalize(
                &pi.iter()
                    .map(|b| b.iter().copied().filter(|x| !z.contains(x)).collect())
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    if let Some(index) = restricted.iter().position(|r| *r == cand) {
        return Ok(TameMatch::Match { index });
    }
    let block = cand
        .iter()
        .find(|b| restricted.iter().all(|r| !r.contains(b)))
        .or_else(|| {
            let best = restricted
                .iter()
                .max_by_key(|r| cand.iter().filter(|b| r.contains(b)).count())
                .expect("five restrictions");
            cand.iter().find(|b| !best.contains(b))
        })
        .expect("mismatching candidate has a foreign block")
        .clone();
    Ok(TameMatch::Mismatch { block })
}

/// Outcome of the randomized (P4) falsification search.
#[derive(Debug, Clone, Serialize)]
pub struct FalsifyReport {
    pub attempts: u64,
    pub tame_candidates: u64,
    pub counterexample: Option<(Vec<usize>, Vec<Vec<usize>>)>,
}

/// Perturbs restrictions of random `P_i` (moving or swapping elements across
/// blocks, with a random `Z` of size at most `z_max`) looking for a tame
/// `l`-partition that matches no `P_i`.
pub fn falsify_p4(sys: &PartitionSystem, z_max: usize, attempts: u64, seed: u64) -> FalsifyReport {
    let mut rng = rng::seeded(seed);
    let mut tame = 0;
    for _ in 0..attempts {
        let i = rng.gen_range(0..P_COUNT);
        let zs = rng.gen_range(0..=z_max.min(9));
        let mut all: Vec<usize> = (0..sys.x).collect();
        all.shuffle(&mut rng);
        let z: Vec<usize> = all[..zs].to_vec();
        let mut cand: Vec<Vec<usize>> = sys.p[i]
            .iter()
            .map(|b| b.iter().copied().filter(|x| !z.contains(x)).collect())
            .collect();
        let moves = rng.gen_range(1..=2);
        for _ in 0..moves {
            let a = rng.gen_range(0..cand.len());
            let b = rng.gen_range(0..cand.len());
            if a == b || cand[a].is_empty() {
                continue;
            }
            let ia = rng.gen_range(0..cand[a].len());
            let x = cand[a].remove(ia);
            if rng.gen_bool(0.5) && !cand[b].is_empty() {
                let ib = rng.gen_range(0..cand[b].len());
                let y = cand[b].remove(ib);
                cand[a].push(y);
            }
            cand[b].push(x);
        }
        if cand.iter().any(|b| b.is_empty()) {
            continue;
        }
        match classify_tame_partition(sys, &cand, &z) {
            Ok(TameMatch::Mismatch { .. }) => {
                tame += 1;
                return FalsifyReport {
                    attempts,
                    tame_candidates: tame,
                    counterexample: Some((z, normalize(&cand))),
                };
            }
            Ok(TameMatch::Match { .. }) => tame += 1,
            Err(_) => {}
        }
    }
    FalsifyReport {
        attempts,
        tame_candidates: tame,
        counterexample: None,
    }
}

/// Per-set form of (P7): `Some(covered)` for tame sets larger than `k/2`,
/// `None` when the property does not apply.
pub fn p7_holds_for(sys: &PartitionSystem, s: &[usize]) -> Option<bool> {
    let cov = sys.pool().coverage(s);
    (cov.tame && 2 * s.len() > sys.k).then_some(cov.covered)
}
