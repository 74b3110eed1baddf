//! Set-partition vocabulary: transversality, coverage, tameness and exclusivity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Disjoint nonempty blocks over the universe `0..universe`.
///
/// The union of the blocks may be a proper subset of the universe (a partition
/// of `X - Q0` lives in the universe `X`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPartition {
    pub universe: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(universe: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; universe];
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::InvalidParameters("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x >= universe {
                    return Err(Error::InvalidParameters(format!(
                        "element {x} outside universe of size {universe}"
                    )));
                }
                if seen[x] {
                    return Err(Error::InvalidParameters(format!("element {x} in two blocks")));
                }
                seen[x] = true;
            }
        }
        Ok(SetPartition { universe, blocks })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Elements covered by the blocks.
    pub fn support(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// Blocks restricted to elements outside `removed`, empty blocks dropped.
    pub fn restrict(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().copied().filter(|x| !removed.contains(x)).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect()
    }
}

/// Sorts each block and the block list, giving a canonical unordered form.
pub fn normalize(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = blocks
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    out.sort();
    out
}

pub fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Every block of `a` meets every block of `b` in at most one element.
pub fn are_transversal(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let universe = a.iter().chain(b.iter()).flatten().copied().max().map_or(0, |m| m + 1);
    let mut owner = vec![Vec::new(); universe];
    for (i, blk) in b.iter().enumerate() {
        for &x in blk {
            owner[x].push(i);
        }
    }
    a.iter().all(|blk| {
        let mut hits: Vec<usize> = blk.iter().flat_map(|&x| owner[x].iter().copied()).collect();
        let before = hits.len();
        hits.sort_unstable();
        hits.dedup();
        hits.len() == before
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Coverage {
    /// Some block contains the whole set.
    pub covered: bool,
    /// Number of 2-subsets not contained in any block.
    pub uncovered_pair_count: usize,
    /// At most one uncovered 2-subset.
    pub tame: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusivity {
    pub exclusive_elements: Vec<usize>,
    /// At least two exclusive elements.
    pub distinctive: bool,
}

/// A family of blocks (possibly from several partitions) with an
/// element-to-block index for coverage queries.
#[derive(Debug, Clone)]
pub struct Family {
    blocks: Vec<Vec<usize>>,
    containing: Vec<Vec<usize>>,
}

impl Family {
    pub fn new(blocks: Vec<Vec<usize>>) -> Self {
        let universe = blocks.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let mut containing = vec![Vec::new(); universe];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                containing[x].push(i);
            }
        }
        Family { blocks, containing }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    fn blocks_of(&self, x: usize) -> &[usize] {
        self.containing.get(x).map_or(&[], |v| v.as_slice())
    }

    /// Some block contains both `x` and `y`.
    pub fn pair_covered(&self, x: usize, y: usize) -> bool {
        self.blocks_of(x).iter().any(|&b| self.blocks[b].contains(&y))
    }

    pub fn coverage(&self, s: &[usize]) -> Coverage {
        let covered = match s.first() {
            None => !self.blocks.is_empty(),
            Some(&x) => self
                .blocks_of(x)
                .iter()
                .any(|&b| s.iter().all(|y| self.blocks[b].contains(y))),
        };
        let mut uncovered = 0;
        for (i, &x) in s.iter().enumerate() {
            for &y in &s[i + 1..] {
                if !self.pair_covered(x, y) {
                    uncovered += 1;
                }
            }
        }
        Coverage {
            covered,
            uncovered_pair_count: uncovered,
            tame: uncovered <= 1,
        }
    }

    /// Exclusive elements of block `p`: every other block containing them
    /// meets `p` in exactly one element.
    pub fn exclusivity(&self, p: usize) -> Exclusivity {
        let block = &self.blocks[p];
        let exclusive_elements: Vec<usize> = block
            .iter()
            .copied()
            .filter(|&x| {
                self.blocks_of(x)
                    .iter()
                    .filter(|&&b| b != p)
                    .all(|&b| intersection_size(&self.blocks[b], block) == 1)
            })
            .collect();
        Exclusivity {
            distinctive: exclusive_elements.len() >= 2,
            exclusive_elements,
        }
    }
}

/// Coverage of `s` by `family`; see [`Family::coverage`].
pub fn coverage(family: &[Vec<usize>], s: &[usize]) -> Coverage {
    Family::new(family.to_vec()).coverage(s)
}

/// Exclusivity of `family[p]`; see [`Family::exclusivity`].
pub fn exclusivity(family: &[Vec<usize>], p: usize) -> Exclusivity {
    Family::new(family.to_vec()).exclusivity(p)
}
