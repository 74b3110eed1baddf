//! Latin-square partitions, l-patterns and the random graphs built on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::intersection_size;
use crate::rng;

/// Rows, columns and diagonals of an `l x l` cell set. Every block has size
/// `l` and blocks of different families meet in exactly one cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSquare {
    pub cells: Vec<usize>,
    pub rows: Vec<Vec<usize>>,
    pub columns: Vec<Vec<usize>>,
    pub diagonals: Vec<Vec<usize>>,
}

impl LSquare {
    pub fn l(&self) -> usize {
        self.rows.len()
    }

    /// Checks sizes and the exactly-one-common-cell property.
    pub fn validate(&self) -> Result<()> {
        let l = self.l();
        if self.cells.len() != l * l {
            return Err(Error::InvalidParameters("square has the wrong number of cells".into()));
        }
        let fams = [&self.rows, &self.columns, &self.diagonals];
        for f in fams {
            if f.len() != l || f.iter().any(|b| b.len() != l) {
                return Err(Error::InvalidParameters("square line sizes".into()));
            }
            let mut all: Vec<usize> = f.iter().flatten().copied().collect();
            all.sort_unstable();
            let mut cells = self.cells.clone();
            cells.sort_unstable();
            if all != cells {
                return Err(Error::InvalidParameters(
                    "square family is not a partition of its cells".into(),
                ));
            }
        }
        for (a, fa) in fams.iter().enumerate() {
            for fb in &fams[a + 1..] {
                for x in fa.iter() {
                    for y in fb.iter() {
                        if intersection_size(x, y) != 1 {
                            return Err(Error::InvalidParameters(format!(
                                "lines {x:?} and {y:?} do not meet in exactly one cell"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn lines(&self) -> impl Iterator<Item = (LineKind, usize, &Vec<usize>)> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, b)| (LineKind::Row, i, b))
            .chain(self.columns.iter().enumerate().map(|(i, b)| (LineKind::Column, i, b)))
            .chain(
                self.diagonals
                    .iter()
                    .enumerate()
                    .map(|(i, b)| (LineKind::Diagonal, i, b)),
            )
    }
}

/// The cyclic `l`-square on cells `offset + i*l + j`: rows fix `i`, columns fix
/// `j`, diagonal `d` holds the cells with `i + j ≡ d (mod l)`.
pub fn make_l_square_at(l: usize, offset: usize) -> LSquare {
    let cell = |i: usize, j: usize| offset + i * l + j;
    let sq = LSquare {
        cells: (0..l * l).map(|c| offset + c).collect(),
        rows: (0..l).map(|i| (0..l).map(|j| cell(i, j)).collect()).collect(),
        columns: (0..l).map(|j| (0..l).map(|i| cell(i, j)).collect()).collect(),
        diagonals: (0..l)
            .map(|d| {
                let mut b: Vec<usize> = (0..l).map(|i| cell(i, (d + l - i) % l)).collect();
                b.sort_unstable();
                b
            })
            .collect(),
    };
    debug_assert!(sq.validate().is_ok());
    sq
}

pub fn make_l_square(l: usize) -> LSquare {
    assert!(l >= 1, "l must be positive");
    make_l_square_at(l, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineKind {
    Row,
    Column,
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LineId {
    pub square: usize,
    pub kind: LineKind,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum PairClass {
    FixedP3,
    FixedLine { line: LineId },
    Free,
}

/// Prescribed structure of a line in the jumble graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LineRole {
    Stable,
    Clique,
}

/// A `P3` on vertices `0, 1, 2` (edges `01`, `12`) followed by `l` disjoint
/// `l`-squares. Square `i` (0-based) plays the role of an `(l, i+1)`-square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPattern {
    pub l: usize,
    pub p3: Vec<usize>,
    pub p3_edges: Vec<(usize, usize)>,
    pub squares: Vec<LSquare>,
}

pub fn make_l_pattern(l: usize) -> LPattern {
    assert!(l >= 1, "l must be positive");
    LPattern {
        l,
        p3: vec![0, 1, 2],
        p3_edges: vec![(0, 1), (1, 2)],
        squares: (0..l).map(|s| make_l_square_at(l, 3 + s * l * l)).collect(),
    }
}

impl LPattern {
    pub fn vertex_count(&self) -> usize {
        self.l * self.l * self.l + 3
    }

    /// Checks the square invariants, disjointness and the vertex numbering.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        if self.squares.len() != self.l || self.p3.len() != 3 || self.p3_edges.len() != 2 {
            return Err(Error::InvalidParameters("pattern shape".into()));
        }
        let p = Graph::from_edges(
            3,
            &self
                .p3_edges
                .iter()
                .map(|&(u, v)| {
                    let idx = |x: usize| self.p3.iter().position(|&y| y == x);
                    (idx(u).unwrap_or(usize::MAX), idx(v).unwrap_or(usize::MAX))
                })
                .collect::<Vec<_>>(),
        )?;
        if !crate::induced::is_isomorphic(&p, &Graph::path(3)) {
            return Err(Error::InvalidParameters("the P3 part is not a path".into()));
        }
        let mut seen = vec![false; n];
        for &v in self.p3.iter().chain(self.squares.iter().flat_map(|s| s.cells.iter())) {
            if v >= n || seen[v] {
                return Err(Error::InvalidParameters(format!("vertex {v} repeated or out of range")));
            }
            seen[v] = true;
        }
        for sq in &self.squares {
            if sq.l() != self.l {
                return Err(Error::InvalidParameters("square of the wrong order".into()));
            }
            sq.validate()?;
        }
        Ok(())
    }

    /// Every line with its identifier.
    pub fn lines(&self) -> Vec<(LineId, &Vec<usize>)> {
        self.squares
            .iter()
            .enumerate()
            .flat_map(|(s, sq)| {
                sq.lines()
                    .map(move |(kind, index, b)| (LineId { square: s, kind, index }, b))
            })
            .collect()
    }

    pub fn line(&self, id: LineId) -> &Vec<usize> {
        let sq = &self.squares[id.square];
        match id.kind {
            LineKind::Row => &sq.rows[id.index],
            LineKind::Column => &sq.columns[id.index],
            LineKind::Diagonal => &sq.diagonals[id.index],
        }
    }

    /// Rows and the first `square + 1` diagonals are stable; columns and the
    /// remaining diagonals are cliques.
    pub fn line_role(&self, id: LineId) -> LineRole {
        match id.kind {
            LineKind::Row => LineRole::Stable,
            LineKind::Column => LineRole::Clique,
            LineKind::Diagonal if id.index <= id.square => LineRole::Stable,
            LineKind::Diagonal => LineRole::Clique,
        }
    }

    /// For each vertex, the lines through it.
    pub fn lines_by_vertex(&self) -> Vec<Vec<LineId>> {
        let mut by = vec![Vec::new(); self.vertex_count()];
        for (id, b) in self.lines() {
            for &v in b {
                by[v].push(id);
            }
        }
        by
    }

    pub fn pair_class(&self, u: usize, v: usize) -> PairClass {
        assert_ne!(u, v, "pair_class needs distinct vertices");
        self.pair_class_with(&self.lines_by_vertex(), u, v)
    }

    fn pair_class_with(&self, by: &[Vec<LineId>], u: usize, v: usize) -> PairClass {
        if self.p3.contains(&u) && self.p3.contains(&v) {
            return PairClass::FixedP3;
        }
        let mut common = by[u].iter().filter(|id| self.line(**id).contains(&v));
        match common.next() {
            Some(&line) => {
                debug_assert!(common.next().is_none(), "pair in two lines");
                PairClass::FixedLine { line }
            }
            None => PairClass::Free,
        }
    }

    /// Every unordered pair with its class, in graph6 pair order.
    pub fn pair_classes(&self) -> Vec<((usize, usize), PairClass)> {
        let by = self.lines_by_vertex();
        let n = self.vertex_count();
        (1..n)
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .map(|(u, v)| ((u, v), self.pair_class_with(&by, u, v)))
            .collect()
    }
}

/// Samples the random jumble graph: fixed pairs follow the `P3` and the line
/// roles, each free pair `{u, v}` (`u < v`) is an edge iff the fair coin with
/// index `v(v-1)/2 + u` of `seed` comes up heads.
pub fn sample_jumble_graph(pat: &LPattern, seed: u64) -> Graph {
    let n = pat.vertex_count();
    let total = (n * n.saturating_sub(1) / 2) as u64;
    let coins = rng::coins(seed, total);
    let mut g = Graph::new(n);
    for ((u, v), class) in pat.pair_classes() {
        let edge = match class {
            PairClass::FixedP3 => pat.p3_edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)),
            PairClass::FixedLine { line } => pat.line_role(line) == LineRole::Clique,
            PairClass::Free => coins[v * (v - 1) / 2 + u],
        };
        if edge {
            g.add_edge(u, v);
        }
    }
    g
}

/// A partition of `V - V(P)` into lines, `s` of them stable and `l² - s`
/// cliques in every sampled jumble graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S1Witness {
    pub stable: Vec<Vec<usize>>,
    pub cliques: Vec<Vec<usize>>,
}

impl S1Witness {
    pub fn blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.stable.iter().chain(&self.cliques)
    }
}

/// Writing `s = q l + r`: for `s = l²` the rows of all squares; otherwise the
/// diagonals of the square with `r` stable diagonals (when `r > 0`), rows of
/// the first `q` other squares and columns of the rest.
pub fn s1_witness(pat: &LPattern, s: usize) -> Result<S1Witness> {
    let l = pat.l;
    if s > l * l {
        return Err(Error::InvalidParameters(format!("s = {s} exceeds l² = {}", l * l)));
    }
    let mut w = S1Witness {
        stable: Vec::new(),
        cliques: Vec::new(),
    };
    let (q, r) = (s / l, s % l);
    let diag_square = (r > 0).then(|| r - 1);
    let mut rows_left = q;
    for (idx, sq) in pat.squares.iter().enumerate() {
        if Some(idx) == diag_square {
            for (d, b) in sq.diagonals.iter().enumerate() {
                let id = LineId {
                    square: idx,
                    kind: LineKind::Diagonal,
                    index: d,
                };
                match pat.line_role(id) {
                    LineRole::Stable => w.stable.push(b.clone()),
                    LineRole::Clique => w.cliques.push(b.clone()),
                }
            }
        } else if rows_left > 0 {
            rows_left -= 1;
            w.stable.extend(sq.rows.iter().cloned());
        } else {
            w.cliques.extend(sq.columns.iter().cloned());
        }
    }
    debug_assert_eq!(w.stable.len(), s);
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_examples() {
        let sq = make_l_square(2);
        assert_eq!(sq.diagonals, vec![vec![0, 3], vec![1, 2]]);
        let one = make_l_square(1);
        assert_eq!(one.rows, one.columns);
        assert_eq!(one.rows, one.diagonals);
        for l in 1..=12 {
            make_l_square(l).validate().unwrap();
        }
    }

    #[test]
    fn broken_square_is_rejected() {
        let mut sq = make_l_square(3);
        sq.diagonals = sq.rows.clone();
        assert!(sq.validate().is_err());
    }

    #[test]
    fn pair_census_l2() {
        let pat = make_l_pattern(2);
        pat.validate().unwrap();
        let classes = pat.pair_classes();
        assert_eq!(classes.len(), 55);
        let fixed_p3 = classes.iter().filter(|(_, c)| *c == PairClass::FixedP3).count();
        let free = classes.iter().filter(|(_, c)| *c == PairClass::Free).count();
        assert_eq!(fixed_p3, 3);
        assert_eq!(free, 40);
        assert_eq!(pat.pair_class(0, 5), PairClass::Free);
        assert!(matches!(
            pat.pair_class(3, 4),
            PairClass::FixedLine {
                line: LineId {
                    kind: LineKind::Row,
                    ..
                }
            }
        ));
    }

    #[test]
    fn l2_last_square_is_two_column_edges() {
        let pat = make_l_pattern(2);
        let g = sample_jumble_graph(&pat, 17);
        let cells = &pat.squares[1].cells;
        let sub = g.induced_unchecked(cells);
        let edges = sub.edges();
        assert_eq!(edges, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn lines_follow_roles() {
        for l in 1..=6 {
            let pat = make_l_pattern(l);
            let g = sample_jumble_graph(&pat, l as u64);
            let (p, _) = g.induced(&pat.p3).unwrap();
            assert!(crate::induced::is_isomorphic(&p, &Graph::path(3)));
            for (id, line) in pat.lines() {
                let c = g.classify_set(line).unwrap();
                match pat.line_role(id) {
                    LineRole::Stable => assert!(c.is_stable),
                    LineRole::Clique => assert!(c.is_clique),
                }
            }
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let pat = make_l_pattern(3);
        assert_eq!(sample_jumble_graph(&pat, 5), sample_jumble_graph(&pat, 5));
        let differing = (0..20)
            .filter(|&s| sample_jumble_graph(&pat, s) != sample_jumble_graph(&pat, s + 100))
            .count();
        assert_eq!(differing, 20);
    }

    #[test]
    fn free_pair_coin_matches_index() {
        let pat = make_l_pattern(2);
        let g = sample_jumble_graph(&pat, 99);
        for ((u, v), class) in pat.pair_classes() {
            if class == PairClass::Free {
                assert_eq!(g.has_edge(u, v), rng::coin(99, (v * (v - 1) / 2 + u) as u64));
            }
        }
    }

    #[test]
    fn s1_witness_census() {
        for l in 1..=4 {
            let pat = make_l_pattern(l);
            let g = sample_jumble_graph(&pat, 7);
            for s in 0..=l * l {
                let w = s1_witness(&pat, s).unwrap();
                assert_eq!(w.stable.len(), s);
                assert_eq!(w.cliques.len(), l * l - s);
                let mut all: Vec<usize> = w.blocks().flatten().copied().collect();
                all.sort_unstable();
                assert_eq!(all, (3..pat.vertex_count()).collect::<Vec<_>>());
                assert!(w.stable.iter().all(|b| g.classify_set(b).unwrap().is_stable));
                assert!(w.cliques.iter().all(|b| g.classify_set(b).unwrap().is_clique));
            }
            assert!(s1_witness(&pat, l * l + 1).is_err());
        }
        let pat = make_l_pattern(2);
        let w = s1_witness(&pat, 3).unwrap();
        assert_eq!(w.stable, vec![vec![3, 6], vec![7, 8], vec![9, 10]]);
        assert_eq!(w.cliques, vec![vec![4, 5]]);
    }

    #[test]
    fn pattern_json_round_trip() {
        let pat = make_l_pattern(2);
        let text = serde_json::to_string(&pat).unwrap();
        let back: LPattern = serde_json::from_str(&text).unwrap();
        assert_eq!(back, pat);
    }
}
