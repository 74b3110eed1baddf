//! Constellations `(J, φ, α, β)` and the search for templates realizing them.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::budget::{Budget, Exhausted};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// An `(l, s)`-constellation. Parts are numbered `0..l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConstellationJson", into = "ConstellationJson")]
pub struct Constellation {
    pub j: Graph,
    pub phi: Vec<usize>,
    pub alpha: Vec<bool>,
    pub beta: Vec<bool>,
    pub l: usize,
    pub s: usize,
}

#[derive(Serialize, Deserialize)]
struct ConstellationJson {
    #[serde(rename = "J")]
    j: String,
    phi: Vec<usize>,
    alpha: Vec<u8>,
    beta: Vec<u8>,
    l: usize,
    s: usize,
}

impl From<Constellation> for ConstellationJson {
    fn from(c: Constellation) -> Self {
        ConstellationJson {
            j: crate::graph6::encode_graph6(&c.j),
            phi: c.phi,
            alpha: c.alpha.into_iter().map(u8::from).collect(),
            beta: c.beta.into_iter().map(u8::from).collect(),
            l: c.l,
            s: c.s,
        }
    }
}

impl TryFrom<ConstellationJson> for Constellation {
    type Error = Error;
    fn try_from(c: ConstellationJson) -> Result<Self> {
        let bits = |v: Vec<u8>, what: &str| -> Result<Vec<bool>> {
            v.into_iter()
                .map(|b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    _ => Err(Error::Parse(format!("{what} entries must be 0 or 1"))),
                })
                .collect()
        };
        Constellation::new(
            crate::graph6::decode_graph6(&c.j)?,
            c.phi,
            bits(c.alpha, "alpha")?,
            bits(c.beta, "beta")?,
            c.l,
            c.s,
        )
    }
}

impl Constellation {
    pub fn new(j: Graph, phi: Vec<usize>, alpha: Vec<bool>, beta: Vec<bool>, l: usize, s: usize) -> Result<Self> {
        if phi.len() != j.n() || alpha.len() != j.n() || beta.len() != l {
            return Err(Error::InvalidParameters(
                "constellation map lengths do not match".into(),
            ));
        }
        let mut fiber = vec![0usize; l];
        for &p in &phi {
            if p >= l {
                return Err(Error::InvalidParameters(format!("part {p} out of range 0..{l}")));
            }
            fiber[p] += 1;
        }
        if let Some(i) = (0..l).find(|&i| fiber[i] > s) {
            return Err(Error::InvalidParameters(format!(
                "fiber {i} has more than {s} vertices"
            )));
        }
        Ok(Constellation {
            j,
            phi,
            alpha,
            beta,
            l,
            s,
        })
    }

    /// The `(l, 0)`-constellation with empty `J` and the given part types.
    pub fn empty(beta: Vec<bool>) -> Self {
        let l = beta.len();
        Constellation {
            j: Graph::new(0),
            phi: vec![],
            alpha: vec![],
            beta,
            l,
            s: 0,
        }
    }

    /// `K_{2l}` minus a perfect matching, each matched pair forming one fiber,
    /// with `α ≡ 1` and `β ≡ 1`.
    pub fn matching(l: usize) -> Self {
        let mut j = Graph::complete(2 * l);
        for i in 0..l {
            j.remove_edge(2 * i, 2 * i + 1);
        }
        Constellation {
            j,
            phi: (0..2 * l).map(|v| v / 2).collect(),
            alpha: vec![true; 2 * l],
            beta: vec![true; l],
            l,
            s: 2,
        }
    }

    /// Irreducibility: every `v` with `β(φ(v)) = α(v)` has a fiber-mate `u`
    /// with `uv ∈ E(J)` and `α(u) = 0`, or `uv ∉ E(J)` and `α(v) = 1`. With
    /// `strict_variant` the last condition reads `α(u) = 1`.
    pub fn is_irreducible(&self, strict_variant: bool) -> bool {
        let n = self.j.n();
        (0..n).all(|v| {
            self.beta[self.phi[v]] != self.alpha[v]
                || (0..n).any(|u| {
                    u != v
                        && self.phi[u] == self.phi[v]
                        && if self.j.has_edge(u, v) {
                            !self.alpha[u]
                        } else if strict_variant {
                            self.alpha[u]
                        } else {
                            self.alpha[v]
                        }
                })
        })
    }
}

/// A placement `ψ` of (some of) `V(J)` into `G` together with an `l`-partition
/// `X_0..X_{l-1}` of `V(G)`. `psi[v] = None` marks a vertex of `J` left out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub psi: Vec<Option<usize>>,
    pub parts: Vec<Vec<usize>>,
}

impl Template {
    /// Checks every template condition independently of the search.
    pub fn is_valid(&self, g: &Graph, c: &Constellation, allow_missing: bool) -> bool {
        let n = g.n();
        if self.psi.len() != c.j.n() || self.parts.len() != c.l {
            return false;
        }
        let mut part_of = vec![usize::MAX; n];
        for (i, p) in self.parts.iter().enumerate() {
            for &x in p {
                if x >= n || part_of[x] != usize::MAX {
                    return false;
                }
                part_of[x] = i;
            }
        }
        if part_of.contains(&usize::MAX) {
            return false;
        }
        if !allow_missing && self.psi.iter().any(Option::is_none) {
            return false;
        }
        let mut z = VertexSet::new(n);
        for (v, &img) in self.psi.iter().enumerate() {
            if let Some(x) = img {
                if x >= n || z.contains(x) || part_of[x] != c.phi[v] {
                    return false;
                }
                z.insert(x);
            }
        }
        for (u, &a) in self.psi.iter().enumerate() {
            for (v, &b) in self.psi.iter().enumerate().skip(u + 1) {
                if let (Some(a), Some(b)) = (a, b) {
                    if g.has_edge(a, b) != c.j.has_edge(u, v) {
                        return false;
                    }
                }
            }
        }
        for (i, p) in self.parts.iter().enumerate() {
            let rest: Vec<usize> = p.iter().copied().filter(|&x| !z.contains(x)).collect();
            for (a, &x) in rest.iter().enumerate() {
                if rest[a + 1..].iter().any(|&y| g.has_edge(x, y) != c.beta[i]) {
                    return false;
                }
            }
            for (v, &img) in self.psi.iter().enumerate() {
                if let Some(x) = img {
                    if c.phi[v] == i && rest.iter().any(|&y| g.has_edge(x, y) != c.alpha[v]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateOutcome {
    Found(Template),
    NoTemplate,
    Unknown,
}

struct TemplateSearch<'a> {
    g: &'a Graph,
    c: &'a Constellation,
    allow_missing: bool,
    ordinary: Vec<VertexSet>,
    psi: Vec<Option<usize>>,
    placed: usize,
    budget: Budget,
}

impl TemplateSearch<'_> {
    fn ordinary_ok(&self, x: usize, i: usize) -> bool {
        let row = self.g.row(x);
        let ord = &self.ordinary[i];
        let homogeneous = if self.c.beta[i] {
            ord.intersection_len(row) == ord.len()
        } else {
            ord.is_disjoint(row)
        };
        homogeneous
            && self.psi.iter().enumerate().all(|(v, img)| match img {
                Some(y) if self.c.phi[v] == i => self.g.has_edge(x, *y) == self.c.alpha[v],
                _ => true,
            })
    }

    fn image_ok(&self, x: usize, v: usize) -> bool {
        let row = self.g.row(x);
        let ord = &self.ordinary[self.c.phi[v]];
        let contact = if self.c.alpha[v] {
            ord.intersection_len(row) == ord.len()
        } else {
            ord.is_disjoint(row)
        };
        contact
            && self.psi.iter().enumerate().all(|(u, img)| match img {
                Some(y) => self.g.has_edge(x, *y) == self.c.j.has_edge(u, v),
                None => true,
            })
    }

    fn run(&mut self, x: usize) -> std::result::Result<bool, Exhausted> {
        self.budget.tick()?;
        let n = self.g.n();
        let missing = self.c.j.n() - self.placed;
        if !self.allow_missing && missing > n - x {
            return Ok(false);
        }
        if x == n {
            return Ok(true);
        }
        for v in 0..self.c.j.n() {
            if self.psi[v].is_none() && self.image_ok(x, v) {
                self.psi[v] = Some(x);
                self.placed += 1;
                if self.run(x + 1)? {
                    return Ok(true);
                }
                self.psi[v] = None;
                self.placed -= 1;
            }
        }
        for i in 0..self.c.l {
            if self.ordinary_ok(x, i) {
                self.ordinary[i].insert(x);
                if self.run(x + 1)? {
                    return Ok(true);
                }
                self.ordinary[i].remove(x);
            }
        }
        Ok(false)
    }
}

/// Searches for a template of `c` in `g`. With `allow_missing`, vertices of
/// `J` may stay unplaced, which decides membership of `g` in the family of
/// induced subgraphs of graphs admitting a template.
pub fn find_template(g: &Graph, c: &Constellation, allow_missing: bool, budget: u64) -> (TemplateOutcome, u64) {
    let mut search = TemplateSearch {
        g,
        c,
        allow_missing,
        ordinary: vec![VertexSet::new(g.n()); c.l],
        psi: vec![None; c.j.n()],
        placed: 0,
        budget: Budget::new(budget),
    };
    let outcome = match search.run(0) {
        Err(_) => TemplateOutcome::Unknown,
        Ok(false) => TemplateOutcome::NoTemplate,
        Ok(true) => {
            let mut parts: Vec<Vec<usize>> = search.ordinary.iter().map(VertexSet::to_vec).collect();
            for (v, img) in search.psi.iter().enumerate() {
                if let Some(x) = img {
                    parts[c.phi[v]].push(*x);
                }
            }
            for p in &mut parts {
                p.sort_unstable();
            }
            TemplateOutcome::Found(Template {
                psi: search.psi.clone(),
                parts,
            })
        }
    };
    (outcome, search.budget.spent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::solver::st_member;
    use crate::testutil::{all_graphs, arb_graph, assignments};
    use proptest::prelude::*;

    /// Tries every labeling of host vertices as "ordinary in part i" or "image
    /// of J-vertex v".
    fn brute_force(g: &Graph, c: &Constellation, allow_missing: bool) -> bool {
        let labels = c.l + c.j.n();
        assignments(g.n(), labels).any(|a| {
            let mut psi = vec![None; c.j.n()];
            let mut parts = vec![Vec::new(); c.l];
            for (x, &lab) in a.iter().enumerate() {
                if lab < c.l {
                    parts[lab].push(x);
                } else {
                    let v = lab - c.l;
                    if psi[v].is_some() {
                        return false;
                    }
                    psi[v] = Some(x);
                    parts[c.phi[v]].push(x);
                }
            }
            Template { psi, parts }.is_valid(g, c, allow_missing)
        })
    }

    fn arb_constellation() -> impl Strategy<Value = Constellation> {
        (1usize..=3, arb_graph(3)).prop_flat_map(|(l, j)| {
            let n = j.n();
            (
                Just(l),
                Just(j),
                proptest::collection::vec(0..l, n),
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), l),
            )
                .prop_map(|(l, j, phi, alpha, beta)| Constellation {
                    j,
                    phi,
                    alpha,
                    beta,
                    l,
                    s: 3,
                })
        })
    }

    #[test]
    fn empty_constellation_collapses_to_clique_partitions() {
        for l in 2..=3 {
            let c = Constellation::empty(vec![true; l]);
            for n in 0..=5 {
                for g in all_graphs(n) {
                    let (out, _) = find_template(&g, &c, false, u64::MAX);
                    assert_eq!(matches!(out, TemplateOutcome::Found(_)), st_member(&g, 0, l));
                }
            }
        }
    }

    #[test]
    fn matching_constellation_in_its_own_graph() {
        let c = Constellation::matching(3);
        let g = c.j.clone();
        match find_template(&g, &c, false, u64::MAX).0 {
            TemplateOutcome::Found(t) => {
                assert!(t.is_valid(&g, &c, false));
                for p in &t.parts {
                    assert_eq!(p.len(), 2);
                    assert!(!g.has_edge(p[0], p[1]));
                }
            }
            o => panic!("{o:?}"),
        }
        // two extra isolated vertices cannot join any part
        let g = c.j.disjoint_union(&Graph::new(2));
        assert_eq!(find_template(&g, &c, false, u64::MAX).0, TemplateOutcome::NoTemplate);
    }

    #[test]
    fn irreducibility_examples() {
        for l in 1..=4 {
            assert!(Constellation::matching(l).is_irreducible(false));
            assert!(Constellation::matching(l).is_irreducible(true));
        }
        assert!(Constellation::empty(vec![true, false]).is_irreducible(false));
        let single = Constellation::new(Graph::new(1), vec![0], vec![true], vec![true], 1, 1).unwrap();
        assert!(!single.is_irreducible(false));
        // the two readings differ on a non-adjacent fiber pair with α = (1, 0)
        let c = Constellation::new(Graph::new(2), vec![0, 0], vec![true, false], vec![true], 1, 2).unwrap();
        assert!(c.is_irreducible(false));
        assert!(!c.is_irreducible(true));
        let c = Constellation::new(Graph::new(2), vec![0, 0], vec![true, false], vec![false], 1, 2).unwrap();
        assert!(!c.is_irreducible(false));
        assert!(c.is_irreducible(true));
    }

    #[test]
    fn json_round_trip() {
        let c = Constellation::matching(2);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["J"], "C]");
        assert_eq!(v["phi"], serde_json::json!([0, 0, 1, 1]));
        let back: Constellation = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
        let bad = serde_json::json!({"J": "A_", "phi": [0, 0], "alpha": [1, 1], "beta": [1], "l": 1, "s": 1});
        assert!(serde_json::from_value::<Constellation>(bad).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn template_search_matches_brute_force(g in arb_graph(5), c in arb_constellation(), allow in any::<bool>()) {
            let (out, _) = find_template(&g, &c, allow, u64::MAX);
            if let TemplateOutcome::Found(t) = &out {
                prop_assert!(t.is_valid(&g, &c, allow));
            }
            prop_assert_eq!(matches!(out, TemplateOutcome::Found(_)), brute_force(&g, &c, allow));
        }
    }
}
