use proptest::prelude::*;

use crate::graph::Graph;

/// Graph whose upper-triangle pairs (graph6 order) are taken from `bits`.
pub fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits >> k & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

/// All labeled graphs on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..(1 << pairs)).map(move |b| graph_from_bits(n, b))
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Every assignment of `n` items to `k` labels, as label vectors.
pub fn assignments(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (k as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut a = vec![0; n];
        for slot in a.iter_mut() {
            *slot = (code % k as u64) as usize;
            code /= k as u64;
        }
        a
    })
}
