#![allow(dead_code)]

use proptest::prelude::*;

use fracbrooks::enumerate::connected_graphs_upto;
use fracbrooks::Graph;

/// Arbitrary graph on `lo..=hi` vertices, each edge present with probability 1/2.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// A uniformly random permutation of `0..n`.
pub fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Every connected graph on at most `n` vertices.
pub fn connected_upto(n: usize) -> Vec<Graph> {
    connected_graphs_upto(n).unwrap().into_iter().flatten().collect()
}
