//! Seeded random graphs for fuzzing and the acceptance sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a random connected graph.
#[derive(Debug, Clone, Copy)]
pub struct RandomSpec {
    pub n: usize,
    pub max_degree: usize,
    pub k4_free: bool,
    /// Chance that each candidate extra edge is added, in percent.
    pub density: u32,
}

impl RandomSpec {
    pub fn delta4(n: usize) -> Self {
        RandomSpec { n, max_degree: 4, k4_free: true, density: 100 }
    }
}

fn creates_k4(adj: &[Vec<usize>], u: usize, v: usize) -> bool {
    let common: Vec<usize> = adj[u].iter().copied().filter(|w| adj[v].contains(w)).collect();
    common.iter().enumerate().any(|(i, &a)| common[i + 1..].iter().any(|b| adj[a].contains(b)))
}

/// A random connected graph: a random spanning tree with the degree cap,
/// then extra edges tried in random order.
pub fn random_connected<R: Rng>(rng: &mut R, spec: RandomSpec) -> Result<Graph> {
    let RandomSpec { n, max_degree, k4_free, density } = spec;
    if n == 0 || (n > 2 && max_degree < 2) || (n == 2 && max_degree < 1) {
        return Err(Error::SizeOutOfRange(format!("no connected graph on {n} vertices with Δ ≤ {max_degree}")));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let v = order[i];
        let open: Vec<usize> = order[..i].iter().copied().filter(|&u| adj[u].len() < max_degree).collect();
        // a path-like tail always keeps a vertex open when max_degree >= 2
        let u = *open.choose(rng).expect("open vertex");
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if adj[u].len() >= max_degree || adj[v].len() >= max_degree || adj[u].contains(&v) {
            continue;
        }
        if rng.gen_range(0..100) >= density {
            continue;
        }
        if k4_free && creates_k4(&adj, u, v) {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    Graph::from_adjacency(adj)
}

/// Connected `G1`, `G2` glued along two vertices; returns the graph and the
/// shared pair. With `edge`, the pair is joined.
pub fn random_two_cut<R: Rng>(rng: &mut R, n1: usize, n2: usize, edge: bool) -> Result<(Graph, usize, usize)> {
    if n1 < 3 || n2 < 3 {
        return Err(Error::SizeOutOfRange("each side needs at least three vertices".into()));
    }
    let spec = |n| RandomSpec { n, max_degree: n, k4_free: false, density: 35 };
    let g1 = random_connected(rng, spec(n1))?;
    let g2 = random_connected(rng, spec(n2))?;
    // identify the last two vertices of g1 with the first two of g2
    let n = n1 + n2 - 2;
    let (u, v) = (n1 - 2, n1 - 1);
    let map2 = |x: usize| if x < 2 { n1 - 2 + x } else { n1 + x - 2 };
    let mut edges: Vec<(usize, usize)> = g1.edges().collect();
    edges.extend(g2.edges().map(|(a, b)| (map2(a), map2(b))));
    edges.retain(|&(a, b)| (a, b) != (u, v));
    if edge {
        edges.push((u, v));
    }
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::from_edges(n, &edges)?;
    if !g.is_connected() || g.is_connected_without(&[u, v]) {
        return random_two_cut(rng, n1, n2, edge);
    }
    Ok((g, u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::clique_number;

    #[test]
    fn delta4_graphs() {
        let mut r = rng(7);
        for n in 1..25 {
            let g = random_connected(&mut r, RandomSpec::delta4(n)).unwrap();
            assert!(g.is_connected());
            assert!(g.delta() <= 4);
            assert!(clique_number(&g).unwrap() <= 3);
        }
    }

    #[test]
    fn deterministic() {
        let a = random_connected(&mut rng(3), RandomSpec::delta4(20)).unwrap();
        let b = random_connected(&mut rng(3), RandomSpec::delta4(20)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn glued() {
        let mut r = rng(11);
        for edge in [true, false] {
            let (g, u, v) = random_two_cut(&mut r, 6, 7, edge).unwrap();
            assert_eq!(g.n(), 11);
            assert_eq!(g.has_edge(u, v), edge);
            assert!(!g.is_connected_without(&[u, v]));
        }
    }
}
