//! Exhaustive generation of connected graphs up to isomorphism.
//!
//! Every connected graph on `n` vertices has a vertex whose removal leaves
//! a connected graph, so all of them arise from connected graphs on `n - 1`
//! vertices by adding a vertex with a non-empty neighbourhood. Duplicates
//! are removed with a colour-refinement invariant followed by an explicit
//! isomorphism test inside each invariant bucket.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`connected_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 12;

type Adj = Vec<u32>;

#[inline]
fn mix(mut h: u64, x: u64) -> u64 {
    h ^= x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^ (h >> 33)
}

fn distinct(c: &[u64]) -> usize {
    let mut s = c.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// Stable refinement colours plus a whole-graph invariant.
fn invariant(adj: &Adj) -> (u64, Vec<u64>) {
    let n = adj.len();
    let mut colours: Vec<u64> = (0..n)
        .map(|v| {
            let deg = adj[v].count_ones() as u64;
            let mut tri = 0u64;
            let mut m = adj[v];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                tri += (adj[u] & adj[v]).count_ones() as u64;
            }
            mix(deg, tri)
        })
        .collect();
    let mut classes = distinct(&colours);
    let mut buf = Vec::with_capacity(n);
    loop {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                buf.clear();
                let mut m = adj[v];
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    buf.push(colours[u]);
                }
                buf.sort_unstable();
                buf.iter().fold(mix(colours[v], 1), |h, &c| mix(h, c))
            })
            .collect();
        let nc = distinct(&next);
        colours = next;
        if nc == classes {
            break;
        }
        classes = nc;
    }
    let mut sorted = colours.clone();
    sorted.sort_unstable();
    let h = sorted.iter().fold(n as u64, |h, &c| mix(h, c));
    (h, colours)
}

fn isomorphic(a: &Adj, ca: &[u64], b: &Adj, cb: &[u64]) -> bool {
    let n = a.len();
    // BFS order over `a` keeps the partial map connected, which prunes well.
    let mut order = Vec::with_capacity(n);
    let mut seen = 0u32;
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        seen |= 1 << s;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            let v = order[i];
            let mut m = a[v] & !seen;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                seen |= 1 << u;
                order.push(u);
            }
            i += 1;
        }
    }
    let mut map = vec![0usize; n];
    #[allow(clippy::too_many_arguments)]
    fn go(i: usize, order: &[usize], a: &Adj, ca: &[u64], b: &Adj, cb: &[u64], map: &mut [usize], used: u32) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let mut want = 0u32;
        let mut mapped = 0u32;
        for &u in &order[..i] {
            mapped |= 1 << map[u];
            if a[v] >> u & 1 == 1 {
                want |= 1 << map[u];
            }
        }
        for w in 0..b.len() {
            if used >> w & 1 == 1 || cb[w] != ca[v] || b[w] & mapped != want {
                continue;
            }
            map[v] = w;
            if go(i + 1, order, a, ca, b, cb, map, used | 1 << w) {
                return true;
            }
        }
        false
    }
    go(0, &order, a, ca, b, cb, &mut map, 0)
}

/// Isomorphism-class store keyed by invariant.
#[derive(Default)]
struct Store {
    reps: Vec<(Adj, Vec<u64>)>,
    buckets: HashMap<u64, Vec<usize>>,
}

impl Store {
    fn insert(&mut self, adj: Adj) {
        let (h, colours) = invariant(&adj);
        let bucket = self.buckets.entry(h).or_default();
        for &i in bucket.iter() {
            let (ref r, ref rc) = self.reps[i];
            if isomorphic(&adj, &colours, r, rc) {
                return;
            }
        }
        bucket.push(self.reps.len());
        self.reps.push((adj, colours));
    }
}

fn extend(parents: &[Adj]) -> Vec<Adj> {
    let mut store = Store::default();
    for p in parents {
        let n = p.len();
        for nb in 1u32..(1 << n) {
            let mut adj = p.clone();
            for (v, a) in adj.iter_mut().enumerate() {
                if nb >> v & 1 == 1 {
                    *a |= 1 << n;
                }
            }
            adj.push(nb);
            store.insert(adj);
        }
    }
    store.reps.into_iter().map(|(a, _)| a).collect()
}

fn to_graph(adj: &Adj) -> Graph {
    let masks: Vec<crate::graph::Mask> = adj.iter().map(|&m| m as crate::graph::Mask).collect();
    Graph::from_masks(&masks)
}

/// All connected graphs on exactly `n` vertices, one per isomorphism class,
/// in a deterministic order.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(connected_graphs_upto(n)?.pop().unwrap_or_default())
}

/// Connected graphs for every order `1..=n`; entry `i` holds order `i + 1`.
pub fn connected_graphs_upto(n: usize) -> Result<Vec<Vec<Graph>>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::SizeOutOfRange(format!(
            "enumeration order {n} outside 1..={MAX_ENUMERATION_ORDER}"
        )));
    }
    let mut level: Vec<Adj> = vec![vec![0]];
    let mut out = vec![level.iter().map(to_graph).collect::<Vec<_>>()];
    for _ in 1..n {
        level = extend(&level);
        out.push(level.iter().map(to_graph).collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // OEIS A001349
        let counts: Vec<usize> = connected_graphs_upto(7)
            .unwrap()
            .iter()
            .map(|l| l.len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn all_connected_and_distinct() {
        let gs = connected_graphs(5).unwrap();
        assert!(gs.iter().all(|g| g.is_connected() && g.n() == 5));
        for (i, g) in gs.iter().enumerate() {
            for h in &gs[i + 1..] {
                assert!(!crate::iso::is_isomorphic(g, h).unwrap());
            }
        }
    }

    #[test]
    fn rejects_bad_order() {
        assert!(connected_graphs(0).is_err());
        assert!(connected_graphs(MAX_ENUMERATION_ORDER + 1).is_err());
    }
}
