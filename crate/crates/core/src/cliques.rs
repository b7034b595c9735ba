//! Clique and independent-set searches on bitset adjacency.
//!
//! Maximum clique uses branch and bound with a greedy-colouring bound;
//! maximal independent sets come from Bron–Kerbosch with pivoting on the
//! complement.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, PartialBounds, Result};
use crate::rational;
use crate::graph::{bit, bits, Graph, Mask, VertexSet};

/// Greedy colouring of `p` into independent classes of `adj`; returns the
/// vertices in colour order together with the colour (1-based) of each.
fn colour_sort(adj: &[Mask], mut p: Mask, order: &mut Vec<usize>, bound: &mut Vec<u32>) {
    order.clear();
    bound.clear();
    let mut colour = 0;
    while p != 0 {
        colour += 1;
        let mut q = p;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !bit(v) & !adj[v];
            p &= !bit(v);
            order.push(v);
            bound.push(colour);
        }
    }
}

fn expand(
    adj: &[Mask],
    r: Mask,
    mut p: Mask,
    best: &mut Mask,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    let mut order = Vec::new();
    let mut bound = Vec::new();
    colour_sort(adj, p, &mut order, &mut bound);
    for i in (0..order.len()).rev() {
        let size = r.count_ones() + bound[i];
        if size <= best.count_ones() {
            return Ok(());
        }
        let v = order[i];
        let r2 = r | bit(v);
        let p2 = p & adj[v];
        if p2 == 0 {
            if r2.count_ones() > best.count_ones() {
                *best = r2;
            }
        } else {
            expand(adj, r2, p2, best, budget)?;
        }
        p &= !bit(v);
    }
    Ok(())
}

/// A maximum clique among the vertices of `cand`.
pub fn max_clique_in(adj: &[Mask], cand: Mask, budget: &mut Budget) -> Result<Mask> {
    let mut best = 0;
    if cand != 0 {
        best = bit(cand.trailing_zeros() as usize);
        if let Err(Error::ResourceLimit { what, budget, .. }) =
            expand(adj, 0, cand, &mut best, budget)
        {
            return Err(Error::ResourceLimit {
                what,
                budget,
                partial: Box::new(PartialBounds {
                    lower: Some(rational::int(best.count_ones() as i64)),
                    upper: Some(rational::int(cand.count_ones() as i64)),
                }),
            });
        }
    }
    Ok(best)
}

pub(crate) fn complement_masks(adj: &[Mask]) -> Vec<Mask> {
    let n = adj.len();
    let full = if n >= 128 { Mask::MAX } else { bit(n) - 1 };
    adj.iter()
        .enumerate()
        .map(|(v, &m)| !m & full & !bit(v))
        .collect()
}

pub fn max_clique(g: &Graph) -> Result<VertexSet> {
    let adj = g.masks()?;
    let mut budget = Budget::from_env("maximum clique");
    Ok(VertexSet::from_mask(max_clique_in(&adj, g.full_mask(), &mut budget)?))
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(max_clique(g)?.len())
}

pub fn max_independent_set(g: &Graph) -> Result<VertexSet> {
    let adj = complement_masks(&g.masks()?);
    let mut budget = Budget::from_env("maximum independent set");
    Ok(VertexSet::from_mask(max_clique_in(&adj, g.full_mask(), &mut budget)?))
}

pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(max_independent_set(g)?.len())
}

/// Independence number of the subgraph induced on `s`.
pub fn independence_number_of(g: &Graph, s: &VertexSet) -> Result<usize> {
    let adj = complement_masks(&g.masks()?);
    let mut budget = Budget::from_env("maximum independent set");
    Ok(max_clique_in(&adj, s.mask(), &mut budget)?.count_ones() as usize)
}

fn bron_kerbosch(
    adj: &[Mask],
    r: Mask,
    mut p: Mask,
    mut x: Mask,
    out: &mut Vec<Mask>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return Ok(());
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .expect("p | x non-empty");
    for v in bits(p & !adj[pivot]) {
        bron_kerbosch(adj, r | bit(v), p & adj[v], x & adj[v], out, budget)?;
        p &= !bit(v);
        x |= bit(v);
    }
    Ok(())
}

/// All maximal cliques, as masks, in no particular order.
pub fn maximal_cliques_masks(adj: &[Mask], budget: &mut Budget) -> Result<Vec<Mask>> {
    let n = adj.len();
    let full = if n >= 128 { Mask::MAX } else { bit(n) - 1 };
    let mut out = Vec::new();
    if n > 0 {
        bron_kerbosch(adj, 0, full, 0, &mut out, budget)?;
    }
    Ok(out)
}

/// All maximal independent sets as masks, sorted ascending.
pub fn maximal_independent_masks(g: &Graph, budget: &mut Budget) -> Result<Vec<Mask>> {
    let adj = complement_masks(&g.masks()?);
    let mut out = maximal_cliques_masks(&adj, budget)?;
    out.sort_unstable();
    Ok(out)
}

/// Every maximal independent set of `g`.
pub fn max_independent_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let mut budget = Budget::from_env("maximal independent sets");
    Ok(maximal_independent_masks(g, &mut budget)?
        .into_iter()
        .map(VertexSet::from_mask)
        .collect())
}

/// Every maximum clique of `g`.
pub fn maximum_cliques(g: &Graph) -> Result<Vec<VertexSet>> {
    let adj = g.masks()?;
    let mut budget = Budget::from_env("maximum cliques");
    let all = maximal_cliques_masks(&adj, &mut budget)?;
    let best = all.iter().map(|m| m.count_ones()).max().unwrap_or(0);
    let mut out: Vec<VertexSet> = all
        .into_iter()
        .filter(|m| m.count_ones() == best)
        .map(VertexSet::from_mask)
        .collect();
    out.sort();
    Ok(out)
}

/// Every clique of exactly `k` vertices, as masks sorted ascending.
pub fn k_cliques(g: &Graph, k: usize) -> Result<Vec<Mask>> {
    fn go(adj: &[Mask], r: Mask, p: Mask, k: usize, out: &mut Vec<Mask>) {
        if r.count_ones() as usize == k {
            out.push(r);
            return;
        }
        for v in bits(p) {
            // only extend with larger ids to visit each clique once
            let higher = p & !((bit(v) << 1) - 1);
            go(adj, r | bit(v), higher & adj[v], k, out);
        }
    }
    let adj = g.masks()?;
    let mut out = Vec::new();
    if k == 0 {
        return Ok(vec![0]);
    }
    go(&adj, 0, g.full_mask(), k, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Maximum-weight independent set for non-negative integer weights.
/// Among sets of equal weight the lexicographically smallest vertex list
/// is returned.
pub fn max_weight_independent_set(
    g: &Graph,
    weights: &[BigInt],
    budget: &mut Budget,
) -> Result<(BigInt, Mask)> {
    let adj = g.masks()?;
    let n = g.n();
    // Candidate order: heavier vertices first, ties by id.
    let mut order: Vec<usize> = (0..n).filter(|&v| weights[v] > BigInt::zero()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));

    struct Search<'a> {
        adj: &'a [Mask],
        w: &'a [BigInt],
        best: BigInt,
        best_set: Mask,
    }

    fn lex_less(a: Mask, b: Mask) -> bool {
        // Compare sorted vertex lists lexicographically.
        let mut ia = bits(a);
        let mut ib = bits(b);
        loop {
            match (ia.next(), ib.next()) {
                (None, None) => return false,
                (None, Some(_)) => return true,
                (Some(_), None) => return false,
                (Some(x), Some(y)) if x != y => return x < y,
                _ => {}
            }
        }
    }

    fn bound(adj: &[Mask], w: &[BigInt], mut p: Mask) -> BigInt {
        // Partition candidates greedily into cliques; each clique contributes
        // at most its heaviest vertex.
        let mut total = BigInt::zero();
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            let mut clique = bit(v);
            let mut common = adj[v] & p;
            let mut heaviest = w[v].clone();
            while common != 0 {
                let u = common.trailing_zeros() as usize;
                clique |= bit(u);
                common &= adj[u];
                if w[u] > heaviest {
                    heaviest = w[u].clone();
                }
            }
            p &= !clique;
            total += heaviest;
        }
        total
    }

    fn go(
        s: &mut Search<'_>,
        order: &[usize],
        cur: Mask,
        cur_w: BigInt,
        p: Mask,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick()?;
        if cur_w > s.best || (cur_w == s.best && lex_less(cur, s.best_set)) {
            s.best = cur_w.clone();
            s.best_set = cur;
        }
        if p == 0 {
            return Ok(());
        }
        if &cur_w + bound(s.adj, s.w, p) < s.best {
            return Ok(());
        }
        let Some(&v) = order.iter().find(|&&v| p & bit(v) != 0) else {
            return Ok(());
        };
        // include v
        go(
            s,
            order,
            cur | bit(v),
            &cur_w + &s.w[v],
            p & !s.adj[v] & !bit(v),
            budget,
        )?;
        // exclude v
        go(s, order, cur, cur_w, p & !bit(v), budget)
    }

    let p = order.iter().fold(0, |m, &v| m | bit(v));
    let mut s = Search {
        adj: &adj,
        w: weights,
        best: BigInt::zero(),
        best_set: 0,
    };
    go(&mut s, &order, 0, BigInt::zero(), p, budget)?;
    // Grow to a maximal set with zero-weight vertices of smallest id so the
    // column is maximal.
    let mut set = s.best_set;
    for (v, &av) in adj.iter().enumerate().take(n) {
        if set & bit(v) == 0 && av & set == 0 {
            set |= bit(v);
        }
    }
    Ok((s.best, set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_power, make_complete, make_cycle, strong_product};

    fn brute_alpha(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|&m| {
                let s = VertexSet::from_mask(m as Mask);
                g.is_independent(&s)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn named_values() {
        let c82 = cycle_power(8, 2).unwrap();
        assert_eq!(clique_number(&c82).unwrap(), 3);
        assert_eq!(independence_number(&c82).unwrap(), 2);
        let k2 = make_complete(2).unwrap();
        let c5k2 = strong_product(&make_cycle(5).unwrap(), &k2);
        assert_eq!(independence_number(&c5k2).unwrap(), 2);
        let c7k2 = strong_product(&make_cycle(7).unwrap(), &k2);
        assert_eq!(independence_number(&c7k2).unwrap(), 3);
        assert_eq!(clique_number(&c5k2).unwrap(), 4);
    }

    #[test]
    fn c82_has_no_k4_by_brute_force() {
        let c82 = cycle_power(8, 2).unwrap();
        assert!(k_cliques(&c82, 4).unwrap().is_empty());
        assert_eq!(k_cliques(&c82, 3).unwrap().len(), 8);
        assert_eq!(brute_alpha(&c82), 2);
    }

    #[test]
    fn maximal_sets_of_c5() {
        let sets = max_independent_sets(&make_cycle(5).unwrap()).unwrap();
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn mwis_prefers_heavy() {
        let p = crate::graph::make_path(3).unwrap();
        let w = vec![BigInt::from(1), BigInt::from(3), BigInt::from(1)];
        let mut b = Budget::new(1000, "t");
        let (val, set) = max_weight_independent_set(&p, &w, &mut b).unwrap();
        assert_eq!(val, BigInt::from(3));
        assert_eq!(set, bit(1));
        let w = vec![BigInt::from(2), BigInt::from(3), BigInt::from(1)];
        let (val, set) = max_weight_independent_set(&p, &w, &mut b).unwrap();
        assert_eq!(val, BigInt::from(3));
        // tie between {0,2} and {1}: lexicographically smallest is {0, 2}
        assert_eq!(set, bit(0) | bit(2));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = cycle_power(40, 3).unwrap();
        let adj = complement_masks(&g.masks().unwrap());
        let mut b = Budget::new(3, "t");
        assert!(max_clique_in(&adj, g.full_mask(), &mut b)
            .unwrap_err()
            .is_resource_limit());
    }
}
