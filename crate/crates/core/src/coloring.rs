//! Proper colourings, `a:b` fold colourings and their verification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::cliques::clique_number;
use crate::error::{Error, Result};
use crate::fractional::{chi_f_exact, FractionalSolution};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// An `a:b` colouring: every vertex gets `b` of the colours `0..a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldColoring {
    pub a: usize,
    pub b: usize,
    pub assignment: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    WrongVertexCount { expected: usize, found: usize },
    BadColorSet { vertex: usize, reason: String },
    SharedColor { u: usize, v: usize, color: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::WrongVertexCount { expected, found } => {
                write!(f, "assignment covers {found} vertices, graph has {expected}")
            }
            Violation::BadColorSet { vertex, reason } => write!(f, "vertex {vertex}: {reason}"),
            Violation::SharedColor { u, v, color } => write!(f, "edge ({u}, {v}) shares colour {color}"),
        }
    }
}

impl FoldColoring {
    /// Validated constructor: each set is sorted, duplicate-free, of size
    /// `b >= 1`, and inside the palette.
    pub fn new(a: usize, b: usize, mut assignment: Vec<Vec<usize>>) -> Result<Self> {
        if b == 0 || a < b {
            return Err(Error::SizeOutOfRange(format!("need a >= b >= 1, got {a}:{b}")));
        }
        for (v, set) in assignment.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.len() != b || set.iter().any(|&c| c >= a) {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} needs {b} distinct colours below {a}, got {set:?}"
                )));
            }
        }
        Ok(FoldColoring { a, b, assignment })
    }

    /// A proper `k`-colouring viewed as a `k:1` colouring.
    pub fn from_proper(colours: &[usize], k: usize) -> Result<Self> {
        FoldColoring::new(k, 1, colours.iter().map(|&c| vec![c]).collect())
    }

    pub fn ratio(&self) -> crate::rational::Rational {
        crate::rational::Rational::new(self.a.into(), self.b.into())
    }

    /// Reads a colouring off a fractional colouring of a graph on `n`
    /// vertices: with `D` the common denominator of the weights, each set
    /// owns `D·w` colours and every vertex keeps the first `D` colours of the
    /// sets covering it.
    pub fn from_fractional(n: usize, sol: &FractionalSolution) -> Result<Self> {
        let too_big = || Error::SizeOutOfRange("fractional certificate has too large a denominator".into());
        let d = sol.weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let b: usize = d.clone().try_into().map_err(|_| too_big())?;
        let mut next = 0usize;
        let mut assignment: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (set, w) in sol.sets.iter().zip(&sol.weights) {
            let share: usize = (w * Rational::from_integer(d.clone()))
                .to_integer()
                .try_into()
                .map_err(|_| too_big())?;
            for v in set.iter() {
                let have = assignment[v].len();
                assignment[v].extend((next..next + share).take(b.saturating_sub(have)));
            }
            next += share;
        }
        FoldColoring::new(next.max(b), b, assignment)
    }

    /// The same colouring repeated on `m` disjoint copies of the palette.
    pub fn scaled(&self, m: usize) -> Self {
        let assignment = self
            .assignment
            .iter()
            .map(|set| (0..m).flat_map(|i| set.iter().map(move |&c| i * self.a + c)).collect())
            .collect();
        FoldColoring {
            a: self.a * m,
            b: self.b * m,
            assignment,
        }
    }

    /// Rewrites an `a:b` colouring with `a/b < 4` as a `4k:(k+1)` colouring
    /// by scaling and leaving colours unused.
    pub fn to_four_k_form(&self) -> Option<(Self, usize)> {
        let (a, b) = (self.a, self.b);
        if a >= 4 * b {
            return None;
        }
        let m = 4usize.div_ceil(4 * b - a);
        let scaled = self.scaled(m);
        let k = m * b - 1;
        Some((FoldColoring { a: 4 * k, ..scaled }, k))
    }
}

/// Checks a fold colouring against `g`, returning the first violation.
pub fn verify_fold_coloring(g: &Graph, c: &FoldColoring) -> std::result::Result<(), Violation> {
    if c.assignment.len() != g.n() {
        return Err(Violation::WrongVertexCount {
            expected: g.n(),
            found: c.assignment.len(),
        });
    }
    if c.b == 0 {
        return Err(Violation::BadColorSet {
            vertex: 0,
            reason: "fold b must be at least 1".into(),
        });
    }
    for (v, set) in c.assignment.iter().enumerate() {
        if set.len() != c.b {
            return Err(Violation::BadColorSet {
                vertex: v,
                reason: format!("has {} colours, expected {}", set.len(), c.b),
            });
        }
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Violation::BadColorSet {
                vertex: v,
                reason: "colours not strictly increasing".into(),
            });
        }
        if let Some(&bad) = set.iter().find(|&&x| x >= c.a) {
            return Err(Violation::BadColorSet {
                vertex: v,
                reason: format!("colour {bad} outside palette of {}", c.a),
            });
        }
    }
    for (u, v) in g.edges() {
        let (x, y) = (&c.assignment[u], &c.assignment[v]);
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Err(Violation::SharedColor { u, v, color: x[i] }),
            }
        }
    }
    Ok(())
}

/// Vertices in reverse smallest-last order (densest core first).
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex remains");
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order.reverse();
    order
}

/// Outcome of an exhaustive search: distinguishes "proven none" from
/// running out of budget (which surfaces as an error).
pub type Search<T> = Result<Option<T>>;

struct AbSearch<'a> {
    g: &'a Graph,
    a: usize,
    b: usize,
    order: Vec<usize>,
    /// colours taken by coloured neighbours, per vertex (bitmask over palette)
    blocked: Vec<u64>,
    sets: Vec<u64>,
}

impl AbSearch<'_> {
    fn go(&mut self, i: usize, fresh: usize, budget: &mut Budget) -> Result<bool> {
        budget.tick()?;
        if i == self.order.len() {
            return Ok(true);
        }
        let v = self.order[i];
        let palette = if self.a == 64 { u64::MAX } else { (1u64 << self.a) - 1 };
        let avail = palette & !self.blocked[v];
        if (avail.count_ones() as usize) < self.b {
            return Ok(false);
        }
        // Colours >= fresh have never been used and are interchangeable, so
        // a set may only take a prefix of them.
        let used = if fresh >= 64 { u64::MAX } else { (1u64 << fresh) - 1 };
        let old = avail & used;
        let mut chosen = Vec::with_capacity(self.b);
        self.pick(i, v, old, 0, fresh, &mut chosen, budget)
    }

    #[allow(clippy::too_many_arguments)]
    fn pick(
        &mut self,
        i: usize,
        v: usize,
        old: u64,
        from: usize,
        fresh: usize,
        chosen: &mut Vec<usize>,
        budget: &mut Budget,
    ) -> Result<bool> {
        let need = self.b - chosen.len();
        // take the remaining colours from fresh ones
        if need <= self.a.saturating_sub(fresh) {
            let mut set: u64 = chosen.iter().fold(0, |m, &c| m | 1 << c);
            for k in 0..need {
                set |= 1 << (fresh + k);
            }
            if self.place(i, v, set, fresh + need, budget)? {
                return Ok(true);
            }
        }
        if need == 0 {
            return Ok(false);
        }
        let mut rest = old & !((1u64 << from) - 1);
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            chosen.push(c);
            if self.pick(i, v, old, c + 1, fresh, chosen, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    fn place(&mut self, i: usize, v: usize, set: u64, fresh: usize, budget: &mut Budget) -> Result<bool> {
        let nb: Vec<usize> = self.g.neighbors(v).to_vec();
        let saved: Vec<u64> = nb.iter().map(|&u| self.blocked[u]).collect();
        let mut dead = false;
        for &u in &nb {
            self.blocked[u] |= set;
            if self.sets[u] == 0 && (self.a - (self.blocked[u].count_ones() as usize)) < self.b {
                dead = true;
            }
        }
        if !dead {
            self.sets[v] = set;
            if self.go(i + 1, fresh, budget)? {
                return Ok(true);
            }
            self.sets[v] = 0;
        }
        for (&u, s) in nb.iter().zip(saved) {
            self.blocked[u] = s;
        }
        Ok(false)
    }
}

/// Searches for an `a:b` colouring. `Ok(None)` is a proof that none exists.
pub fn find_ab_coloring(g: &Graph, a: usize, b: usize) -> Search<FoldColoring> {
    let mut budget = Budget::from_env("a:b colouring search");
    find_ab_coloring_budgeted(g, a, b, &mut budget)
}

pub fn find_ab_coloring_budgeted(g: &Graph, a: usize, b: usize, budget: &mut Budget) -> Search<FoldColoring> {
    if b == 0 || a < b {
        return Err(Error::SizeOutOfRange(format!("need a >= b >= 1, got {a}:{b}")));
    }
    if a > 64 {
        return Err(Error::TooLarge { n: a, max: 64 });
    }
    let mut s = AbSearch {
        g,
        a,
        b,
        order: degeneracy_order(g),
        blocked: vec![0; g.n()],
        sets: vec![0; g.n()],
    };
    if !s.go(0, 0, budget)? {
        return Ok(None);
    }
    let assignment = s
        .sets
        .iter()
        .map(|&m| (0..a).filter(|&c| m >> c & 1 == 1).collect())
        .collect();
    Ok(Some(FoldColoring::new(a, b, assignment)?))
}

/// DSATUR backtracking for a proper `k`-colouring.
pub fn k_coloring(g: &Graph, k: usize, budget: &mut Budget) -> Search<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Ok(Some(vec![]));
    }
    if k == 0 {
        return Ok(None);
    }
    if k > 64 {
        return Err(Error::TooLarge { n: k, max: 64 });
    }
    let mut colour = vec![usize::MAX; n];
    let mut sat = vec![0u64; n];

    fn go(g: &Graph, k: usize, colour: &mut [usize], sat: &mut [u64], done: usize, max_used: usize, budget: &mut Budget) -> Result<bool> {
        budget.tick()?;
        if done == g.n() {
            return Ok(true);
        }
        let v = (0..g.n())
            .filter(|&v| colour[v] == usize::MAX)
            .max_by_key(|&v| {
                let free_deg = g.neighbors(v).iter().filter(|&&u| colour[u] == usize::MAX).count();
                (sat[v].count_ones(), free_deg, std::cmp::Reverse(v))
            })
            .expect("uncoloured vertex");
        let limit = k.min(max_used + 1);
        for c in 0..limit {
            if sat[v] >> c & 1 == 1 {
                continue;
            }
            colour[v] = c;
            let saved: Vec<u64> = g.neighbors(v).iter().map(|&u| sat[u]).collect();
            for &u in g.neighbors(v) {
                sat[u] |= 1 << c;
            }
            if go(g, k, colour, sat, done + 1, max_used.max(c + 1), budget)? {
                return Ok(true);
            }
            for (&u, s) in g.neighbors(v).iter().zip(saved) {
                sat[u] = s;
            }
            colour[v] = usize::MAX;
        }
        Ok(false)
    }

    Ok(go(g, k, &mut colour, &mut sat, 0, 0, budget)?.then_some(colour))
}

/// Proper colouring with `χ` colours.
pub fn optimal_coloring(g: &Graph) -> Result<(usize, Vec<usize>)> {
    let mut budget = Budget::from_env("chromatic number");
    let mut k = clique_number(g)?;
    loop {
        if let Some(c) = k_coloring(g, k, &mut budget)? {
            return Ok((k, c));
        }
        k += 1;
    }
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    Ok(optimal_coloring(g)?.0)
}

pub fn is_proper_coloring(g: &Graph, colours: &[usize]) -> bool {
    colours.len() == g.n() && g.edges().all(|(u, v)| colours[u] != colours[v])
}

/// Smallest `a` admitting an `a:b` colouring.
pub fn chi_b(g: &Graph, b: usize) -> Result<usize> {
    if b == 0 {
        return Err(Error::SizeOutOfRange("fold b must be at least 1".into()));
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let (chi_f, _) = chi_f_exact(g)?;
    let scaled = chi_f * crate::rational::Rational::from_integer(b.into());
    let lo: usize = scaled
        .ceil()
        .to_integer()
        .try_into()
        .map_err(|_| Error::SizeOutOfRange("palette too large".into()))?;
    let hi = b * chromatic_number(g)?;
    let (mut lo, mut hi) = (lo.max(b), hi);
    let mut budget = Budget::from_env("fold colouring number");
    // invariant: an hi:b colouring exists
    while lo < hi {
        let mid = (lo + hi) / 2;
        if find_ab_coloring_budgeted(g, mid, b, &mut budget)?.is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(hi)
}

/// Vertex-minimal subgraph that still has no proper `k`-colouring: vertices
/// are dropped one at a time while the remainder stays non-`k`-colourable.
/// Returns `None` if `g` itself is `k`-colourable.
pub fn critical_subgraph(g: &Graph, k: usize) -> Search<VertexSet> {
    let mut budget = Budget::from_env("critical subgraph");
    if k_coloring(g, k, &mut budget)?.is_some() {
        return Ok(None);
    }
    let mut keep: Vec<usize> = (0..g.n()).collect();
    let mut i = 0;
    while i < keep.len() {
        let trial: VertexSet = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        let (h, _) = g.induced(&trial);
        if k_coloring(&h, k, &mut budget)?.is_none() {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(Some(keep.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_power, make_complete, make_cycle, make_petersen};

    #[test]
    fn ab_colorings() {
        let c5 = make_cycle(5).unwrap();
        let c = find_ab_coloring(&c5, 5, 2).unwrap().unwrap();
        assert_eq!(verify_fold_coloring(&c5, &c), Ok(()));
        assert!(find_ab_coloring(&c5, 4, 2).unwrap().is_none());
        let c82 = cycle_power(8, 2).unwrap();
        let c = find_ab_coloring(&c82, 8, 2).unwrap().unwrap();
        assert_eq!(verify_fold_coloring(&c82, &c), Ok(()));
        assert!(find_ab_coloring(&c82, 7, 2).unwrap().is_none());
        let k3 = make_complete(3).unwrap();
        assert!(find_ab_coloring(&k3, 3, 1).unwrap().is_some());
    }

    #[test]
    fn from_lp_and_rescaled() {
        let c5 = make_cycle(5).unwrap();
        let (_, sol) = chi_f_exact(&c5).unwrap();
        let c = FoldColoring::from_fractional(5, &sol).unwrap();
        assert_eq!((c.a, c.b), (5, 2));
        assert_eq!(verify_fold_coloring(&c5, &c), Ok(()));
        let (f, k) = c.to_four_k_form().unwrap();
        assert_eq!((f.a, f.b), (4 * k, k + 1));
        assert_eq!(verify_fold_coloring(&c5, &f), Ok(()));
        let eleven = FoldColoring { a: 11, b: 3, assignment: vec![vec![0, 1, 2]] };
        let (f, k) = eleven.to_four_k_form().unwrap();
        assert_eq!((f.a, f.b, k), (44, 12, 11));
    }

    #[test]
    fn verifier_witness() {
        let k2 = make_complete(2).unwrap();
        let bad = FoldColoring { a: 1, b: 1, assignment: vec![vec![0], vec![0]] };
        assert_eq!(
            verify_fold_coloring(&k2, &bad),
            Err(Violation::SharedColor { u: 0, v: 1, color: 0 })
        );
        assert!(FoldColoring::new(3, 0, vec![vec![], vec![]]).is_err());
        let short = FoldColoring { a: 3, b: 2, assignment: vec![vec![0, 1], vec![2]] };
        assert!(matches!(verify_fold_coloring(&k2, &short), Err(Violation::BadColorSet { vertex: 1, .. })));
    }

    #[test]
    fn fold_numbers() {
        assert_eq!(chi_b(&make_cycle(5).unwrap(), 2).unwrap(), 5);
        assert_eq!(chi_b(&make_complete(4).unwrap(), 3).unwrap(), 12);
        assert_eq!(chi_b(&cycle_power(8, 2).unwrap(), 1).unwrap(), 4);
        assert_eq!(chi_b(&make_petersen(), 2).unwrap(), 5);
    }

    #[test]
    fn chromatic() {
        assert_eq!(chromatic_number(&make_petersen()).unwrap(), 3);
        assert_eq!(chromatic_number(&make_cycle(7).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle_power(8, 2).unwrap()).unwrap(), 4);
        assert_eq!(chromatic_number(&make_complete(6).unwrap()).unwrap(), 6);
    }

    #[test]
    fn critical() {
        // K4 plus a pendant path: the critical 4-chromatic part is the K4.
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(critical_subgraph(&g, 3).unwrap(), Some(VertexSet::from([0, 1, 2, 3])));
        assert_eq!(critical_subgraph(&g, 4).unwrap(), None);
    }
}
