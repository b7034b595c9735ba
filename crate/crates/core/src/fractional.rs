//! Exact fractional chromatic number.
//!
//! Solved as the LP `max Σ y_v` subject to `Σ_{v∈I} y_v <= 1` for every
//! maximal independent set `I`. The optimal `y` is a fractional clique (the
//! lower-bound certificate) and the row prices are weights on independent
//! sets covering every vertex (the upper-bound certificate). Small graphs
//! list every maximal independent set; larger ones add rows lazily, pricing
//! with a maximum-weight independent set search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::cliques::{independence_number, max_weight_independent_set, maximal_independent_masks};
use crate::error::{Error, PartialBounds, Result};
use crate::graph::{bit, bits, Graph, Mask, VertexSet};
use crate::iso::is_vertex_transitive;
use crate::lp::{maximize, LpOutcome, LpSolution};
use crate::rational::{self, Rational};

/// Up to this order every maximal independent set becomes an LP row.
pub const FULL_ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalSolution {
    pub sets: Vec<VertexSet>,
    #[serde(with = "rational::serde_vec")]
    pub weights: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    #[serde(with = "rational::serde_opt_vec", default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<Rational>>,
}

fn lp_rows(n: usize, rows: &[Mask]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|&m| (0..n).map(|v| (m >> v & 1) as i64).collect())
        .collect()
}

fn solve_rows(n: usize, rows: &[Mask], budget: &mut Budget) -> Result<LpSolution> {
    let a = lp_rows(n, rows);
    match maximize(&a, &vec![1; rows.len()], &vec![1; n], budget)? {
        LpOutcome::Optimal(s) => Ok(s),
        // every vertex lies in some row, so each y_v is bounded by 1
        LpOutcome::Unbounded => unreachable!("fractional clique LP is bounded"),
    }
}

fn package(rows: &[Mask], s: LpSolution) -> FractionalSolution {
    let mut pairs: Vec<(VertexSet, Rational)> = rows
        .iter()
        .zip(s.dual)
        .filter(|(_, w)| w.is_positive())
        .map(|(&m, w)| (VertexSet::from_mask(m), w))
        .collect();
    pairs.sort();
    let (sets, weights) = pairs.into_iter().unzip();
    FractionalSolution {
        sets,
        weights,
        value: s.value,
        dual: Some(s.primal),
    }
}

/// Greedy maximal independent sets, one started at each not yet covered
/// vertex in id order.
pub fn greedy_cover(g: &Graph) -> Result<Vec<Mask>> {
    let adj = g.masks()?;
    let mut covered: Mask = 0;
    let mut out = Vec::new();
    for v in 0..g.n() {
        if covered & bit(v) != 0 {
            continue;
        }
        let mut set = bit(v);
        let mut blocked = adj[v] | bit(v);
        for (u, &au) in adj.iter().enumerate() {
            if blocked & bit(u) == 0 {
                set |= bit(u);
                blocked |= au | bit(u);
            }
        }
        covered |= set;
        out.push(set);
    }
    Ok(out)
}

/// Exact fractional chromatic number with primal and dual certificates.
pub fn chi_f_exact(g: &Graph) -> Result<(Rational, FractionalSolution)> {
    let mut budget = Budget::from_env("fractional chromatic number");
    chi_f_with_budget(g, &mut budget)
}

pub fn chi_f_with_budget(g: &Graph, budget: &mut Budget) -> Result<(Rational, FractionalSolution)> {
    let n = g.n();
    if n == 0 {
        let sol = FractionalSolution {
            sets: vec![],
            weights: vec![],
            value: Rational::zero(),
            dual: Some(vec![]),
        };
        return Ok((Rational::zero(), sol));
    }
    let sol = if n <= FULL_ENUMERATION_LIMIT {
        let rows = maximal_independent_masks(g, budget)?;
        package(&rows, solve_rows(n, &rows, budget)?)
    } else {
        column_generation(g, budget)?
    };
    Ok((sol.value.clone(), sol))
}

fn lcm_of_denominators(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

fn scaled_weights(y: &[Rational], scale: &BigInt) -> Vec<BigInt> {
    y.iter()
        .map(|x| (x * Rational::from_integer(scale.clone())).to_integer())
        .collect()
}

/// Row generation: keep the LP restricted to known independent sets and add
/// the heaviest independent set under the current `y` while it is violated.
pub fn column_generation(g: &Graph, budget: &mut Budget) -> Result<FractionalSolution> {
    let n = g.n();
    let mut rows = greedy_cover(g)?;
    let mut lower: Option<Rational> = None;
    loop {
        let s = match solve_rows(n, &rows, budget) {
            Ok(s) => s,
            Err(e) => return Err(with_partial(e, lower, None)),
        };
        let scale = lcm_of_denominators(&s.primal);
        let w = scaled_weights(&s.primal, &scale);
        let (best, set) = match max_weight_independent_set(g, &w, budget) {
            Ok(x) => x,
            Err(e) => return Err(with_partial(e, lower, Some(s.value.clone()))),
        };
        // y scaled down by the heaviest set weight is always feasible
        let candidate = if best.is_zero() {
            s.value.clone()
        } else {
            &s.value * Rational::new(scale.clone(), best.clone())
        };
        if lower.as_ref().is_none_or(|l| candidate > *l) {
            lower = Some(candidate);
        }
        if best <= scale {
            return Ok(package(&rows, s));
        }
        debug_assert!(!rows.contains(&set));
        rows.push(set);
    }
}

fn with_partial(e: Error, lower: Option<Rational>, upper: Option<Rational>) -> Error {
    match e {
        Error::ResourceLimit { what, budget, .. } => Error::ResourceLimit {
            what,
            budget,
            partial: Box::new(PartialBounds { lower, upper }),
        },
        other => other,
    }
}

/// `|V| / α` for a vertex-transitive graph.
pub fn chi_f_vertex_transitive(g: &Graph) -> Result<Rational> {
    if !is_vertex_transitive(g)? {
        return Err(Error::NotVertexTransitive);
    }
    if g.n() == 0 {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(
        BigInt::from(g.n()),
        BigInt::from(independence_number(g)?),
    ))
}

impl FractionalSolution {
    /// Re-checks every certificate invariant against `g`.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.sets.len() != self.weights.len() {
            return Err("sets and weights differ in length".into());
        }
        let mut cover = vec![Rational::zero(); g.n()];
        for (s, w) in self.sets.iter().zip(&self.weights) {
            if w.is_negative() {
                return Err(format!("negative weight on {s:?}"));
            }
            if s.iter().any(|v| v >= g.n()) {
                return Err(format!("set {s:?} has out-of-range vertices"));
            }
            if !g.is_independent(s) {
                return Err(format!("set {s:?} is not independent"));
            }
            for v in s.iter() {
                cover[v] += w;
            }
        }
        if let Some(v) = cover.iter().position(|c| *c < Rational::one()) {
            return Err(format!("vertex {v} covered with weight {}", rational::format(&cover[v])));
        }
        let total: Rational = self.weights.iter().sum();
        if total != self.value {
            return Err(format!("weights sum to {}, value is {}", rational::format(&total), rational::format(&self.value)));
        }
        if let Some(y) = &self.dual {
            if y.len() != g.n() {
                return Err("dual has wrong length".into());
            }
            if y.iter().any(|x| x.is_negative()) {
                return Err("negative dual value".into());
            }
            let dual_total: Rational = y.iter().sum();
            if dual_total != self.value {
                return Err(format!("dual sums to {}, primal to {}", rational::format(&dual_total), rational::format(&self.value)));
            }
            let scale = lcm_of_denominators(y);
            let w = scaled_weights(y, &scale);
            let mut budget = Budget::from_env("dual verification");
            let (best, set) = max_weight_independent_set(g, &w, &mut budget).map_err(|e| e.to_string())?;
            if best > scale {
                return Err(format!("independent set {:?} has dual weight above 1", bits(set).collect::<Vec<_>>()));
            }
        }
        Ok(())
    }
}
