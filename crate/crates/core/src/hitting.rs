//! Independent sets that meet every copy of given patterns.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::cliques::{clique_number, maximum_cliques};
use crate::error::{Error, Result};
use crate::graph::{bit, make_complete, make_cycle, strong_product, Graph, Mask, VertexSet};
use crate::iso::{copy_masks, is_isomorphic, CopyMode};
use crate::patterns::pattern;

/// Outcome of a hitting-set search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Hitting {
    Found { set: VertexSet },
    /// No independent set meets every copy; `witness` is a copy that the
    /// search could not meet together with the others.
    NotFound { witness: VertexSet },
}

impl Hitting {
    pub fn set(&self) -> Option<&VertexSet> {
        match self {
            Hitting::Found { set } => Some(set),
            Hitting::NotFound { .. } => None,
        }
    }
}

/// Greedily extends an independent set to a maximal one, in id order.
pub fn extend_to_maximal(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut out = s.clone();
    for v in 0..g.n() {
        if !out.contains(v) && g.neighbors(v).iter().all(|&u| !out.contains(u)) {
            out.insert(v);
        }
    }
    out
}

struct HitSearch<'a> {
    adj: &'a [Mask],
    copies: &'a [Mask],
}

impl HitSearch<'_> {
    /// `chosen`: current independent set. `banned`: vertices unusable
    /// (neighbours of `chosen` or already explored alternatives).
    fn go(&self, chosen: Mask, banned: Mask, budget: &mut Budget) -> Result<Option<Mask>> {
        budget.tick()?;
        let mut pick: Option<(u32, u32, Mask)> = None;
        for &c in self.copies {
            if c & chosen != 0 {
                continue;
            }
            let avail = c & !banned;
            let key = (avail.count_ones(), c.trailing_zeros());
            if pick.is_none_or(|(k, m, _)| key < (k, m)) {
                pick = Some((key.0, key.1, avail));
            }
        }
        let Some((_, _, avail)) = pick else {
            return Ok(Some(chosen));
        };
        let mut banned = banned;
        let mut rest = avail;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if let Some(found) = self.go(chosen | bit(v), banned | self.adj[v] | bit(v), budget)? {
                return Ok(Some(found));
            }
            // every solution through v has been explored
            banned |= bit(v);
        }
        Ok(None)
    }
}

/// Root copy a failed search reports: the one with fewest vertices, ties by
/// smallest vertex.
fn witness(copies: &[Mask]) -> VertexSet {
    let c = copies
        .iter()
        .min_by_key(|c| (c.count_ones(), c.trailing_zeros()))
        .copied()
        .unwrap_or(0);
    VertexSet::from_mask(c)
}

fn hit_masks(g: &Graph, copies: &[Mask], maximal: bool, budget: &mut Budget) -> Result<Hitting> {
    let adj = g.masks()?;
    let s = HitSearch { adj: &adj, copies };
    Ok(match s.go(0, 0, budget)? {
        Some(m) => {
            let set = VertexSet::from_mask(m);
            Hitting::Found {
                set: if maximal { extend_to_maximal(g, &set) } else { set },
            }
        }
        None => Hitting::NotFound {
            witness: witness(copies),
        },
    })
}

/// Independent set meeting every maximum clique, smallest size first.
pub fn stable_set_meeting_max_cliques(g: &Graph, maximal: bool) -> Result<Hitting> {
    let cliques: Vec<Mask> = maximum_cliques(g)?.iter().map(|c| c.mask()).collect();
    let mut budget = Budget::from_env("stable set meeting maximum cliques");
    let adj = g.masks()?;
    // Iterative deepening on the size of the set.
    fn sized(adj: &[Mask], copies: &[Mask], chosen: Mask, banned: Mask, left: usize, budget: &mut Budget) -> Result<Option<Mask>> {
        budget.tick()?;
        let Some(&c) = copies
            .iter()
            .filter(|&&c| c & chosen == 0)
            .min_by_key(|&&c| ((c & !banned).count_ones(), c.trailing_zeros()))
        else {
            return Ok(Some(chosen));
        };
        if left == 0 {
            return Ok(None);
        }
        let mut banned = banned;
        let mut rest = c & !banned;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if let Some(f) = sized(adj, copies, chosen | bit(v), banned | adj[v] | bit(v), left - 1, budget)? {
                return Ok(Some(f));
            }
            banned |= bit(v);
        }
        Ok(None)
    }
    for size in 0..=g.n() {
        if let Some(m) = sized(&adj, &cliques, 0, 0, size, &mut budget)? {
            let set = VertexSet::from_mask(m);
            return Ok(Hitting::Found {
                set: if maximal { extend_to_maximal(g, &set) } else { set },
            });
        }
    }
    Ok(Hitting::NotFound {
        witness: witness(&cliques),
    })
}

/// Independent set with exactly one vertex in each part of a clique
/// partition, under the bounded outside-degree hypothesis.
pub fn stable_transversal_of_clique_partition(g: &Graph, parts: &[VertexSet], k: usize) -> Result<Hitting> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        g.check_set(p)?;
        if p.is_empty() {
            return Err(Error::InputViolation(format!("part {i} is empty")));
        }
        if !g.is_clique(p) {
            return Err(Error::InputViolation(format!("part {i} is not a clique")));
        }
        for v in p.iter() {
            if owner[v] != usize::MAX {
                return Err(Error::InputViolation(format!("vertex {v} lies in two parts")));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::InputViolation(format!("vertex {v} lies in no part")));
    }
    for (i, p) in parts.iter().enumerate() {
        let cap = k.min(p.len().saturating_sub(k));
        for v in p.iter() {
            let outside = g.neighbors(v).iter().filter(|&&u| owner[u] != i).count();
            if outside > cap || p.len() < k {
                return Err(Error::HypothesisViolation {
                    vertex: v,
                    reason: format!("{outside} neighbours outside its part of size {}, allowed {cap}", p.len()),
                });
            }
        }
    }
    let copies: Vec<Mask> = parts.iter().map(|p| p.mask()).collect();
    let mut budget = Budget::from_env("clique-partition transversal");
    hit_masks(g, &copies, false, &mut budget)
}

/// A pattern together with how its copies are counted.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub name: String,
    pub graph: Graph,
    pub mode: CopyMode,
}

#[derive(Debug, Clone)]
pub struct HittingFamily {
    members: Vec<FamilyMember>,
}

impl HittingFamily {
    pub fn new(members: Vec<FamilyMember>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InputViolation("hitting family is empty".into()));
        }
        if let Some(m) = members.iter().find(|m| !m.graph.is_connected()) {
            return Err(Error::InputViolation(format!("pattern {} is not connected", m.name)));
        }
        Ok(HittingFamily { members })
    }

    fn member(name: &str, graph: Graph, mode: CopyMode) -> FamilyMember {
        FamilyMember {
            name: name.to_string(),
            graph,
            mode,
        }
    }

    /// Every copy of K4.
    pub fn k4() -> Self {
        HittingFamily::new(vec![Self::member("K4", make_complete(4).unwrap(), CopyMode::Induced)]).unwrap()
    }

    /// Induced copies of K4 and of the square of C8.
    pub fn k4_c8sq() -> Self {
        HittingFamily::new(vec![
            Self::member("K4", make_complete(4).unwrap(), CopyMode::Induced),
            Self::member("C8sq", crate::graph::cycle_power(8, 2).unwrap(), CopyMode::Induced),
        ])
        .unwrap()
    }

    /// Induced copies of K5 and of C5 x K2.
    pub fn k5_c5k2() -> Self {
        HittingFamily::new(vec![
            Self::member("K5", make_complete(5).unwrap(), CopyMode::Induced),
            Self::member(
                "C5xK2",
                strong_product(&make_cycle(5).unwrap(), &make_complete(2).unwrap()),
                CopyMode::Induced,
            ),
        ])
        .unwrap()
    }

    /// Family from catalogue keys or `K<n>`, each in induced mode.
    pub fn from_names(names: &[&str]) -> Result<Self> {
        let mut members = Vec::new();
        for &name in names {
            let graph = match name.strip_prefix('K').and_then(|r| r.parse::<usize>().ok()) {
                Some(k) => make_complete(k)?,
                None => pattern(name)?.graph,
            };
            members.push(Self::member(name, graph, CopyMode::Induced));
        }
        HittingFamily::new(members)
    }

    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    /// All copies of all members in `g`, as masks, deduplicated.
    pub fn copies(&self, g: &Graph, budget: &mut Budget) -> Result<Vec<Mask>> {
        let mut out = Vec::new();
        for m in &self.members {
            let is_clique = m.graph.edge_count() == m.graph.n() * m.graph.n().saturating_sub(1) / 2;
            if is_clique {
                // induced and plain copies of a clique coincide
                out.extend(crate::cliques::k_cliques(g, m.graph.n())?);
            } else {
                out.extend(copy_masks(g, &m.graph, m.mode, budget)?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// Independent set meeting every copy of every family member.
pub fn hitting_independent_set(g: &Graph, family: &HittingFamily, maximal: bool) -> Result<Hitting> {
    let mut budget = Budget::from_env("hitting independent set");
    let copies = family.copies(g, &mut budget)?;
    hit_masks(g, &copies, maximal, &mut budget)
}

/// True iff `set` is independent and meets every copy.
pub fn verify_hitting(g: &Graph, family: &HittingFamily, set: &VertexSet) -> Result<bool> {
    if !g.is_independent(set) {
        return Ok(false);
    }
    let mut budget = Budget::from_env("hitting verification");
    let m = set.mask();
    Ok(family.copies(g, &mut budget)?.iter().all(|c| c & m != 0))
}

/// The three hitting statements whose hypotheses can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HittingLemma {
    /// Δ <= 6, ω <= 5: meet induced K5 and C5 x K2.
    K5C5K2,
    /// Δ <= 5, ω <= 4, not C_{2l+1} x K2: meet every K4.
    K4,
    /// Δ <= 5, ω <= 4, not C_{2l+1} x K2: meet induced K4 and C8^2.
    K4C8sq,
}

impl HittingLemma {
    pub fn family(self) -> HittingFamily {
        match self {
            HittingLemma::K5C5K2 => HittingFamily::k5_c5k2(),
            HittingLemma::K4 => HittingFamily::k4(),
            HittingLemma::K4C8sq => HittingFamily::k4_c8sq(),
        }
    }

    fn limits(self) -> (usize, usize) {
        match self {
            HittingLemma::K5C5K2 => (6, 5),
            HittingLemma::K4 | HittingLemma::K4C8sq => (5, 4),
        }
    }
}

impl std::str::FromStr for HittingLemma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k5-c5k2" => Ok(HittingLemma::K5C5K2),
            "k4" => Ok(HittingLemma::K4),
            "k4-c8sq" => Ok(HittingLemma::K4C8sq),
            other => Err(Error::NotFound(format!("unknown lemma `{other}` (k5-c5k2, k4, k4-c8sq)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: HittingLemma,
    pub connected: bool,
    pub delta: usize,
    pub omega: usize,
    pub delta_ok: bool,
    pub omega_ok: bool,
    /// `g` is `C_{2l+1} x K2` for some `l >= 2`.
    pub odd_cycle_times_k2: bool,
    pub applies: bool,
}

/// Recognises `C_{2l+1} x K2`, `l >= 2`.
pub fn is_odd_cycle_times_k2(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n < 10 || n % 4 != 2 || !g.is_regular() || g.delta() != 5 {
        return Ok(false);
    }
    let h = strong_product(&make_cycle(n / 2)?, &make_complete(2)?);
    is_isomorphic(g, &h)
}

pub fn check_lemma_hypotheses(g: &Graph, lemma: HittingLemma) -> Result<LemmaReport> {
    let (dmax, wmax) = lemma.limits();
    let delta = g.delta();
    let omega = clique_number(g)?;
    let connected = g.is_connected();
    let odd = is_odd_cycle_times_k2(g)?;
    let excluded = odd && lemma != HittingLemma::K5C5K2;
    Ok(LemmaReport {
        lemma,
        connected,
        delta,
        omega,
        delta_ok: delta <= dmax,
        omega_ok: omega <= wmax,
        odd_cycle_times_k2: odd,
        applies: connected && delta <= dmax && omega <= wmax && !excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_power, make_path};

    #[test]
    fn max_cliques() {
        // K4 plus a pendant vertex
        let mut e: Vec<_> = make_complete(4).unwrap().edges().collect();
        e.push((3, 4));
        let g = Graph::from_edges(5, &e).unwrap();
        let h = stable_set_meeting_max_cliques(&g, false).unwrap();
        assert_eq!(h.set().unwrap().len(), 1);
        assert!(matches!(
            stable_set_meeting_max_cliques(&make_cycle(5).unwrap(), false).unwrap(),
            Hitting::NotFound { .. }
        ));
        // C5 x K3 sits exactly on the boundary omega = 2(Delta + 1)/3; its five
        // maximum cliques form an odd cycle, so no stable set meets them all.
        let c5k3 = strong_product(&make_cycle(5).unwrap(), &make_complete(3).unwrap());
        assert!(matches!(
            stable_set_meeting_max_cliques(&c5k3, false).unwrap(),
            Hitting::NotFound { .. }
        ));
    }

    #[test]
    fn transversal() {
        let k3 = make_complete(3).unwrap();
        let g = k3.disjoint_union(&k3);
        let parts = vec![VertexSet::from([0, 1, 2]), VertexSet::from([3, 4, 5])];
        let h = stable_transversal_of_clique_partition(&g, &parts, 1).unwrap();
        assert_eq!(h.set().unwrap().len(), 2);
        let k5 = make_complete(5).unwrap();
        let h = stable_transversal_of_clique_partition(&k5, &[VertexSet::from([0, 1, 2, 3, 4])], 2).unwrap();
        assert_eq!(h.set().unwrap().len(), 1);
        // a vertex with too many outside neighbours
        let bad = Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (0, 3)]).unwrap();
        let parts = vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])];
        assert!(matches!(
            stable_transversal_of_clique_partition(&bad, &parts, 1),
            Err(Error::HypothesisViolation { vertex: 0, .. })
        ));
    }

    #[test]
    fn k4_family() {
        let c5k2 = strong_product(&make_cycle(5).unwrap(), &make_complete(2).unwrap());
        match hitting_independent_set(&c5k2, &HittingFamily::k4(), false).unwrap() {
            Hitting::NotFound { witness } => assert_eq!(witness.len(), 4),
            other => panic!("{other:?}"),
        }
        let p3k2 = strong_product(&make_path(3).unwrap(), &make_complete(2).unwrap());
        let h = hitting_independent_set(&p3k2, &HittingFamily::k4(), true).unwrap();
        assert!(verify_hitting(&p3k2, &HittingFamily::k4(), h.set().unwrap()).unwrap());
        let c82 = cycle_power(8, 2).unwrap();
        let h = hitting_independent_set(&c82, &HittingFamily::k4_c8sq(), true).unwrap();
        assert_eq!(h.set().unwrap().len(), 2);
    }

    #[test]
    fn hypotheses() {
        let c5k2 = strong_product(&make_cycle(5).unwrap(), &make_complete(2).unwrap());
        let r = check_lemma_hypotheses(&c5k2, HittingLemma::K4).unwrap();
        assert!(r.odd_cycle_times_k2 && !r.applies);
        let r = check_lemma_hypotheses(&cycle_power(8, 2).unwrap(), HittingLemma::K4C8sq).unwrap();
        assert!(r.applies && r.delta == 4 && r.omega == 3);
        let r = check_lemma_hypotheses(&make_complete(7).unwrap(), HittingLemma::K5C5K2).unwrap();
        assert!(!r.omega_ok && !r.applies);
    }
}
