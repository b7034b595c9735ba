//! Per-vertex choice of the sets `S(x)` inside each neighbourhood.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::iso::{contains, CopyMode};
use crate::patterns::pattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SelectionKind {
    /// Degree 3: one non-adjacent pair, label 1.
    NonEdgePair,
    /// Degree 4 with an independent triple in the neighbourhood, label 1.
    IndependentTriple,
    /// Degree 4 with neighbourhood independence number 2: two disjoint
    /// non-adjacent pairs, labels 1 and 2.
    DoublePair,
    /// Degree at most 2: nothing is contracted.
    SmallDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub vertex: usize,
    pub kind: SelectionKind,
    pub s1: VertexSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<VertexSet>,
    /// For double pairs: the contraction avoids both forbidden patterns.
    /// Always true for the other kinds.
    pub pattern_free: bool,
}

impl Selection {
    /// `S(x)`, both labels together.
    pub fn all(&self) -> VertexSet {
        self.s1.iter().chain(self.s2.iter().flat_map(|s| s.iter())).collect()
    }

    pub fn label_of(&self, v: usize) -> Option<u8> {
        if self.s1.contains(v) {
            Some(1)
        } else if self.s2.as_ref().is_some_and(|s| s.contains(v)) {
            Some(2)
        } else {
            None
        }
    }

    pub fn is_double(&self) -> bool {
        self.kind == SelectionKind::DoublePair
    }
}

/// Size of a largest independent set among at most four vertices.
pub(crate) fn local_alpha(g: &Graph, s: &[usize]) -> usize {
    let k = s.len();
    (0u32..1 << k)
        .filter(|m| {
            (0..k).all(|i| m >> i & 1 == 0 || (i + 1..k).all(|j| m >> j & 1 == 0 || !g.has_edge(s[i], s[j])))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// The perfect matchings of the four neighbours using non-edges only.
pub fn candidate_pairings(g: &Graph, x: usize) -> Vec<(VertexSet, VertexSet)> {
    let nb = g.neighbors(x);
    if nb.len() != 4 {
        return Vec::new();
    }
    let (a, b, c, d) = (nb[0], nb[1], nb[2], nb[3]);
    [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]
        .into_iter()
        .filter(|&((p, q), (r, s))| !g.has_edge(p, q) && !g.has_edge(r, s))
        .map(|((p, q), (r, s))| (VertexSet::from([p, q]), VertexSet::from([r, s])))
        .collect()
}

/// `G / S1 / S2`.
pub fn double_contraction(g: &Graph, s1: &VertexSet, s2: &VertexSet) -> Result<Graph> {
    let first = g.contract(s1)?;
    let image: VertexSet = s2.iter().map(|v| first.map[v]).collect();
    Ok(first.graph.contract(&image)?.graph)
}

/// Which forbidden patterns appear as subgraphs of `G / S1 / S2`.
pub fn forbidden_patterns_in(g: &Graph, s1: &VertexSet, s2: &VertexSet) -> Result<Vec<&'static str>> {
    let h = double_contraction(g, s1, s2)?;
    let mut found = Vec::new();
    for key in ["K5minus", "G0"] {
        if contains(&h, &pattern(key)?.graph, CopyMode::Subgraph)? {
            found.push(key);
        }
    }
    Ok(found)
}

/// Chooses `S(x)`. With `strict`, a degree-4 vertex whose every pairing
/// contracts to a forbidden pattern is an error; otherwise the first
/// pairing is kept and flagged.
pub fn select_s(g: &Graph, x: usize, strict: bool) -> Result<Selection> {
    g.check(x)?;
    let nb = g.neighbors(x);
    let d = nb.len();
    let plain = |kind, s1: VertexSet| Selection {
        vertex: x,
        kind,
        s1,
        s2: None,
        pattern_free: true,
    };
    match d {
        0..=2 => Ok(plain(SelectionKind::SmallDegree, VertexSet::new())),
        3 => {
            let pair = (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .find(|&(i, j)| !g.has_edge(nb[i], nb[j]))
                .ok_or_else(|| Error::Rejected {
                    reason: "closed neighbourhood is a K4".into(),
                    witness: std::iter::once(x).chain(nb.iter().copied()).collect(),
                })?;
            Ok(plain(SelectionKind::NonEdgePair, VertexSet::from([nb[pair.0], nb[pair.1]])))
        }
        4 => {
            if local_alpha(g, nb) >= 3 {
                let triple = (0..4)
                    .map(|skip| nb.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect::<Vec<_>>())
                    .rev()
                    .find(|t| local_alpha(g, t) == 3)
                    .expect("independent triple");
                return Ok(plain(SelectionKind::IndependentTriple, triple.into()));
            }
            let pairings = candidate_pairings(g, x);
            if pairings.is_empty() {
                return Err(Error::Rejected {
                    reason: "neighbourhood has no two disjoint non-edges; the graph contains a K4".into(),
                    witness: std::iter::once(x).chain(nb.iter().copied()).collect(),
                });
            }
            let mut failures = Vec::new();
            for (s1, s2) in &pairings {
                let found = forbidden_patterns_in(g, s1, s2)?;
                if found.is_empty() {
                    return Ok(Selection {
                        vertex: x,
                        kind: SelectionKind::DoublePair,
                        s1: s1.clone(),
                        s2: Some(s2.clone()),
                        pattern_free: true,
                    });
                }
                failures.push(format!("{s1:?}/{s2:?} contains {}", found.join(" and ")));
            }
            if strict {
                return Err(Error::NoValidSelection {
                    vertex: x,
                    detail: failures.join("; "),
                });
            }
            let (s1, s2) = pairings.into_iter().next().expect("non-empty");
            Ok(Selection {
                vertex: x,
                kind: SelectionKind::DoublePair,
                s1,
                s2: Some(s2),
                pattern_free: false,
            })
        }
        _ => Err(Error::Rejected {
            reason: format!("vertex of degree {d} exceeds 4"),
            witness: vec![x],
        }),
    }
}

pub fn select_all(g: &Graph, strict: bool) -> Result<Vec<Selection>> {
    (0..g.n()).map(|x| select_s(g, x, strict)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cube, make_cycle};

    #[test]
    fn cube_pairs() {
        let q3 = make_cube();
        for x in 0..8 {
            let s = select_s(&q3, x, true).unwrap();
            assert_eq!(s.kind, SelectionKind::NonEdgePair);
            assert_eq!(s.s1.len(), 2);
            assert!(q3.is_independent(&s.s1));
        }
    }

    #[test]
    fn two_disjoint_edges() {
        // x = 0 with neighbourhood {1,2,3,4} inducing 12 and 34
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap();
        let p = candidate_pairings(&g, 0);
        assert_eq!(p.len(), 2);
        let s = select_s(&g, 0, true).unwrap();
        assert_eq!(s.kind, SelectionKind::DoublePair);
        assert_eq!(s.all(), VertexSet::from([1, 2, 3, 4]));
        assert_eq!(s.label_of(s.s1.first().unwrap()), Some(1));
    }

    #[test]
    fn star_and_small() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let s = select_s(&star, 0, true).unwrap();
        assert_eq!(s.kind, SelectionKind::IndependentTriple);
        assert_eq!(s.s1.len(), 3);
        let c5 = make_cycle(5).unwrap();
        assert_eq!(select_s(&c5, 0, true).unwrap().kind, SelectionKind::SmallDegree);
    }

    #[test]
    fn forbidden_contraction() {
        // C8 squared: each neighbourhood is a P4; its single pairing
        // contracts to a graph holding K5minus
        let g = crate::graph::cycle_power(8, 2).unwrap();
        assert!(matches!(select_s(&g, 0, true), Err(Error::NoValidSelection { vertex: 0, .. })));
        let s = select_s(&g, 0, false).unwrap();
        assert!(!s.pattern_free);
    }
}
