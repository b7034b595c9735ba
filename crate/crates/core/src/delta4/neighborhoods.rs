//! The relations `N^j` and the auxiliary graph `G*`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::selection::Selection;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The relation indices in use.
pub const RELATIONS: [usize; 6] = [1, 2, 3, 4, 5, 7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Paths of the exact prescribed shapes.
    #[default]
    Pattern,
    /// For `j ∈ {4, 5, 7}`: every vertex within distance `j` meeting the
    /// endpoint conditions. Only ever adds edges to `G*`.
    Conservative,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pattern" => Ok(Mode::Pattern),
            "conservative" => Ok(Mode::Conservative),
            _ => Err(Error::InputViolation(format!("unknown mode {s:?}; expected pattern or conservative"))),
        }
    }
}

/// Members of `N^j(u)` with one witnessing path each (starting at `u`).
pub type Relation = BTreeMap<usize, Vec<usize>>;

struct Ctx<'a> {
    g: &'a Graph,
    sel: &'a [Selection],
    all: Vec<VertexSet>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a Graph, sel: &'a [Selection]) -> Result<Self> {
        if sel.len() != g.n() || sel.iter().enumerate().any(|(i, s)| s.vertex != i) {
            return Err(Error::InputViolation("selections missing or out of order".into()));
        }
        Ok(Ctx {
            g,
            sel,
            all: sel.iter().map(Selection::all).collect(),
        })
    }

    fn double(&self, v: usize) -> bool {
        self.sel[v].is_double()
    }

    fn closed(&self, u: usize, w: usize) -> bool {
        u == w || self.g.has_edge(u, w)
    }

    /// A neighbour of `w` in `S1(u)` and one in `S2(u)`, if both exist.
    fn bridge(&self, u: usize, w: usize) -> Option<usize> {
        let s = &self.sel[u];
        let s2 = s.s2.as_ref()?;
        let a = s.s1.iter().find(|&a| self.g.has_edge(a, w))?;
        s2.iter().any(|b| self.g.has_edge(b, w)).then_some(a)
    }

    /// Vertices `w ∉ Γ[u]` adjacent to both label classes of `u`.
    fn bridges(&self, u: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.all[u]
            .iter()
            .flat_map(|s| self.g.neighbors(s).iter().copied())
            .filter(|&w| !self.closed(u, w))
            .filter_map(|w| self.bridge(u, w).map(|s| (w, s)))
            .collect();
        out.sort_unstable();
        out.dedup_by_key(|p| p.0);
        out
    }

    fn n1(&self, u: usize) -> Relation {
        self.g.neighbors(u).iter().map(|&v| (v, vec![u, v])).collect()
    }

    fn n2(&self, u: usize) -> Relation {
        let mut r = Relation::new();
        for s in self.all[u].iter() {
            for &v in self.g.neighbors(s) {
                if v != u && self.all[v].contains(s) {
                    r.entry(v).or_insert_with(|| vec![u, s, v]);
                }
            }
        }
        r
    }

    fn n3(&self, u: usize) -> Relation {
        let mut r = Relation::new();
        for s in self.all[u].iter() {
            for &t in self.g.neighbors(s) {
                if t == u {
                    continue;
                }
                for &v in self.g.neighbors(t) {
                    if v != u && v != s && self.all[v].contains(t) {
                        r.entry(v).or_insert_with(|| vec![u, s, t, v]);
                    }
                }
            }
        }
        r
    }

    fn n4(&self, u: usize) -> Relation {
        let mut r = Relation::new();
        let Some(s2) = self.sel[u].s2.as_ref().filter(|_| self.double(u)) else {
            return r;
        };
        for s in s2.iter() {
            for &w in self.g.neighbors(s) {
                if self.closed(u, w) {
                    continue;
                }
                for &z in self.g.neighbors(w) {
                    if z == s || z == u {
                        continue;
                    }
                    for &v in self.g.neighbors(z) {
                        if ![u, s, w].contains(&v) && self.all[v].contains(z) {
                            r.entry(v).or_insert_with(|| vec![u, s, w, z, v]);
                        }
                    }
                }
            }
        }
        r
    }

    fn n5(&self, u: usize) -> Relation {
        let mut r = Relation::new();
        if !self.double(u) {
            return r;
        }
        for (w, s) in self.bridges(u) {
            for &z in self.g.neighbors(w) {
                for &t in self.g.neighbors(z) {
                    for &v in self.g.neighbors(t) {
                        if v == u || !self.double(v) || self.closed(v, z) || !self.all[v].contains(t) {
                            continue;
                        }
                        if let Some(t1) = self.bridge(v, z) {
                            r.entry(v).or_insert_with(|| vec![u, s, w, z, t1, v]);
                        }
                    }
                }
            }
        }
        r
    }

    /// Edges `e1e2` outside `Γ[u]` with both ends bridging the labels of `u`.
    fn bridge_edges(&self, u: usize) -> Vec<(usize, usize, usize)> {
        let b = self.bridges(u);
        let mut out = Vec::new();
        for (i, &(e1, s)) in b.iter().enumerate() {
            for &(e2, _) in &b[i + 1..] {
                if self.g.has_edge(e1, e2) {
                    out.push((e1, e2, s));
                }
            }
        }
        out
    }

    fn n7(&self, u: usize) -> Relation {
        let mut r = Relation::new();
        if !self.double(u) {
            return r;
        }
        for (e1, e2, s) in self.bridge_edges(u) {
            for &w in self.g.neighbors(e1) {
                if w == e2 || !self.g.has_edge(w, e2) {
                    continue;
                }
                for &z in self.g.neighbors(w) {
                    if z == e1 || z == e2 {
                        continue;
                    }
                    // f1 f2 is an edge in Γ(z); its ends bridge the labels of v
                    let nz = self.g.neighbors(z);
                    for (i, &f1) in nz.iter().enumerate() {
                        for &f2 in &nz[i + 1..] {
                            if !self.g.has_edge(f1, f2) || [e1, e2, w].iter().any(|x| *x == f1 || *x == f2) {
                                continue;
                            }
                            for &t in self.g.neighbors(f1) {
                                for &v in self.g.neighbors(t) {
                                    if v == u
                                        || !self.double(v)
                                        || !self.all[v].contains(t)
                                        || self.closed(v, f1)
                                        || self.closed(v, f2)
                                    {
                                        continue;
                                    }
                                    if self.bridge(v, f1).is_some() && self.bridge(v, f2).is_some() {
                                        r.entry(v).or_insert_with(|| vec![u, s, e1, w, z, f1, t, v]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        r
    }

    /// Breadth-first superset used by the conservative mode.
    fn within(&self, u: usize, j: usize, both_double: bool) -> Relation {
        let mut r = Relation::new();
        let need_u = self.double(u);
        if !need_u {
            return r;
        }
        let mut parent = vec![usize::MAX; self.g.n()];
        let mut dist = vec![usize::MAX; self.g.n()];
        dist[u] = 0;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if dist[x] == j {
                continue;
            }
            for &y in self.g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        for (v, &dv) in dist.iter().enumerate() {
            if v == u || dv == usize::MAX || (both_double && !self.double(v)) {
                continue;
            }
            let mut path = vec![v];
            while *path.last().expect("non-empty") != u {
                path.push(parent[*path.last().expect("non-empty")]);
            }
            path.reverse();
            r.insert(v, path);
        }
        r
    }

    fn relation(&self, u: usize, j: usize, mode: Mode) -> Result<Relation> {
        Ok(match (j, mode) {
            (1, _) => self.n1(u),
            (2, _) => self.n2(u),
            (3, _) => self.n3(u),
            (4, Mode::Pattern) => self.n4(u),
            (5, Mode::Pattern) => self.n5(u),
            (7, Mode::Pattern) => self.n7(u),
            (4, Mode::Conservative) => self.within(u, 4, false),
            (5 | 7, Mode::Conservative) => self.within(u, j, true),
            _ => return Err(Error::SizeOutOfRange(format!("no relation N^{j}"))),
        })
    }
}

/// `N^j(u)` with witnessing paths.
pub fn neighborhood(g: &Graph, sel: &[Selection], u: usize, j: usize, mode: Mode) -> Result<Relation> {
    g.check(u)?;
    Ctx::new(g, sel)?.relation(u, j, mode)
}

/// Why an edge of `G*` exists: `v ∈ N^j(u)` along `path`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub relation: usize,
    pub path: Vec<usize>,
}

/// Sizes of the relations at one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct CapCounts {
    pub vertex: usize,
    pub n123: usize,
    pub n4: usize,
    pub n5: usize,
    pub n7: usize,
    pub union: usize,
}

pub const CAP_N123: usize = 36;
pub const CAP_N4: usize = 36;
pub const CAP_N5: usize = 24;
pub const CAP_N7: usize = 4;
pub const CAP_UNION: usize = 96;

impl CapCounts {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, got, cap) in [
            ("N1-3", self.n123, CAP_N123),
            ("N4", self.n4, CAP_N4),
            ("N5", self.n5, CAP_N5),
            ("N7", self.n7, CAP_N7),
            ("union", self.union, CAP_UNION),
        ] {
            if got > cap {
                out.push(format!("vertex {}: |{name}| = {got} > {cap}", self.vertex));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    pub graph: Graph,
    pub mode: Mode,
    /// Keyed by `(min, max)` endpoint pair.
    pub provenance: BTreeMap<(usize, usize), Provenance>,
    /// `N^j(u)` for every `u` and relation, in [`RELATIONS`] order.
    pub relations: Vec<[VertexSet; 6]>,
    /// Counts for vertices whose selection is a double pair.
    pub caps: Vec<CapCounts>,
}

impl AuxiliaryGraph {
    pub fn members(&self, u: usize, j: usize) -> &VertexSet {
        let i = RELATIONS.iter().position(|&r| r == j).expect("relation index");
        &self.relations[u][i]
    }

    pub fn cap_violations(&self) -> Vec<String> {
        self.caps.iter().flat_map(CapCounts::violations).collect()
    }

    /// Edge counts per relation (first relation that produced each edge).
    pub fn edges_by_relation(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for p in self.provenance.values() {
            *out.entry(p.relation).or_insert(0) += 1;
        }
        out
    }
}

/// Builds `G*`: `uv` is an edge when `v ∈ N^j(u)` for some `j`, in either
/// direction.
pub fn build_auxiliary(g: &Graph, sel: &[Selection], mode: Mode) -> Result<AuxiliaryGraph> {
    let ctx = Ctx::new(g, sel)?;
    let n = g.n();
    let mut provenance = BTreeMap::new();
    let mut relations = Vec::with_capacity(n);
    let mut caps = Vec::new();
    for u in 0..n {
        let mut sets: [VertexSet; 6] = Default::default();
        for (i, &j) in RELATIONS.iter().enumerate() {
            let rel = ctx.relation(u, j, mode)?;
            for (&v, path) in &rel {
                provenance.entry((u.min(v), u.max(v))).or_insert_with(|| Provenance {
                    relation: j,
                    path: path.clone(),
                });
            }
            sets[i] = rel.keys().copied().collect();
        }
        if ctx.double(u) {
            let n123: VertexSet = sets[..3].iter().flat_map(|s| s.iter()).collect();
            let union: VertexSet = sets.iter().flat_map(|s| s.iter()).collect();
            caps.push(CapCounts {
                vertex: u,
                n123: n123.len(),
                n4: sets[3].len(),
                n5: sets[4].len(),
                n7: sets[5].len(),
                union: union.len(),
            });
        }
        relations.push(sets);
    }
    let edges: Vec<(usize, usize)> = provenance.keys().copied().collect();
    Ok(AuxiliaryGraph {
        graph: Graph::from_edges(n, &edges)?,
        mode,
        provenance,
        relations,
        caps,
    })
}

#[cfg(test)]
mod tests {
    use super::super::selection::select_all;
    use super::*;
    use crate::graph::make_cube;
    use crate::random::{random_connected, rng, RandomSpec};

    #[test]
    fn cube_relations() {
        let q3 = make_cube();
        let sel = select_all(&q3, true).unwrap();
        let aux = build_auxiliary(&q3, &sel, Mode::Pattern).unwrap();
        assert!(aux.caps.is_empty());
        for u in 0..8 {
            for j in [4, 5, 7] {
                assert!(aux.members(u, j).is_empty());
            }
            assert_eq!(aux.members(u, 1).len(), 3);
        }
    }

    #[test]
    fn empty_graph() {
        let g = Graph::empty(1);
        let sel = select_all(&g, true).unwrap();
        let aux = build_auxiliary(&g, &sel, Mode::Pattern).unwrap();
        assert_eq!(aux.graph.edge_count(), 0);
    }

    #[test]
    fn symmetry_and_caps_on_random_graphs() {
        let mut r = rng(5);
        for i in 0..40 {
            let g = random_connected(&mut r, RandomSpec::delta4(8 + i % 16)).unwrap();
            let sel = select_all(&g, false).unwrap();
            let aux = build_auxiliary(&g, &sel, Mode::Pattern).unwrap();
            assert!(aux.cap_violations().is_empty(), "{:?}", aux.cap_violations());
            for u in 0..g.n() {
                for j in [1, 2, 3, 5, 7] {
                    for v in aux.members(u, j).iter() {
                        assert!(aux.members(v, j).contains(u), "N^{j} asymmetric at {u} {v}");
                    }
                }
            }
            let cons = build_auxiliary(&g, &sel, Mode::Conservative).unwrap();
            for (u, v) in aux.graph.edges() {
                assert!(cons.graph.has_edge(u, v));
            }
        }
    }
}
