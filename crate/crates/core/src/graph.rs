//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bitset word used by the search kernels; graphs handed to them must have
/// at most [`MASK_BITS`] vertices.
pub type Mask = u128;
pub const MASK_BITS: usize = 128;

#[inline]
pub fn bit(v: usize) -> Mask {
    1 << v
}

/// Iterates the set bits of a mask in increasing order.
pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub fn mask_of(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |m, &v| m | bit(v))
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_mask(m: Mask) -> Self {
        VertexSet(bits(m).collect())
    }

    pub fn mask(&self) -> Mask {
        mask_of(&self.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.0.insert(i, v);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A simple undirected graph. Adjacency lists are sorted and symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Result of contracting a vertex set: the new graph, the id of the fat
/// vertex, and the image of every old vertex.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Graph,
    pub fat: usize,
    pub map: Vec<usize>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency lists, validating symmetry.
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = adj.len();
        let mut g = Graph { adj };
        for (v, list) in g.adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate neighbour at {v}")));
            }
            if let Some(&u) = list.iter().find(|&&u| u >= n) {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if list.contains(&v) {
                return Err(Error::InvalidGraph(format!("self-loop at {v}")));
            }
        }
        for v in 0..n {
            for &u in &g.adj[v] {
                if g.adj[u].binary_search(&v).is_err() {
                    return Err(Error::InvalidGraph(format!("asymmetric edge {v}-{u}")));
                }
            }
        }
        Ok(g)
    }

    /// Graph on `masks.len()` vertices whose adjacency rows are `masks`.
    /// Rows are symmetrised.
    pub fn from_masks(masks: &[Mask]) -> Self {
        let n = masks.len();
        let mut g = Graph::empty(n);
        for (u, &m) in masks.iter().enumerate() {
            for v in bits(m) {
                if v < n && v != u && !g.has_edge(u, v) {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        g
    }

    pub fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        s.iter().try_for_each(|v| self.check(v))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn checked_degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.degree(v))
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn delta(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_regular(&self) -> bool {
        self.delta() == self.min_degree()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        let i = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(i, v);
        let j = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(j, u);
    }

    /// Copy of the graph with edge `uv` added (no-op if present).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        let mut g = self.clone();
        if !g.has_edge(u, v) {
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.adj[u].retain(|&x| x != v);
        g.adj[v].retain(|&x| x != u);
        g
    }

    /// Adjacency rows as bitsets. Fails for graphs beyond [`MASK_BITS`].
    pub fn masks(&self) -> Result<Vec<Mask>> {
        if self.n() > MASK_BITS {
            return Err(Error::TooLarge {
                n: self.n(),
                max: MASK_BITS,
            });
        }
        Ok(self.adj.iter().map(|l| mask_of(l)).collect())
    }

    pub fn full_mask(&self) -> Mask {
        if self.n() >= MASK_BITS {
            Mask::MAX
        } else {
            bit(self.n()) - 1
        }
    }

    /// Number of edges with one end in `s` and the other in `t`; an edge with
    /// both ends in `s ∩ t` is counted once.
    pub fn edges_between(&self, s: &VertexSet, t: &VertexSet) -> Result<usize> {
        self.check_set(s)?;
        self.check_set(t)?;
        Ok(self
            .edges()
            .filter(|&(u, v)| (s.contains(u) && t.contains(v)) || (s.contains(v) && t.contains(u)))
            .count())
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|u| s.iter().all(|v| u == v || !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|u| s.iter().all(|v| u == v || self.has_edge(u, v)))
    }

    /// Subgraph induced on `s`, with vertices renumbered in increasing order
    /// of their old ids. Returns the new graph and the old id of each new vertex.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = s.iter().collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (new_id[u] != usize::MAX).then_some(new_id[u]))
                    .collect()
            })
            .collect();
        (Graph { adj }, old)
    }

    /// `G - S`: the subgraph induced on the complement of `s`.
    pub fn remove(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let keep: VertexSet = (0..self.n()).filter(|&v| !s.contains(v)).collect();
        self.induced(&keep)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect())
            .collect();
        Graph { adj }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&v| v + off).collect::<Vec<_>>()),
        );
        Graph { adj }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            adj[perm[v]] = self.adj[v].iter().map(|&u| perm[u]).collect();
            adj[perm[v]].sort_unstable();
        }
        Graph { adj }
    }

    /// Replaces `s` by a single fat vertex adjacent to every outside vertex
    /// that had a neighbour in `s`; edges inside `s` vanish. The fat vertex
    /// takes the smallest id of `s` and the remaining ids are compacted
    /// preserving order. For `s = ∅` a new isolated vertex is appended.
    pub fn contract(&self, s: &VertexSet) -> Result<Contraction> {
        self.check_set(s)?;
        let n = self.n();
        if s.is_empty() {
            let mut g = self.clone();
            g.adj.push(Vec::new());
            return Ok(Contraction {
                graph: g,
                fat: n,
                map: (0..n).collect(),
            });
        }
        let rep = s.first().expect("non-empty");
        let mut map = vec![0; n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if s.contains(v) && v != rep {
                continue;
            }
            *slot = next;
            next += 1;
        }
        let fat = map[rep];
        for v in s.iter() {
            map[v] = fat;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); next];
        for (u, v) in self.edges() {
            let (a, b) = (map[u], map[v]);
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Ok(Contraction {
            graph: Graph { adj },
            fat,
            map,
        })
    }

    pub fn contract_pair(&self, u: usize, v: usize) -> Result<Contraction> {
        self.contract(&VertexSet::from([u, v]))
    }

    pub fn contract_triple(&self, u: usize, v: usize, w: usize) -> Result<Contraction> {
        self.contract(&VertexSet::from([u, v, w]))
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp.into_iter().collect());
        }
        out
    }

    /// Connected; the null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connectivity of `G - removed`.
    pub fn is_connected_without(&self, removed: &[usize]) -> bool {
        let n = self.n();
        let mut dead = vec![false; n];
        for &r in removed {
            dead[r] = true;
        }
        let Some(start) = (0..n).find(|&v| !dead[v]) else {
            return true;
        };
        let mut seen = dead.clone();
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n - removed.iter().collect::<std::collections::BTreeSet<_>>().len()
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::SizeOutOfRange("complete graph needs n >= 1".into()));
    }
    let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
    Ok(Graph { adj })
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::SizeOutOfRange(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn make_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::SizeOutOfRange("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// `C_n^k`: `i ~ j` iff their circular distance is at most `k`.
pub fn cycle_power(n: usize, k: usize) -> Result<Graph> {
    if n < 3 || k == 0 {
        return Err(Error::SizeOutOfRange(format!(
            "cycle power needs n >= 3 and k >= 1, got n={n}, k={k}"
        )));
    }
    let adj = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    let d = i.abs_diff(j);
                    j != i && d.min(n - d) <= k
                })
                .collect()
        })
        .collect();
    Ok(Graph { adj })
}

/// Strong product; vertex `(a, x)` has id `a * |V(h)| + x`.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.n();
    let n = g.n() * m;
    let mut adj = vec![Vec::new(); n];
    for a in 0..g.n() {
        for x in 0..m {
            let list: &mut Vec<usize> = &mut adj[a * m + x];
            let rows = std::iter::once(a).chain(g.neighbors(a).iter().copied());
            for b in rows {
                let cols = std::iter::once(x).chain(h.neighbors(x).iter().copied());
                for y in cols {
                    if a != b || x != y {
                        list.push(b * m + y);
                    }
                }
            }
            list.sort_unstable();
        }
    }
    Graph { adj }
}

/// The 3-dimensional hypercube.
pub fn make_cube() -> Graph {
    let edges: Vec<_> = (0..8usize)
        .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Graph::from_edges(8, &edges).expect("valid cube")
}

pub fn make_petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).expect("valid Petersen graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let k1 = make_complete(1).unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        let c5 = make_cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!(c5.is_regular() && c5.delta() == 2);
        assert_eq!(make_complete(5).unwrap().edge_count(), 10);
        assert_eq!(make_path(4).unwrap().edge_count(), 3);
        assert!(matches!(make_cycle(2), Err(Error::SizeOutOfRange(_))));
        assert!(make_complete(0).is_err());
    }

    #[test]
    fn strong_products() {
        let c5 = make_cycle(5).unwrap();
        let p = strong_product(&c5, &make_complete(2).unwrap());
        assert_eq!(p.n(), 10);
        assert!(p.is_regular() && p.delta() == 5);
        let p3 = strong_product(&c5, &make_complete(3).unwrap());
        assert_eq!(p3.n(), 15);
        assert!(p3.is_regular() && p3.delta() == 8);
        let h = make_petersen();
        assert_eq!(strong_product(&make_complete(1).unwrap(), &h), h);
    }

    #[test]
    fn cycle_powers() {
        let c82 = cycle_power(8, 2).unwrap();
        assert_eq!(c82.edge_count(), 16);
        assert!(c82.is_regular() && c82.delta() == 4);
        assert_eq!(cycle_power(5, 1).unwrap(), make_cycle(5).unwrap());
        assert_eq!(cycle_power(5, 2).unwrap(), make_complete(5).unwrap());
        assert!(cycle_power(2, 1).is_err());
        assert!(cycle_power(8, 0).is_err());
    }

    #[test]
    fn contraction_cases() {
        let c5 = make_cycle(5).unwrap();
        let single = c5.contract(&VertexSet::from([2])).unwrap();
        assert_eq!(single.graph, c5);
        let empty = c5.contract(&VertexSet::new()).unwrap();
        assert_eq!(empty.graph.n(), 6);
        assert_eq!(empty.graph.degree(5), 0);
        assert_eq!(empty.fat, 5);

        // Contracting antipodal vertices of C4 leaves a path on three vertices.
        let c4 = make_cycle(4).unwrap();
        let c = c4.contract_pair(0, 2).unwrap();
        assert_eq!(c.graph.n(), 3);
        assert_eq!(c.fat, 0);
        assert_eq!(c.graph.degree(c.fat), 2);
        assert_eq!(c.graph.edge_count(), 2);
        assert!(!c.graph.has_edge(c.map[1], c.map[3]));

        // Adjacent vertices may be contracted; the internal edge disappears.
        let k3 = make_complete(3).unwrap().contract_pair(0, 1).unwrap();
        assert_eq!(k3.graph.edge_count(), 1);

        assert!(matches!(
            c5.contract(&VertexSet::from([7])),
            Err(Error::VertexOutOfRange { vertex: 7, n: 5 })
        ));
    }

    #[test]
    fn parameters() {
        let k4 = make_complete(4).unwrap();
        let s = VertexSet::from([0, 1]);
        let t = VertexSet::from([2, 3]);
        assert_eq!(k4.edges_between(&s, &t).unwrap(), 4);
        let c5 = make_cycle(5).unwrap();
        assert_eq!(
            c5.edges_between(&VertexSet::from([0]), &VertexSet::from([1, 2]))
                .unwrap(),
            1
        );
        // Edge inside the intersection is counted once.
        assert_eq!(k4.edges_between(&s, &s).unwrap(), 1);
        assert_eq!(cycle_power(8, 2).unwrap().delta(), 4);
        assert!(c5.checked_degree(9).is_err());
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_adjacency(vec![vec![1], vec![]]).is_err());
    }

    #[test]
    fn connectivity() {
        let g = make_complete(3).unwrap().disjoint_union(&make_complete(2).unwrap());
        assert!(!g.is_connected());
        assert_eq!(g.components().len(), 2);
        let p = make_path(4).unwrap();
        assert!(!p.is_connected_without(&[1]));
        assert!(p.is_connected_without(&[0]));
    }
}
