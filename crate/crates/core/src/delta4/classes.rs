//! Greedy colouring of `G*` and the per-class graphs `G(X)`.

use serde::{Deserialize, Serialize};

use super::neighborhoods::AuxiliaryGraph;
use super::selection::{Selection, SelectionKind};
use crate::blocks::is_gallai_forest;
use crate::budget::Budget;
use crate::coloring::{critical_subgraph, is_proper_coloring, k_coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Greedy order position: degree at most 3 first, then degree 4 with an
/// independent triple, then the rest.
pub fn stratum(sel: &Selection) -> u8 {
    match sel.kind {
        SelectionKind::SmallDegree | SelectionKind::NonEdgePair => 0,
        SelectionKind::IndependentTriple => 1,
        SelectionKind::DoublePair => 2,
    }
}

/// Forbidden-colour bounds per stratum.
pub const FORBIDDEN_CAPS: [usize; 3] = [39, 39, 132];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassColoring {
    /// Class index of every vertex.
    pub colour: Vec<usize>,
    pub classes: Vec<VertexSet>,
    pub order: Vec<usize>,
    /// Largest number of distinct colours seen on earlier neighbours, per stratum.
    pub max_forbidden: [usize; 3],
}

impl ClassColoring {
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn forbidden_violations(&self) -> Vec<String> {
        (0..3)
            .filter(|&i| self.max_forbidden[i] > FORBIDDEN_CAPS[i])
            .map(|i| format!("stratum {}: {} forbidden colours > {}", i + 1, self.max_forbidden[i], FORBIDDEN_CAPS[i]))
            .collect()
    }
}

/// Greedy colouring of `G*` along the stratified order, ties by vertex id,
/// smallest admissible colour first.
pub fn greedy_class_coloring(g: &Graph, aux: &AuxiliaryGraph, sel: &[Selection]) -> ClassColoring {
    let n = g.n();
    let strata: Vec<u8> = sel.iter().map(stratum).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (strata[v], v));
    let mut colour = vec![usize::MAX; n];
    let mut max_forbidden = [0; 3];
    let mut k = 0;
    for &v in &order {
        let mut used: Vec<usize> = aux
            .graph
            .neighbors(v)
            .iter()
            .map(|&u| colour[u])
            .filter(|&c| c != usize::MAX)
            .collect();
        used.sort_unstable();
        used.dedup();
        let s = strata[v] as usize;
        max_forbidden[s] = max_forbidden[s].max(used.len());
        let c = (0..).find(|c| used.binary_search(c).is_err()).expect("free colour");
        colour[v] = c;
        k = k.max(c + 1);
    }
    let mut classes = vec![VertexSet::new(); k];
    for v in 0..n {
        classes[colour[v]].insert(v);
    }
    ClassColoring {
        colour,
        classes,
        order,
        max_forbidden,
    }
}

/// What a vertex of `G(X)` stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Vertex { id: usize },
    /// All vertices carrying `label` in the selections of the class.
    Label { label: u8, members: VertexSet },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGraph {
    pub class: VertexSet,
    pub graph: Graph,
    pub origin: Vec<Origin>,
    /// Image of every original vertex, `None` for the class itself and for
    /// the deleted neighbours.
    pub image: Vec<Option<usize>>,
    /// Neighbours of the class outside every selection; coloured after the fact.
    pub deleted: VertexSet,
    pub w1: Option<usize>,
    pub w2: Option<usize>,
}

/// Contracts the selections of `x` in `X` by label, deletes `X` and the
/// remaining neighbours of `X`, and merges equal labels.
pub fn build_class_graph(g: &Graph, sel: &[Selection], class_index: usize, x: &VertexSet) -> Result<ClassGraph> {
    let n = g.n();
    g.check_set(x)?;
    let invalid = |reason: String| Error::ClassInvalid { class: class_index, reason };
    if !g.is_independent(x) {
        return Err(invalid("class is not independent in G".into()));
    }
    let mut label = vec![0u8; n];
    let mut owner = vec![usize::MAX; n];
    for xv in x.iter() {
        let s = &sel[xv];
        for v in s.all().iter() {
            if owner[v] != usize::MAX {
                return Err(invalid(format!("vertex {v} lies in S({}) and S({xv})", owner[v])));
            }
            owner[v] = xv;
            label[v] = s.label_of(v).expect("member");
        }
    }
    // no edge between the selections of different members
    for (a, b) in g.edges() {
        if label[a] != 0 && label[b] != 0 && owner[a] != owner[b] {
            return Err(invalid(format!("edge {a}-{b} joins S({}) and S({})", owner[a], owner[b])));
        }
        if label[a] != 0 && label[a] == label[b] {
            return Err(invalid(format!("edge {a}-{b} inside one label class")));
        }
    }
    let deleted: VertexSet = x
        .iter()
        .flat_map(|xv| g.neighbors(xv).iter().copied())
        .filter(|&v| label[v] == 0)
        .collect();
    let mut image = vec![None; n];
    let mut origin = Vec::new();
    let mut members = [VertexSet::new(), VertexSet::new()];
    for v in 0..n {
        if x.contains(v) || deleted.contains(v) {
            continue;
        }
        if label[v] != 0 {
            members[label[v] as usize - 1].insert(v);
            continue;
        }
        image[v] = Some(origin.len());
        origin.push(Origin::Vertex { id: v });
    }
    let mut w = [None, None];
    for (i, m) in members.iter().enumerate() {
        if m.is_empty() {
            continue;
        }
        w[i] = Some(origin.len());
        for v in m.iter() {
            image[v] = Some(origin.len());
        }
        origin.push(Origin::Label { label: i as u8 + 1, members: m.clone() });
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .filter_map(|(a, b)| match (image[a], image[b]) {
            (Some(p), Some(q)) if p != q => Some((p.min(q), p.max(q))),
            _ => None,
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::from_edges(origin.len(), &edges)?;
    let cg = ClassGraph {
        class: x.clone(),
        graph,
        origin,
        image,
        deleted,
        w1: w[0],
        w2: w[1],
    };
    if let Some(v) = (0..cg.graph.n()).find(|&v| Some(v) != cg.w1 && Some(v) != cg.w2 && cg.graph.degree(v) > 4) {
        return Err(invalid(format!("class-graph vertex {v} has degree above 4")));
    }
    Ok(cg)
}

/// Colours `w1`, `w2` first and then everything else greedily; at most five
/// colours are needed because the other vertices have degree at most 4.
pub fn greedy_five(cg: &ClassGraph) -> Vec<usize> {
    let g = &cg.graph;
    let mut order: Vec<usize> = cg.w1.into_iter().chain(cg.w2).collect();
    order.extend((0..g.n()).filter(|v| Some(*v) != cg.w1 && Some(*v) != cg.w2));
    let mut colour = vec![usize::MAX; g.n()];
    for v in order {
        let used: Vec<usize> = g.neighbors(v).iter().map(|&u| colour[u]).collect();
        colour[v] = (0..).find(|c| !used.contains(c)).expect("free colour");
    }
    colour
}

/// Proper 4-colouring of `G(X)`; failures carry a vertex-critical
/// subgraph and whether its low vertices form a Gallai forest.
pub fn four_color_class_graph(cg: &ClassGraph, class_index: usize) -> Result<Vec<usize>> {
    let five = greedy_five(cg);
    if five.iter().any(|&c| c >= 5) {
        return Err(Error::Stage {
            stage: "four-color",
            message: format!("greedy used more than five colours on class {class_index}"),
        });
    }
    let mut budget = Budget::from_env("class graph colouring");
    if let Some(c) = k_coloring(&cg.graph, 4, &mut budget)? {
        debug_assert!(is_proper_coloring(&cg.graph, &c));
        return Ok(c);
    }
    let critical = critical_subgraph(&cg.graph, 4)?.unwrap_or_default();
    let (h, _) = cg.graph.induced(&critical);
    let low: VertexSet = (0..h.n()).filter(|&v| h.degree(v) == 4).collect();
    let gallai_forest = is_gallai_forest(&h.induced(&low).0);
    Err(Error::NotFourColorable {
        class: class_index,
        critical: critical.iter().map(|v| cg.representative(v)).collect(),
        gallai_forest,
    })
}

/// Colours of `G - X` read back from a colouring of `G(X)`: label members
/// take the colour of their merged vertex and deleted neighbours take the
/// smallest colour free among their already coloured neighbours. Class
/// vertices stay `usize::MAX`.
pub fn lift_class_coloring(g: &Graph, cg: &ClassGraph, c: &[usize]) -> Result<Vec<usize>> {
    let n = g.n();
    let mut local = vec![usize::MAX; n];
    for (slot, img) in local.iter_mut().zip(&cg.image) {
        if let Some(p) = *img {
            *slot = c[p];
        }
    }
    for v in cg.deleted.iter() {
        let used: Vec<usize> = g.neighbors(v).iter().map(|&u| local[u]).collect();
        local[v] = (0..4)
            .find(|c| !used.contains(c))
            .ok_or_else(|| Error::AssemblyConflict(format!("deleted vertex {v} sees all four colours")))?;
    }
    Ok(local)
}

/// Direct search for a proper 4-colouring of `G - X` in which every
/// neighbourhood of a class vertex shows at most two colours. This is what
/// the class graph construction is for; it is used when that construction
/// fails and the class has to be split.
pub fn constrained_four_coloring(g: &Graph, x: &VertexSet, budget: &mut Budget) -> Result<Option<Vec<usize>>> {
    struct State<'a> {
        g: &'a Graph,
        x: &'a VertexSet,
        colour: Vec<usize>,
        seen: Vec<u8>,
    }

    fn allowed(st: &State, v: usize, c: usize) -> bool {
        st.g.neighbors(v).iter().all(|&u| {
            if st.x.contains(u) {
                (st.seen[u] | 1 << c).count_ones() <= 2
            } else {
                st.colour[u] != c
            }
        })
    }

    fn go(st: &mut State, left: usize, max_used: usize, budget: &mut Budget) -> Result<bool> {
        budget.tick()?;
        if left == 0 {
            return Ok(true);
        }
        let n = st.g.n();
        let options = |st: &State, v: usize| (0..4).filter(|&c| allowed(st, v, c)).count();
        let v = (0..n)
            .filter(|&v| !st.x.contains(v) && st.colour[v] == usize::MAX)
            .min_by_key(|&v| (options(st, v), std::cmp::Reverse(st.g.degree(v)), v))
            .expect("uncoloured vertex");
        for c in 0..4.min(max_used + 1) {
            if !allowed(st, v, c) {
                continue;
            }
            st.colour[v] = c;
            let saved: Vec<(usize, u8)> = st.g.neighbors(v).iter().filter(|&&u| st.x.contains(u)).map(|&u| (u, st.seen[u])).collect();
            for &(u, _) in &saved {
                st.seen[u] |= 1 << c;
            }
            if go(st, left - 1, max_used.max(c + 1), budget)? {
                return Ok(true);
            }
            for (u, m) in saved {
                st.seen[u] = m;
            }
            st.colour[v] = usize::MAX;
        }
        Ok(false)
    }

    g.check_set(x)?;
    let mut st = State {
        g,
        x,
        colour: vec![usize::MAX; g.n()],
        seen: vec![0; g.n()],
    };
    let left = g.n() - x.len();
    Ok(go(&mut st, left, 0, budget)?.then_some(st.colour))
}

impl ClassGraph {
    /// An original vertex standing behind a class-graph vertex.
    pub fn representative(&self, v: usize) -> usize {
        match &self.origin[v] {
            Origin::Vertex { id } => *id,
            Origin::Label { members, .. } => members.first().expect("non-empty label class"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::neighborhoods::{build_auxiliary, Mode};
    use super::super::selection::select_all;
    use super::*;
    use crate::graph::{make_cube, make_cycle};

    #[test]
    fn empty_class() {
        let c5 = make_cycle(5).unwrap();
        let sel = select_all(&c5, true).unwrap();
        let cg = build_class_graph(&c5, &sel, 0, &VertexSet::new()).unwrap();
        assert_eq!(cg.graph, c5);
        assert!(cg.w1.is_none());
        let c = four_color_class_graph(&cg, 0).unwrap();
        assert!(is_proper_coloring(&c5, &c));
    }

    #[test]
    fn single_pair() {
        let q3 = make_cube();
        let sel = select_all(&q3, true).unwrap();
        let cg = build_class_graph(&q3, &sel, 0, &VertexSet::from([0])).unwrap();
        // the pair merges, the third neighbour and 0 disappear
        assert_eq!(cg.graph.n(), 8 - 3);
        assert!(cg.w1.is_some() && cg.w2.is_none());
        assert_eq!(cg.deleted.len(), 1);
    }

    #[test]
    fn edgeless_star_is_one_class() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let sel = select_all(&g, true).unwrap();
        let aux = build_auxiliary(&g, &sel, Mode::Pattern).unwrap();
        let cc = greedy_class_coloring(&g, &aux, &sel);
        assert_eq!(cc.k(), 2);
        let single = Graph::empty(1);
        let sel = select_all(&single, true).unwrap();
        let aux = build_auxiliary(&single, &sel, Mode::Pattern).unwrap();
        assert_eq!(greedy_class_coloring(&single, &aux, &sel).k(), 1);
    }

    #[test]
    fn constrained_search() {
        let q3 = make_cube();
        let mut b = Budget::new(1_000_000, "test");
        let x = VertexSet::from([0, 7]);
        let c = constrained_four_coloring(&q3, &x, &mut b).unwrap().unwrap();
        for v in x.iter() {
            let seen: VertexSet = q3.neighbors(v).iter().map(|&u| c[u]).collect();
            assert!(seen.len() <= 2);
        }
        // the centre of a wheel on C5 sees three colours on any proper colouring
        let w5 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 2), (5, 3), (5, 4)]).unwrap();
        assert!(constrained_four_coloring(&w5, &VertexSet::from([5]), &mut b).unwrap().is_none());
    }
}
