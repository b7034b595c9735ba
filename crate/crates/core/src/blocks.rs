//! Blocks, Gallai trees and clique graphs.

use serde::{Deserialize, Serialize};

use crate::cliques::k_cliques;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
}

/// Biconnected decomposition (Hopcroft–Tarjan with an edge stack).
/// Isolated vertices form single-vertex blocks.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out: Vec<VertexSet> = Vec::new();
    let mut is_cut = vec![false; n];

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            out.push(VertexSet::from(vec![root]));
            continue;
        }
        let mut root_children = 0;
        // frames: (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&(v, parent, idx)) = stack.last() {
            if idx < g.degree(v) {
                let w = g.neighbors(v)[idx];
                stack.last_mut().expect("frame").2 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != root {
                            is_cut[p] = true;
                        }
                        let mut block = VertexSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    out.sort();
    BlockDecomposition {
        blocks: out,
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
    }
}

fn block_is_gallai(g: &Graph, b: &VertexSet) -> bool {
    if g.is_clique(b) {
        return true;
    }
    let (h, _) = g.induced(b);
    h.n() % 2 == 1 && h.n() >= 3 && h.edge_count() == h.n() && (0..h.n()).all(|v| h.degree(v) == 2)
}

/// True iff every block is complete or an odd cycle.
pub fn is_gallai_tree(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(blocks(g).blocks.iter().all(|b| block_is_gallai(g, b)))
}

/// True iff every component is a Gallai tree.
pub fn is_gallai_forest(g: &Graph) -> bool {
    blocks(g).blocks.iter().all(|b| block_is_gallai(g, b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueComponent {
    pub vertices: VertexSet,
    pub edges: Vec<(usize, usize)>,
}

/// Components of the graph formed by the edges lying in some `K_k`.
pub fn clique_graph_components(g: &Graph, k: usize) -> Result<Vec<CliqueComponent>> {
    if k < 3 {
        return Err(Error::SizeOutOfRange(format!("clique size {k} < 3")));
    }
    let n = g.n();
    let mut keep = vec![Vec::new(); n];
    for c in k_cliques(g, k)? {
        let vs: Vec<usize> = bits(c).collect();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                keep[a].push(b);
                keep[b].push(a);
            }
        }
    }
    for l in keep.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }
    let h = Graph::from_adjacency(keep)?;
    let mut comps: Vec<CliqueComponent> = h
        .components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let edges = h.edges().filter(|&(a, _)| c.contains(a)).collect();
            CliqueComponent { vertices: c, edges }
        })
        .collect();
    comps.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_path, strong_product};

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn bowtie_blocks() {
        let d = blocks(&bowtie());
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cut_vertices, VertexSet::from([2]));
    }

    #[test]
    fn path_blocks_are_edges() {
        let d = blocks(&make_path(4).unwrap());
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.cut_vertices, VertexSet::from([1, 2]));
    }

    #[test]
    fn gallai() {
        assert!(is_gallai_tree(&make_complete(4).unwrap()).unwrap());
        assert!(!is_gallai_tree(&make_cycle(4).unwrap()).unwrap());
        assert!(is_gallai_tree(&make_cycle(5).unwrap()).unwrap());
        assert!(is_gallai_tree(&bowtie()).unwrap());
        let two = make_complete(2).unwrap().disjoint_union(&make_complete(2).unwrap());
        assert_eq!(is_gallai_tree(&two), Err(Error::NotConnected));
        assert!(is_gallai_forest(&two));
    }

    #[test]
    fn clique_components() {
        assert!(clique_graph_components(&make_cycle(5).unwrap(), 4).unwrap().is_empty());
        let p3k2 = strong_product(&make_path(3).unwrap(), &make_complete(2).unwrap());
        let c = clique_graph_components(&p3k2, 4).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].vertices.len(), 6);
        let k4 = make_complete(4).unwrap();
        assert_eq!(clique_graph_components(&k4.disjoint_union(&k4), 4).unwrap().len(), 2);
    }
}
