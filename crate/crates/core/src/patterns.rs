//! Named small graphs: forbidden patterns for the degree-four pipeline, the
//! configurations that arise around a vertex whose neighbourhood has
//! independence number two, and the component shapes of the `K4` clique
//! graph at maximum degree five.
//!
//! Configurations `H1`..`H9` live on the vertices `x a b c d y z w`: `x` is
//! adjacent to `a b c d`, and `y z w` is a triangle. `H10` adds `u v p q r`.

use crate::error::{Error, Result};
use crate::graph::{cycle_power, make_complete, make_cycle, strong_product, Graph, VertexSet};

#[derive(Debug, Clone)]
pub struct Pattern {
    pub key: &'static str,
    pub description: &'static str,
    pub labels: Vec<String>,
    pub graph: Graph,
}

fn named(labels: &str, edges: &[&str]) -> (Vec<String>, Graph) {
    let names: Vec<char> = labels.chars().collect();
    let id = |c: char| names.iter().position(|&x| x == c).expect("known label");
    let e: Vec<(usize, usize)> = edges
        .iter()
        .map(|s| {
            let mut it = s.chars();
            let a = it.next().expect("two labels");
            let b = it.next().expect("two labels");
            (id(a), id(b))
        })
        .collect();
    (
        names.iter().map(|c| c.to_string()).collect(),
        Graph::from_edges(names.len(), &e).expect("catalog graphs are simple"),
    )
}

const STAR: [&str; 7] = ["xa", "xb", "xc", "xd", "yz", "zw", "yw"];

fn h(rest: &[&str]) -> (Vec<String>, Graph) {
    let mut e: Vec<&str> = STAR.to_vec();
    e.extend_from_slice(rest);
    named("xabcdyzw", &e)
}

fn h10() -> (Vec<String>, Graph) {
    named(
        "xabcduvpqwr",
        &[
            "xa", "xb", "xc", "xd", "ab", "cd", "ua", "ub", "vc", "vd", "pa", "pb", "qc", "qd", "uv", "uw", "vw",
            "pq", "pr", "qr", "wr",
        ],
    )
}

/// Contracts the labelled vertices `set` of `(labels, g)` into one vertex
/// labelled `fat`.
fn contract_labels(base: (Vec<String>, Graph), set: &str, fat: &str) -> (Vec<String>, Graph) {
    let (labels, g) = base;
    let s: VertexSet = set
        .chars()
        .map(|c| labels.iter().position(|l| *l == c.to_string()).expect("known label"))
        .collect();
    let con = g.contract(&s).expect("labels in range");
    let mut out = vec![String::new(); con.graph.n()];
    for (old, &new) in con.map.iter().enumerate() {
        if new != con.fat {
            out[new] = labels[old].clone();
        }
    }
    out[con.fat] = fat.to_string();
    (out, con.graph)
}

fn add(base: (Vec<String>, Graph), extra: &str, edges: &[&str]) -> (Vec<String>, Graph) {
    let (mut labels, g) = base;
    let n = g.n();
    labels.extend(extra.chars().map(|c| c.to_string()));
    let id = |c: char| labels.iter().position(|l| *l == c.to_string()).expect("known label");
    let mut e: Vec<(usize, usize)> = g.edges().collect();
    for s in edges {
        let mut it = s.chars();
        e.push((id(it.next().unwrap()), id(it.next().unwrap())));
    }
    let g = Graph::from_edges(n + extra.len(), &e).expect("simple");
    (labels, g)
}

fn h1() -> (Vec<String>, Graph) {
    h(&["ab", "ac", "aw", "bw", "bz", "cd", "cy", "dy", "dz"])
}
fn h2() -> (Vec<String>, Graph) {
    h(&["ab", "ac", "aw", "by", "bz", "cd", "cw", "dy", "dz"])
}
fn h3() -> (Vec<String>, Graph) {
    h(&["ab", "ac", "az", "bw", "by", "cd", "cz", "dy"])
}
fn h4() -> (Vec<String>, Graph) {
    h(&["ab", "ac", "az", "bw", "bz", "cd", "cy", "dy"])
}
fn h5() -> (Vec<String>, Graph) {
    h(&["ab", "ac", "aw", "by", "bz", "cd", "dy", "dz"])
}
fn h6() -> (Vec<String>, Graph) {
    h(&["ab", "ac", "aw", "bw", "by", "cd", "cz", "dy"])
}
fn h7() -> (Vec<String>, Graph) {
    h(&["ab", "aw", "az", "bw", "by", "cd", "cy", "cz"])
}
fn h8() -> (Vec<String>, Graph) {
    h(&["ab", "aw", "az", "bw", "cd", "cy", "cz", "dy"])
}
fn h9() -> (Vec<String>, Graph) {
    h(&["ab", "aw", "az", "bz", "cd", "cy", "dy"])
}

fn single(g: Graph) -> (Vec<String>, Graph) {
    ((0..g.n()).map(|v| v.to_string()).collect(), g)
}

fn join(a: &Graph, b: &Graph) -> Graph {
    let u = a.disjoint_union(b);
    let mut e: Vec<(usize, usize)> = u.edges().collect();
    for i in 0..a.n() {
        for j in 0..b.n() {
            e.push((i, a.n() + j));
        }
    }
    Graph::from_edges(u.n(), &e).expect("simple")
}

type Builder = fn() -> (Vec<String>, Graph);

const ENTRIES: &[(&str, &str, Builder)] = &[
    ("K5minus", "K5 with one edge removed", || {
        single(make_complete(5).unwrap().without_edge(3, 4))
    }),
    ("G0", "H10 with the non-edges {a,c} and {b,d} contracted", || {
        contract_labels(contract_labels(h10(), "ac", "s"), "bd", "t")
    }),
    ("H1", "configuration isomorphic to the square of C8", h1),
    ("H2", "4-regular configuration, 11:3-colourable", h2),
    ("H3", "configuration with degree-3 vertices d and w; adding dw gives H2", h3),
    ("H4", "configuration with degree-3 vertices d and w", h4),
    ("H5", "configuration with degree-3 vertices c and w", h5),
    ("H6", "configuration with degree-3 vertices d and z", h6),
    ("H7", "configuration where d is the only vertex of degree below 4", h7),
    ("H8", "configuration isomorphic to H4", h8),
    ("H9", "configuration with degree-3 vertices b and d", h9),
    ("H10", "11-vertex configuration whose contraction gives G0", h10),
    ("H4plus", "H4 plus a path d-u-v-w (G2 + uv for H4)", || {
        add(h4(), "uv", &["du", "wv", "uv"])
    }),
    ("H4contract", "H4 plus a vertex f adjacent to d and w (G2 / uv for H4)", || {
        add(h4(), "f", &["df", "wf"])
    }),
    ("H6plus", "H6 plus a path d-u-v-z (G2 + uv for H6)", || {
        add(h6(), "uv", &["du", "zv", "uv"])
    }),
    ("H6contract", "H6 plus a vertex f adjacent to d and z (G2 / uv for H6)", || {
        add(h6(), "f", &["df", "zf"])
    }),
    ("G4", "H9 with {b,c,w} contracted", || contract_labels(h9(), "bcw", "f")),
    ("G5", "H9 with {b,d,w} contracted", || contract_labels(h9(), "bdw", "f")),
    ("G6", "H9 plus a triangle u v p (b-u, w-v, c-p, d-p) with {b,w} contracted", || {
        contract_labels(add(h9(), "uvp", &["bu", "wv", "cp", "dp", "uv", "vp", "up"]), "bw", "f")
    }),
    ("C5xK2", "strong product of C5 and K2", || {
        single(strong_product(&make_cycle(5).unwrap(), &make_complete(2).unwrap()))
    }),
    ("C8sq", "square of the 8-cycle", || single(cycle_power(8, 2).unwrap())),
    ("CG-K4", "clique-graph component: a single K4", || single(make_complete(4).unwrap())),
    ("CG-K3+2K1", "clique-graph component: two K4 sharing a triangle", || {
        single(join(&make_complete(3).unwrap(), &Graph::empty(2)))
    }),
    ("CG-K3+3K1", "clique-graph component: three K4 sharing a triangle", || {
        single(join(&make_complete(3).unwrap(), &Graph::empty(3)))
    }),
    ("CG-K2+P4", "clique-graph component: three K4 sharing an edge along a path", || {
        single(join(&make_complete(2).unwrap(), &crate::graph::make_path(4).unwrap()))
    }),
    ("CG-K2+C4", "clique-graph component: four K4 sharing an edge around a 4-cycle", || {
        single(join(&make_complete(2).unwrap(), &make_cycle(4).unwrap()))
    }),
];

/// All catalogue keys in listing order.
pub fn keys() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.0).collect()
}

pub fn pattern(key: &str) -> Result<Pattern> {
    let (key, description, build) = ENTRIES
        .iter()
        .find(|e| e.0.eq_ignore_ascii_case(key))
        .ok_or_else(|| Error::NotFound(format!("no pattern `{key}`; available: {}", keys().join(", "))))?;
    let (labels, graph) = build();
    Ok(Pattern {
        key,
        description,
        labels,
        graph,
    })
}

pub fn catalog() -> Vec<Pattern> {
    keys().into_iter().map(|k| pattern(k).expect("listed key")).collect()
}

impl Pattern {
    /// Vertex id of a label.
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Edge-list text with a descriptive header.
    pub fn to_text(&self) -> String {
        let mut s = format!("# {}: {}\n# labels: {}\n", self.key, self.description, self.labels.join(" "));
        s.push_str(&crate::io::to_edge_list(&self.graph));
        s
    }
}

/// Catalogue consistency checks; returns the failed checks by name.
pub fn self_test() -> Vec<String> {
    let mut failed = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failed.push(name.to_string());
        }
    };
    let iso = |a: &Graph, b: &Graph| crate::iso::is_isomorphic(a, b).unwrap_or(false);
    let g = |k: &str| pattern(k).expect("listed").graph;
    let k5m = g("K5minus");
    let mut ds = k5m.degree_sequence();
    ds.sort_unstable();
    check("K5minus has 9 edges", k5m.edge_count() == 9);
    check("K5minus degrees 3,3,4,4,4", ds == vec![3, 3, 4, 4, 4]);
    check("H1 is isomorphic to C8^2", iso(&g("H1"), &cycle_power(8, 2).unwrap()));
    check("H1 is 4-regular", g("H1").is_regular() && g("H1").delta() == 4);
    check("H2 is 4-regular", g("H2").is_regular() && g("H2").delta() == 4);
    let h7 = pattern("H7").expect("listed");
    let d = h7.vertex("d").expect("label d");
    let low: Vec<usize> = (0..h7.graph.n()).filter(|&v| h7.graph.degree(v) < 4).collect();
    check("H7: d is the only vertex of degree below 4", low == vec![d]);
    check("H4 is isomorphic to H8", iso(&g("H4"), &g("H8")));
    check("H3 plus the edge dw is H2", {
        let p = pattern("H3").expect("listed");
        let d = p.vertex("d").unwrap();
        let w = p.vertex("w").unwrap();
        iso(&p.graph.with_edge(d, w).unwrap(), &g("H2"))
    });
    for k in keys() {
        let p = g(k);
        check(&format!("{k} is connected"), p.is_connected());
        if k.starts_with('H') {
            check(&format!("{k} has maximum degree at most 4"), p.delta() <= 4);
            check(
                &format!("{k} is K4-free"),
                crate::cliques::clique_number(&p).map(|w| w <= 3).unwrap_or(false),
            );
        }
    }
    failed
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_test_passes() {
        assert_eq!(self_test(), Vec::<String>::new());
    }

    #[test]
    fn sizes() {
        assert_eq!(pattern("G0").unwrap().graph.n(), 9);
        assert_eq!(pattern("G0").unwrap().graph.edge_count(), 18);
        assert_eq!(pattern("H10").unwrap().graph.n(), 11);
        assert_eq!(pattern("G6").unwrap().graph.n(), 10);
        assert_eq!(pattern("h1").unwrap().key, "H1");
        assert!(matches!(pattern("nope"), Err(Error::NotFound(_))));
    }

    #[test]
    fn text_round_trip() {
        for p in catalog() {
            let text = p.to_text();
            assert_eq!(crate::io::from_edge_list(&text).unwrap(), p.graph, "{}", p.key);
        }
    }
}
