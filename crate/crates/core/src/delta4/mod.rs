//! Constructive fold colourings for connected `K4`-free graphs of maximum
//! degree at most 4.
//!
//! Every vertex `x` picks sets `S(x)` in its neighbourhood. Vertices whose
//! selections could interfere are joined in an auxiliary graph `G*`, whose
//! greedy colour classes `X` are handled one at a time: the selections in
//! `X` are contracted by label, `X` is deleted, and the resulting graph
//! `G(X)` is 4-coloured. Each class contributes a private block of four
//! colours, giving a `4k : (k+1)` colouring for `k` classes.

pub mod classes;
pub mod neighborhoods;
pub mod selection;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::cliques::max_clique;
use crate::coloring::{verify_fold_coloring, FoldColoring};
use crate::error::{Error, Result};
use crate::fractional::chi_f_exact;
use crate::graph::{cycle_power, Graph, VertexSet};
use crate::iso::find_isomorphism;
use crate::rational::{self, Rational};

pub use classes::{
    build_class_graph, constrained_four_coloring, four_color_class_graph, greedy_class_coloring, lift_class_coloring,
    ClassColoring, ClassGraph,
};
pub use neighborhoods::{build_auxiliary, neighborhood, AuxiliaryGraph, CapCounts, Mode};
pub use selection::{select_all, select_s, Selection, SelectionKind};

/// Largest class count for which `4k/(k+1) ≤ 4 - 2/67`.
pub const MAX_CLASSES: usize = 133;

/// Rejects inputs outside the pipeline's hypotheses, with a witness.
pub fn validate_input(g: &Graph) -> Result<()> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 4) {
        return Err(Error::Rejected {
            reason: format!("vertex {v} has degree {}", g.degree(v)),
            witness: vec![v],
        });
    }
    let clique = max_clique(g)?;
    if clique.len() >= 4 {
        return Err(Error::Rejected {
            reason: "graph contains K4".into(),
            witness: clique.iter().collect(),
        });
    }
    if g.n() == 8 && g.is_regular() && g.delta() == 4 {
        if let Some(map) = find_isomorphism(g, &cycle_power(8, 2)?)? {
            return Err(Error::Rejected {
                reason: "graph is isomorphic to C8^2".into(),
                witness: map,
            });
        }
    }
    Ok(())
}

/// Gives each vertex its colour in every block where it is outside the
/// class, and two colours unused by its neighbours where it is inside.
/// `locals[i]` colours `G - X_i` with `0..4` and leaves `X_i` at `usize::MAX`.
pub fn assemble_fold_coloring(g: &Graph, classes: &[VertexSet], locals: &[Vec<usize>]) -> Result<FoldColoring> {
    let n = g.n();
    let k = classes.len();
    let mut assignment: Vec<Vec<usize>> = vec![Vec::with_capacity(k + 1); n];
    for (i, (x, local)) in classes.iter().zip(locals).enumerate() {
        for v in 0..n {
            if x.contains(v) {
                let used: Vec<usize> = g.neighbors(v).iter().map(|&u| local[u]).collect();
                let free: Vec<usize> = (0..4).filter(|c| !used.contains(c)).take(2).collect();
                if free.len() < 2 {
                    return Err(Error::AssemblyConflict(format!(
                        "class vertex {v} of class {i} has fewer than two free colours"
                    )));
                }
                assignment[v].extend(free.iter().map(|c| 4 * i + c));
            } else if local[v] < 4 {
                assignment[v].push(4 * i + local[v]);
            } else {
                return Err(Error::AssemblyConflict(format!("vertex {v} uncoloured in class {i}")));
            }
        }
    }
    let coloring = FoldColoring::new(4 * k, k + 1, assignment)?;
    verify_fold_coloring(g, &coloring).map_err(|v| Error::AssemblyConflict(v.to_string()))?;
    Ok(coloring)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub mode: Mode,
    /// Retry in conservative mode when a class fails in pattern mode.
    pub fallback: bool,
    /// Fail when a double pair cannot avoid the forbidden patterns.
    pub strict_selection: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            mode: Mode::Pattern,
            fallback: true,
            strict_selection: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct SelectionSummary {
    pub non_edge_pair: usize,
    pub independent_triple: usize,
    pub double_pair: usize,
    pub small_degree: usize,
    /// Double pairs kept although every pairing contracts to a forbidden pattern.
    pub not_pattern_free: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct CapSummary {
    /// Vertices checked (those with a double pair).
    pub checked: usize,
    pub max_n123: usize,
    pub max_n4: usize,
    pub max_n5: usize,
    pub max_n7: usize,
    pub max_union: usize,
    pub violations: Vec<String>,
}

impl CapSummary {
    fn of(aux: &AuxiliaryGraph) -> Self {
        let m = |f: fn(&CapCounts) -> usize| aux.caps.iter().map(f).max().unwrap_or(0);
        CapSummary {
            checked: aux.caps.len(),
            max_n123: m(|c| c.n123),
            max_n4: m(|c| c.n4),
            max_n5: m(|c| c.n5),
            max_n7: m(|c| c.n7),
            max_union: m(|c| c.union),
            violations: aux.cap_violations(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub n: usize,
    pub route: Route,
    /// The certificate is `4k:(k+1)`; on the construction route `k` is the
    /// number of classes.
    pub k: usize,
    /// Number of greedy classes of `G*` before any splitting.
    pub greedy_k: usize,
    pub a: usize,
    pub b: usize,
    #[serde(with = "rational::serde_str")]
    pub ratio: Rational,
    /// `k ≤ 133`, i.e. `ratio ≤ 4 - 2/67`.
    pub within_bound: bool,
    /// Mode that produced the certificate.
    pub mode: Mode,
    /// Why earlier attempts were abandoned, in order.
    pub fallbacks: Vec<String>,
    /// Greedy classes that had to be split.
    pub split_classes: Vec<usize>,
    pub selections: SelectionSummary,
    /// Caps measured on the pattern-mode relations.
    pub caps: CapSummary,
    pub aux_edges: usize,
    pub aux_edges_by_relation: BTreeMap<String, usize>,
    pub max_forbidden: [usize; 3],
    pub forbidden_violations: Vec<String>,
    pub class_sizes: Vec<usize>,
    /// Stage name to wall time in microseconds.
    pub timings_us: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Classes of `G*` and their class graphs.
    Construction,
    /// Some vertex fits no class at all, so the block construction cannot
    /// succeed; the exact fractional colouring is rescaled instead.
    Direct,
}

/// Exact LP colouring rewritten as `4k:(k+1)`; there are no classes.
fn direct_coloring(g: &Graph) -> Result<(FoldColoring, ClassStage)> {
    let (_, sol) = chi_f_exact(g)?;
    let (c, _) = FoldColoring::from_fractional(g.n(), &sol)?
        .to_four_k_form()
        .ok_or_else(|| Error::AssemblyConflict("fractional chromatic number is not below 4".into()))?;
    verify_fold_coloring(g, &c).map_err(|v| Error::AssemblyConflict(v.to_string()))?;
    Ok((
        c,
        ClassStage {
            classes: Vec::new(),
            locals: Vec::new(),
            split: Vec::new(),
        },
    ))
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub coloring: FoldColoring,
    pub report: PipelineReport,
    pub selections: Vec<Selection>,
    pub classes: Vec<VertexSet>,
}

struct Timer(BTreeMap<String, u64>, Instant);

impl Timer {
    fn new() -> Self {
        Timer(BTreeMap::new(), Instant::now())
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        *self.0.entry(stage.to_string()).or_insert(0) += (now - self.1).as_micros() as u64;
        self.1 = now;
    }
}

fn is_class_failure(e: &Error) -> bool {
    matches!(e, Error::ClassInvalid { .. } | Error::NotFourColorable { .. })
}

fn class_local(g: &Graph, sel: &[Selection], i: usize, x: &VertexSet) -> Result<Vec<usize>> {
    let cg = build_class_graph(g, sel, i, x)?;
    let c = four_color_class_graph(&cg, i)?;
    lift_class_coloring(g, &cg, &c)
}

/// First-fit split of a failing class, each part checked by the direct
/// constrained search.
fn split_class(g: &Graph, x: &VertexSet, order: &[usize]) -> Result<Vec<(VertexSet, Vec<usize>)>> {
    let mut budget = Budget::from_env("class splitting");
    let mut parts: Vec<(VertexSet, Vec<usize>)> = Vec::new();
    for &v in order.iter().filter(|&&v| x.contains(v)) {
        let mut placed = false;
        for (part, local) in parts.iter_mut() {
            let mut trial = part.clone();
            trial.insert(v);
            if let Some(c) = constrained_four_coloring(g, &trial, &mut budget)? {
                *part = trial;
                *local = c;
                placed = true;
                break;
            }
        }
        if !placed {
            let single = VertexSet::from([v]);
            let c = constrained_four_coloring(g, &single, &mut budget)?.ok_or(Error::NoFeasibleClass { vertex: v })?;
            parts.push((single, c));
        }
    }
    Ok(parts)
}

struct ClassStage {
    classes: Vec<VertexSet>,
    locals: Vec<Vec<usize>>,
    split: Vec<usize>,
}

fn color_classes(g: &Graph, sel: &[Selection], cc: &ClassColoring, split: bool) -> Result<ClassStage> {
    let results: Vec<Result<Vec<usize>>> = cc
        .classes
        .par_iter()
        .enumerate()
        .map(|(i, x)| class_local(g, sel, i, x))
        .collect();
    let mut stage = ClassStage {
        classes: Vec::new(),
        locals: Vec::new(),
        split: Vec::new(),
    };
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(local) => {
                stage.classes.push(cc.classes[i].clone());
                stage.locals.push(local);
            }
            Err(e) if split && is_class_failure(&e) => {
                stage.split.push(i);
                for (part, local) in split_class(g, &cc.classes[i], &cc.order)? {
                    stage.classes.push(part);
                    stage.locals.push(local);
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(stage)
}

/// Selections, `G*`, its greedy classes, one 4-colouring per class graph,
/// then assembly. A class failure in pattern mode retries in conservative
/// mode, and a failure there splits the offending classes. The certificate
/// is verified before it is returned.
pub fn run_pipeline(g: &Graph, opts: PipelineOptions) -> Result<PipelineOutput> {
    let mut timer = Timer::new();
    validate_input(g)?;
    timer.lap("validate");
    let sel = select_all(g, opts.strict_selection)?;
    timer.lap("selection");
    let pattern_aux = build_auxiliary(g, &sel, Mode::Pattern)?;
    let caps = CapSummary::of(&pattern_aux);
    timer.lap("auxiliary");

    let mut attempts = vec![(opts.mode, false)];
    if opts.fallback {
        if opts.mode == Mode::Pattern {
            attempts.push((Mode::Conservative, false));
        }
        attempts.push((Mode::Conservative, true));
    }
    let mut fallbacks = Vec::new();
    let mut outcome = None;
    for (t, &(mode, split)) in attempts.iter().enumerate() {
        let aux = if mode == Mode::Pattern {
            pattern_aux.clone()
        } else {
            let a = build_auxiliary(g, &sel, mode)?;
            timer.lap("auxiliary");
            a
        };
        let cc = greedy_class_coloring(g, &aux, &sel);
        timer.lap("greedy");
        let r = color_classes(g, &sel, &cc, split);
        timer.lap("classes");
        match r {
            Ok(stage) => {
                outcome = Some((mode, aux, cc, Some(stage)));
                break;
            }
            Err(e @ Error::NoFeasibleClass { .. }) if opts.fallback => {
                fallbacks.push(format!("{mode:?} mode: {e}"));
                outcome = Some((mode, aux, cc, None));
                break;
            }
            Err(e) if is_class_failure(&e) && t + 1 < attempts.len() => fallbacks.push(format!("{mode:?} mode: {e}")),
            Err(e) => return Err(e),
        }
    }
    let (mode, aux, cc, stage) = outcome.expect("last attempt returns or errors");
    let (route, coloring) = match stage {
        Some(stage) => {
            let c = assemble_fold_coloring(g, &stage.classes, &stage.locals)?;
            (Route::Construction, (c, stage))
        }
        None => (Route::Direct, direct_coloring(g)?),
    };
    let (coloring, stage) = coloring;
    timer.lap("assembly");

    let mut summary = SelectionSummary::default();
    for s in &sel {
        match s.kind {
            SelectionKind::NonEdgePair => summary.non_edge_pair += 1,
            SelectionKind::IndependentTriple => summary.independent_triple += 1,
            SelectionKind::DoublePair => summary.double_pair += 1,
            SelectionKind::SmallDegree => summary.small_degree += 1,
        }
        if !s.pattern_free {
            summary.not_pattern_free.push(s.vertex);
        }
    }
    let k = coloring.b - 1;
    let report = PipelineReport {
        n: g.n(),
        route,
        k,
        greedy_k: cc.k(),
        a: coloring.a,
        b: coloring.b,
        ratio: coloring.ratio(),
        within_bound: k <= MAX_CLASSES,
        mode,
        fallbacks,
        split_classes: stage.split,
        selections: summary,
        caps,
        aux_edges: aux.graph.edge_count(),
        aux_edges_by_relation: aux
            .edges_by_relation()
            .into_iter()
            .map(|(j, c)| (format!("N{j}"), c))
            .collect(),
        max_forbidden: cc.max_forbidden,
        forbidden_violations: cc.forbidden_violations(),
        class_sizes: stage.classes.iter().map(VertexSet::len).collect(),
        timings_us: timer.0,
    };
    Ok(PipelineOutput {
        coloring,
        report,
        selections: sel,
        classes: stage.classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cube, make_cycle};
    use crate::random::{random_connected, rng, RandomSpec};

    #[test]
    fn cube() {
        let out = run_pipeline(&make_cube(), PipelineOptions::default()).unwrap();
        assert_eq!(verify_fold_coloring(&make_cube(), &out.coloring), Ok(()));
        let k = out.report.k;
        assert_eq!(out.report.ratio, Rational::new((4 * k).into(), (k + 1).into()));
        assert!(out.report.fallbacks.is_empty());
    }

    #[test]
    fn rejections() {
        let c82 = cycle_power(8, 2).unwrap();
        assert!(matches!(
            run_pipeline(&c82, PipelineOptions::default()),
            Err(Error::Rejected { witness, .. }) if witness.len() == 8
        ));
        let k4 = make_complete(4).unwrap();
        assert!(matches!(run_pipeline(&k4, PipelineOptions::default()), Err(Error::Rejected { .. })));
        let star = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert!(matches!(
            run_pipeline(&star, PipelineOptions::default()),
            Err(Error::Rejected { witness, .. }) if witness == vec![0]
        ));
        assert_eq!(
            run_pipeline(&Graph::empty(2), PipelineOptions::default()).err(),
            Some(Error::NotConnected)
        );
    }

    #[test]
    fn single_vertex() {
        let out = run_pipeline(&Graph::empty(1), PipelineOptions::default()).unwrap();
        assert_eq!((out.coloring.a, out.coloring.b), (4, 2));
    }

    #[test]
    fn cycle_and_random() {
        let c5 = make_cycle(5).unwrap();
        run_pipeline(&c5, PipelineOptions::default()).unwrap();
        let mut r = rng(1);
        for n in [10, 16, 20, 24] {
            let g = random_connected(&mut r, RandomSpec::delta4(n)).unwrap();
            for mode in [Mode::Pattern, Mode::Conservative] {
                let out = run_pipeline(&g, PipelineOptions { mode, ..Default::default() }).unwrap();
                assert_eq!(verify_fold_coloring(&g, &out.coloring), Ok(()));
                assert_eq!(out.coloring.a, 4 * out.report.k);
                assert_eq!(out.coloring.b, out.report.k + 1);
            }
        }
    }
}
