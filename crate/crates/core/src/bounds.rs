//! Closed-form bounds, the maximum-degree classifier, two-vertex cuts and
//! the gap sweep.

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cliques::{clique_number, max_clique};
use crate::error::{Error, Result};
use crate::fractional::chi_f_exact;
use crate::graph::{cycle_power, make_complete, make_cycle, strong_product, Graph, VertexSet};
use crate::io::{from_graph6_line, to_graph6};
use crate::iso::find_isomorphism;
use crate::rational::{self, Rational};

/// `(ω + Δ + 1) / 2`.
pub fn molloy_reed_bound(g: &Graph) -> Result<Rational> {
    let w = clique_number(g)?;
    Ok(Rational::new((w + g.delta() + 1).into(), 2.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    Complete,
    OddCycle,
    CliqueEqualsDelta,
    C8Squared,
    C5BoxK2,
    BelowDelta,
}

impl Category {
    pub fn reaches_delta(self) -> bool {
        self != Category::BelowDelta
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Every vertex pair is adjacent.
    Complete { n: usize },
    /// Connected, 2-regular, odd order.
    OddCycle { length: usize },
    /// A clique of size Δ.
    Clique { vertices: VertexSet },
    /// Map from the input's vertices onto the reference graph's.
    Isomorphism { map: Vec<usize> },
    /// Structural tests all failed; in strict mode the exact value is added.
    Fractional {
        #[serde(with = "rational::serde_opt", default, skip_serializing_if = "Option::is_none")]
        chi_f: Option<Rational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub category: Category,
    pub delta: usize,
    pub evidence: Evidence,
}

/// Classifies a connected graph by the structural tests, in listing order.
/// With `strict`, also solves the LP and checks `category == BelowDelta`
/// exactly when `χ_f < Δ`.
pub fn classify(g: &Graph, strict: bool) -> Result<ClassificationVerdict> {
    if !g.is_connected() || g.n() == 0 {
        return Err(Error::NotConnected);
    }
    let n = g.n();
    let delta = g.delta();
    let verdict = |category, evidence| ClassificationVerdict { category, delta, evidence };
    let structural = if g.edge_count() == n * (n - 1) / 2 {
        Some(verdict(Category::Complete, Evidence::Complete { n }))
    } else if n % 2 == 1 && g.is_regular() && delta == 2 {
        Some(verdict(Category::OddCycle, Evidence::OddCycle { length: n }))
    } else {
        let clique = max_clique(g)?;
        if clique.len() == delta {
            Some(verdict(Category::CliqueEqualsDelta, Evidence::Clique { vertices: clique }))
        } else if n == 8 && delta == 4 && g.is_regular() {
            find_isomorphism(g, &cycle_power(8, 2)?)?
                .map(|map| verdict(Category::C8Squared, Evidence::Isomorphism { map }))
        } else if n == 10 && delta == 5 && g.is_regular() {
            let c5k2 = strong_product(&make_cycle(5)?, &make_complete(2)?);
            find_isomorphism(g, &c5k2)?.map(|map| verdict(Category::C5BoxK2, Evidence::Isomorphism { map }))
        } else {
            None
        }
    };
    let chi_f = if strict { Some(chi_f_exact(g)?.0) } else { None };
    if let Some(x) = &chi_f {
        let reaches = *x >= Rational::from_integer(delta.into());
        let claimed = structural.as_ref().is_some_and(|v| v.category.reaches_delta());
        if reaches != claimed {
            return Err(Error::Stage {
                stage: "classify",
                message: format!(
                    "structural category disagrees with the LP: chi_f = {}, Δ = {delta}",
                    rational::format(x)
                ),
            });
        }
    }
    Ok(structural.unwrap_or_else(|| verdict(Category::BelowDelta, Evidence::Fractional { chi_f })))
}

/// Every pair `{u, v}` whose removal disconnects `g`.
pub fn find_two_cuts(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    if n < 4 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.is_connected_without(&[u, v]) {
                out.push((u, v));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut2Bound {
    /// True when `uv` is an edge and the value equals `χ_f(g)`.
    pub exact: bool,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    /// The side graphs evaluated, by role, with their values.
    pub parts: Vec<Cut2Part>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut2Part {
    pub role: String,
    pub graph6: String,
    #[serde(with = "rational::serde_str")]
    pub chi_f: Rational,
}

/// Splits `g` at the separator `{u, v}`. `side` lists the vertices of the
/// first side other than `u, v`; it must be a non-empty union of components
/// of `g - {u, v}` that leaves something for the second side. `None` takes
/// the component holding the smallest remaining vertex.
pub fn cut2_sides(g: &Graph, u: usize, v: usize, side: Option<&VertexSet>) -> Result<(Graph, Graph, usize, usize)> {
    g.check(u)?;
    g.check(v)?;
    if u == v || g.is_connected_without(&[u, v]) {
        return Err(Error::NotASeparator { u, v });
    }
    let rest: VertexSet = (0..g.n()).filter(|&x| x != u && x != v).collect();
    let (h, ids) = g.induced(&rest);
    let comps: Vec<VertexSet> = h
        .components()
        .into_iter()
        .map(|c| c.iter().map(|i| ids[i]).collect())
        .collect();
    let s1: VertexSet = match side {
        Some(s) => {
            g.check_set(s)?;
            if s.contains(u) || s.contains(v) {
                return Err(Error::InputViolation("side must not contain the cut vertices".into()));
            }
            for c in &comps {
                let inside = c.iter().filter(|&x| s.contains(x)).count();
                if inside != 0 && inside != c.len() {
                    return Err(Error::InputViolation("side splits a component of g - {u, v}".into()));
                }
            }
            s.clone()
        }
        None => comps[0].clone(),
    };
    let s2: VertexSet = rest.iter().filter(|&x| !s1.contains(x)).collect();
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::InputViolation("both sides must be non-empty".into()));
    }
    let closed = |s: &VertexSet| -> VertexSet {
        let mut c = s.clone();
        c.insert(u);
        c.insert(v);
        c
    };
    let (g1, _) = g.induced(&closed(&s1));
    let (g2, m2) = g.induced(&closed(&s2));
    let pos = |m: &[usize], x: usize| m.iter().position(|&y| y == x).expect("cut vertex kept");
    Ok((g1, g2, pos(&m2, u), pos(&m2, v)))
}

/// Upper bound on `χ_f(g)` from a two-vertex cut.
pub fn cut2_upper_bound(g: &Graph, u: usize, v: usize, side: Option<&VertexSet>) -> Result<Cut2Bound> {
    let (g1, g2, a, b) = cut2_sides(g, u, v, side)?;
    let mut parts = Vec::new();
    let mut eval = |role: &str, h: &Graph| -> Result<Rational> {
        let x = chi_f_exact(h)?.0;
        parts.push(Cut2Part {
            role: role.into(),
            graph6: to_graph6(h),
            chi_f: x.clone(),
        });
        Ok(x)
    };
    let exact = g.has_edge(u, v);
    let value = if exact {
        eval("G1", &g1)?.max(eval("G2", &g2)?)
    } else {
        let x1 = eval("G1", &g1)?;
        let x2 = eval("G2+uv", &g2.with_edge(a, b)?)?;
        let x3 = eval("G2/uv", &g2.contract_pair(a, b)?.graph)?;
        x1.max(x2).max(x3)
    };
    Ok(Cut2Bound { exact, value, parts })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRecord {
    pub graph6: String,
    pub delta: usize,
    pub omega: usize,
    #[serde(with = "rational::serde_str")]
    pub chi_f: Rational,
    #[serde(with = "rational::serde_str")]
    pub gap: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub k: usize,
    /// Records with `Δ = k` outside the exceptional categories.
    pub count: usize,
    #[serde(with = "rational::serde_opt", default)]
    pub min_gap: Option<Rational>,
    pub argmin_graph6: Option<String>,
    pub scanned: usize,
    pub resumed: usize,
    pub errors: Vec<SweepError>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepError {
    pub line: usize,
    pub message: String,
}

enum LineResult {
    Skip,
    Record(GapRecord),
    Fail(SweepError),
}

fn sweep_one(line_no: usize, line: &str, k: usize) -> LineResult {
    let g = match from_graph6_line(line, line_no) {
        Ok(g) => g,
        Err(e) => {
            return LineResult::Fail(SweepError {
                line: line_no,
                message: e.to_string(),
            })
        }
    };
    if g.delta() != k {
        return LineResult::Skip;
    }
    let run = || -> Result<Option<GapRecord>> {
        let verdict = classify(&g, false)?;
        if verdict.category != Category::BelowDelta {
            return Ok(None);
        }
        let chi_f = chi_f_exact(&g)?.0;
        let gap = Rational::from_integer(k.into()) - &chi_f;
        Ok(Some(GapRecord {
            graph6: line.to_string(),
            delta: k,
            omega: clique_number(&g)?,
            chi_f,
            gap,
        }))
    };
    match run() {
        Ok(Some(r)) => LineResult::Record(r),
        Ok(None) => LineResult::Skip,
        Err(e) => LineResult::Fail(SweepError {
            line: line_no,
            message: e.to_string(),
        }),
    }
}

fn parse_checkpoint_line(l: &str) -> Option<GapRecord> {
    let mut it = l.split('\t');
    let g6 = it.next()?;
    let chi_f = rational::parse(it.next()?)?;
    let gap = rational::parse(it.next()?)?;
    let g = crate::io::from_graph6(g6).ok()?;
    Some(GapRecord {
        graph6: g6.to_string(),
        delta: g.delta(),
        omega: clique_number(&g).ok()?,
        chi_f,
        gap,
    })
}

/// Computes exact gaps `Δ - χ_f` for the graphs of maximum degree `k`
/// outside the exceptional categories. Lines are graph6 strings; blank
/// lines are ignored and malformed ones reported without stopping. With a
/// checkpoint, existing records are reused and new ones appended as
/// `graph6 TAB chi_f TAB gap`.
pub fn gap_sweep<'a>(
    lines: impl Iterator<Item = &'a str>,
    k: usize,
    checkpoint: Option<&Path>,
) -> Result<(Vec<GapRecord>, SweepSummary)> {
    let mut records: Vec<GapRecord> = Vec::new();
    let mut done: HashSet<String> = HashSet::new();
    let mut writer = None;
    if let Some(path) = checkpoint {
        if path.exists() {
            for l in std::fs::read_to_string(path)?.lines() {
                if let Some(r) = parse_checkpoint_line(l) {
                    if r.delta == k && done.insert(r.graph6.clone()) {
                        records.push(r);
                    }
                }
            }
        }
        writer = Some(std::fs::OpenOptions::new().create(true).append(true).open(path)?);
    }
    let resumed = records.len();
    let mut errors = Vec::new();
    let mut scanned = 0;
    let numbered: Vec<(usize, &str)> = lines
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    for chunk in numbered.chunks(4096) {
        let results: Vec<LineResult> = chunk
            .par_iter()
            .map(|&(i, l)| {
                let l = l.strip_prefix(">>graph6<<").unwrap_or(l);
                if done.contains(l) {
                    LineResult::Skip
                } else {
                    sweep_one(i, l, k)
                }
            })
            .collect();
        scanned += chunk.len();
        for r in results {
            match r {
                LineResult::Skip => {}
                LineResult::Fail(e) => errors.push(e),
                LineResult::Record(rec) => {
                    if let Some(w) = writer.as_mut() {
                        writeln!(
                            w,
                            "{}\t{}\t{}",
                            rec.graph6,
                            rational::format(&rec.chi_f),
                            rational::format(&rec.gap)
                        )?;
                    }
                    done.insert(rec.graph6.clone());
                    records.push(rec);
                }
            }
        }
    }
    let argmin = records
        .iter()
        .min_by(|a, b| a.gap.cmp(&b.gap).then_with(|| a.graph6.cmp(&b.graph6)));
    let summary = SweepSummary {
        k,
        count: records.len(),
        min_gap: argmin.map(|r| r.gap.clone()),
        argmin_graph6: argmin.map(|r| r.graph6.clone()),
        scanned,
        resumed,
        errors,
    };
    debug_assert!(records.iter().all(|r| r.gap > Rational::zero()));
    Ok((records, summary))
}
