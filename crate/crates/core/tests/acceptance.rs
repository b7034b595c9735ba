//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::time::Instant;

use fracbrooks::bounds::{classify, cut2_upper_bound, gap_sweep, molloy_reed_bound};
use fracbrooks::cliques::clique_number;
use fracbrooks::coloring::{chromatic_number, find_ab_coloring, verify_fold_coloring};
use fracbrooks::delta4::{run_pipeline, PipelineOptions, MAX_CLASSES};
use fracbrooks::delta4::neighborhoods::{CAP_N123, CAP_N4, CAP_N5, CAP_N7, CAP_UNION};
use fracbrooks::enumerate::connected_graphs_upto;
use fracbrooks::fractional::chi_f_exact;
use fracbrooks::graph::{cycle_power, make_complete, make_cycle, strong_product};
use fracbrooks::hitting::{hitting_independent_set, verify_hitting, Hitting, HittingFamily};
use fracbrooks::io::{read_graph6_lines, to_graph6};
use fracbrooks::patterns::pattern;
use fracbrooks::random::{random_connected, random_two_cut, rng, RandomSpec};
use fracbrooks::rational::{format, int, ratio};
use fracbrooks::{Graph, Rational};
use rand::Rng;

type Outcome = Result<String, String>;

fn chi_f(g: &Graph) -> Result<Rational, String> {
    chi_f_exact(g).map(|(v, _)| v).map_err(|e| format!("{}: {e}", to_graph6(g)))
}

fn expect(what: &str, got: Rational, want: Rational) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {}, expected {}", format(&got), format(&want)))
    }
}

/// All connected graphs on at most `n` vertices, passed through a graph6
/// stream the way an external generator's output would be.
fn corpus(n: usize) -> Vec<Vec<Graph>> {
    connected_graphs_upto(n)
        .expect("enumeration")
        .into_iter()
        .map(|level| {
            let text: String = level.iter().map(|g| to_graph6(g) + "\n").collect();
            read_graph6_lines(&text)
                .into_iter()
                .map(|r| r.expect("round trip").1)
                .collect()
        })
        .collect()
}

fn named_values() -> Outcome {
    for n in 1..=8 {
        expect(&format!("K{n}"), chi_f(&make_complete(n).unwrap())?, int(n as i64))?;
    }
    for k in 1..=5 {
        let c = make_cycle(2 * k + 1).unwrap();
        expect(&format!("C{}", 2 * k + 1), chi_f(&c)?, int(2) + ratio(1, k as i64))?;
    }
    expect("C8^2", chi_f(&cycle_power(8, 2).unwrap())?, int(4))?;
    let k2 = make_complete(2).unwrap();
    for l in 2..=4 {
        let g = strong_product(&make_cycle(2 * l + 1).unwrap(), &k2);
        expect(&format!("C{} x K2", 2 * l + 1), chi_f(&g)?, int(4) + ratio(2, l as i64))?;
    }
    Ok("K1..K8, C3..C11, C8^2, C5xK2, C7xK2, C9xK2 exact".into())
}

fn classification(graphs: &[Vec<Graph>]) -> Outcome {
    let mut total = 0;
    let mut reaching = 0;
    for g in graphs.iter().flatten() {
        let verdict = classify(g, false).map_err(|e| format!("{}: {e}", to_graph6(g)))?;
        let reaches = chi_f(g)? >= int(g.delta() as i64);
        if reaches != verdict.category.reaches_delta() {
            return Err(format!("{}: {:?} but chi_f >= Δ is {reaches}", to_graph6(g), verdict.category));
        }
        total += 1;
        reaching += usize::from(reaches);
    }
    Ok(format!("{total} graphs, {reaching} with χ_f ≥ Δ, zero exceptions"))
}

fn delta4_bound(graphs: &[Vec<Graph>]) -> Outcome {
    let bound = int(4) - ratio(2, 67);
    let c8sq = cycle_power(8, 2).unwrap();
    let stream: String = graphs
        .iter()
        .flatten()
        .filter(|g| g.delta() == 4)
        .map(|g| to_graph6(g) + "\n")
        .collect();
    let (records, summary) = gap_sweep(stream.lines(), 4, None).map_err(|e| e.to_string())?;
    if !summary.errors.is_empty() {
        return Err(format!("sweep errors: {:?}", summary.errors));
    }
    // the sweep's category filter must agree with the plain hypotheses
    let direct = graphs
        .iter()
        .flatten()
        .filter(|g| g.delta() == 4 && clique_number(g).unwrap() <= 3 && **g != c8sq)
        .filter(|g| !fracbrooks::iso::is_isomorphic(g, &c8sq).unwrap())
        .count();
    if direct != records.len() {
        return Err(format!("{} sweep records, {direct} graphs meet the hypotheses", records.len()));
    }
    if let Some(r) = records.iter().find(|r| r.omega > 3 || r.chi_f > bound) {
        return Err(format!("{}: chi_f = {}", r.graph6, format(&r.chi_f)));
    }
    Ok(format!(
        "{} graphs, all χ_f ≤ 266/67; min gap 4 - χ_f = {} at {}",
        records.len(),
        summary.min_gap.as_ref().map(format).unwrap_or_default(),
        summary.argmin_graph6.unwrap_or_default()
    ))
}

fn molloy_reed(graphs: &[Vec<Graph>]) -> Outcome {
    let mut tight = 0;
    let mut count = 0;
    for g in graphs.iter().take(8).flatten() {
        let b = molloy_reed_bound(g).map_err(|e| e.to_string())?;
        let x = chi_f(g)?;
        if x > b {
            return Err(format!("{}: chi_f = {} > {}", to_graph6(g), format(&x), format(&b)));
        }
        tight += usize::from(x == b);
        count += 1;
    }
    Ok(format!("{count} graphs, bound attained on {tight}"))
}

fn hitting_sweeps(graphs: &[Vec<Graph>]) -> Outcome {
    let families = [("K4", HittingFamily::k4()), ("K4+C8^2", HittingFamily::k4_c8sq())];
    let mut count = 0;
    for g in graphs.iter().flatten() {
        if g.delta() > 5 || clique_number(g).unwrap() > 4 {
            continue;
        }
        count += 1;
        for (name, fam) in &families {
            match hitting_independent_set(g, fam, false).map_err(|e| e.to_string())? {
                Hitting::Found { set } if verify_hitting(g, fam, &set).unwrap() => {}
                other => return Err(format!("{} with {name}: {other:?}", to_graph6(g))),
            }
        }
    }
    let c5k2 = strong_product(&make_cycle(5).unwrap(), &make_complete(2).unwrap());
    let exception = hitting_independent_set(&c5k2, &HittingFamily::k4(), false).map_err(|e| e.to_string())?;
    if exception.set().is_some() {
        return Err("C5 x K2 unexpectedly has an independent set meeting every K4".into());
    }
    Ok(format!("{count} graphs, both families hit; C5xK2 fails with K4 as expected"))
}

fn pipeline_runs() -> Outcome {
    let mut r = rng(20_240_601);
    let mut ks = Vec::new();
    let mut max_union = 0;
    let mut skipped = 0;
    while ks.len() < 200 {
        let i = ks.len();
        let n = r.gen_range(4..=24);
        let g = random_connected(&mut r, RandomSpec::delta4(n)).map_err(|e| e.to_string())?;
        // C8^2 is the one valid-looking input the pipeline must refuse
        if fracbrooks::delta4::validate_input(&g).is_err() {
            skipped += 1;
            continue;
        }
        let out = run_pipeline(&g, PipelineOptions::default()).map_err(|e| format!("run {i}, {}: {e}", to_graph6(&g)))?;
        let rep = &out.report;
        verify_fold_coloring(&g, &out.coloring).map_err(|v| format!("run {i}: {v}"))?;
        let k = rep.k;
        if out.coloring.a != 4 * k || out.coloring.b != k + 1 || rep.ratio != ratio(4 * k as i64, k as i64 + 1) {
            return Err(format!("run {i}: {}:{} with k = {k}", out.coloring.a, out.coloring.b));
        }
        let caps = &rep.caps;
        let within = caps.max_n123 <= CAP_N123
            && caps.max_n4 <= CAP_N4
            && caps.max_n5 <= CAP_N5
            && caps.max_n7 <= CAP_N7
            && caps.max_union <= CAP_UNION;
        if !caps.violations.is_empty() || !within {
            return Err(format!("run {i}: cap violations {:?}", caps.violations));
        }
        max_union = max_union.max(caps.max_union);
        ks.push(k);
    }
    let over = ks.iter().filter(|&&k| k > MAX_CLASSES).count();
    Ok(format!(
        "{} runs verified ({skipped} rejected inputs redrawn), k in {}..={}, {over} above {MAX_CLASSES}, max |N¹∪…∪N⁷| = {max_union}",
        ks.len(),
        ks.iter().min().unwrap(),
        ks.iter().max().unwrap()
    ))
}

fn catalog_colorings() -> Outcome {
    let keys = ["H2", "H7", "H10", "G4", "G5", "G6", "H4plus", "H4contract", "H6plus", "H6contract"];
    for key in keys {
        let g = pattern(key).map_err(|e| e.to_string())?.graph;
        let c = find_ab_coloring(&g, 11, 3)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{key}: no 11:3 colouring"))?;
        verify_fold_coloring(&g, &c).map_err(|v| format!("{key}: {v}"))?;
    }
    Ok(format!("{} graphs 11:3-coloured and verified", keys.len()))
}

fn duality() -> Outcome {
    let mut r = rng(8);
    for i in 0..500 {
        let n = r.gen_range(1..=12);
        let spec = RandomSpec {
            n,
            max_degree: n,
            k4_free: false,
            density: r.gen_range(0..=100),
        };
        let mut g = random_connected(&mut r, spec).map_err(|e| e.to_string())?;
        if i % 5 == 0 && n <= 9 {
            let extra = random_connected(&mut r, RandomSpec { n: 12 - n, max_degree: 12 - n, ..spec }).map_err(|e| e.to_string())?;
            g = g.disjoint_union(&extra);
        }
        let (value, sol) = chi_f_exact(&g).map_err(|e| e.to_string())?;
        sol.verify(&g).map_err(|e| format!("{}: {e}", to_graph6(&g)))?;
        let primal: Rational = sol.weights.iter().sum();
        let dual: Rational = sol.dual.as_ref().ok_or("no dual")?.iter().sum();
        if primal != value || dual != value {
            return Err(format!("{}: primal {} dual {}", to_graph6(&g), format(&primal), format(&dual)));
        }
        let omega = int(clique_number(&g).unwrap() as i64);
        let chi = int(chromatic_number(&g).unwrap() as i64);
        if value < omega || value > chi {
            return Err(format!("{}: {} outside [ω, χ]", to_graph6(&g), format(&value)));
        }
    }
    Ok("primal = dual = χ_f, ω ≤ χ_f ≤ χ".into())
}

fn cut2() -> Outcome {
    let mut r = rng(99);
    let (mut equal, mut strict) = (0, 0);
    for i in 0..100 {
        let n1 = r.gen_range(3..=8);
        let n2 = r.gen_range(3..=16 - n1);
        let edge = i % 2 == 0;
        let (g, u, v) = random_two_cut(&mut r, n1, n2, edge).map_err(|e| e.to_string())?;
        let bound = cut2_upper_bound(&g, u, v, None).map_err(|e| e.to_string())?;
        let x = chi_f(&g)?;
        if edge && bound.value != x {
            return Err(format!("{}: edge case {} ≠ {}", to_graph6(&g), format(&bound.value), format(&x)));
        }
        if bound.value < x {
            return Err(format!("{}: bound {} < {}", to_graph6(&g), format(&bound.value), format(&x)));
        }
        if edge {
            equal += 1;
        } else if bound.value > x {
            strict += 1;
        }
    }
    Ok(format!("{equal} edge cases exact; 50 non-edge bounds valid ({strict} strict)"))
}

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let start = Instant::now();
    let graphs = corpus(9);
    eprintln!("corpus: {} connected graphs, n ≤ 9, in {:.1?}", graphs.iter().map(Vec::len).sum::<usize>(), start.elapsed());
    let criteria: Vec<Criterion<'_>> = vec![
        ("named values", Box::new(named_values)),
        ("classification ⇔ χ_f ≥ Δ, n ≤ 9", Box::new(|| classification(&graphs))),
        ("Δ = 4 bound 266/67, n ≤ 9", Box::new(|| delta4_bound(&graphs))),
        ("(ω + Δ + 1)/2 ≥ χ_f, n ≤ 8", Box::new(|| molloy_reed(&graphs))),
        ("hitting sweeps Δ ≤ 5, ω ≤ 4, n ≤ 9", Box::new(|| hitting_sweeps(&graphs))),
        ("Δ = 4 pipeline, 200 random graphs", Box::new(pipeline_runs)),
        ("11:3 catalogue colourings", Box::new(catalog_colorings)),
        ("LP duality, 500 random graphs", Box::new(duality)),
        ("two-cut bounds, 100 instances", Box::new(cut2)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] {}. {name}: {detail} ({:.1?})", i + 1, t.elapsed());
    }
    println!("acceptance: {}/{} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
