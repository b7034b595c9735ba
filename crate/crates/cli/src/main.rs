//! `fracbrooks`: exact fractional colouring from the command line.
//!
//! Exit status: 0 on success, 1 on a domain failure (nothing found, a
//! certificate that does not verify, a rejected input), 2 on usage or parse
//! errors, 3 when a search budget runs out.

mod source;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use fracbrooks::bounds::{classify, cut2_upper_bound, find_two_cuts, gap_sweep, molloy_reed_bound};
use fracbrooks::certificate::{FoldCertificate, FractionalCertificate};
use fracbrooks::cliques::clique_number;
use fracbrooks::coloring::{chi_b, find_ab_coloring};
use fracbrooks::delta4::{run_pipeline, Mode, PipelineOptions};
use fracbrooks::enumerate::connected_graphs;
use fracbrooks::fractional::chi_f_exact;
use fracbrooks::hitting::{
    check_lemma_hypotheses, hitting_independent_set, stable_set_meeting_max_cliques, Hitting, HittingFamily,
    HittingLemma,
};
use fracbrooks::io::to_graph6;
use fracbrooks::patterns::{keys, pattern};
use fracbrooks::random::{random_connected, rng, RandomSpec};
use fracbrooks::rational::format as fmt_rational;
use fracbrooks::{Error, Graph, VertexSet};

#[derive(Parser)]
#[command(name = "fracbrooks", version, about = "Exact fractional colouring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the graph comes from. Without `--graph` or `--file`, stdin is read.
#[derive(Args, Debug, Clone, Default)]
struct GraphArgs {
    /// Constructor (Kn:5, Cn:7, C8^2, CnPow:8,2, C5xK2, StrongProd:<g>,<g>),
    /// catalogue key, or graph6 string.
    #[arg(short, long, conflicts_with = "file")]
    graph: Option<String>,
    /// File holding one graph, as graph6 or edge-list text.
    #[arg(short, long)]
    file: Option<PathBuf>,
}

impl GraphArgs {
    fn given(&self) -> bool {
        self.graph.is_some() || self.file.is_some()
    }

    fn load(&self) -> Result<Graph, Error> {
        if let Some(spec) = &self.graph {
            return source::parse_spec(spec);
        }
        let text = match &self.file {
            Some(path) => std::fs::read_to_string(path)?,
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            }
        };
        source::parse_text(&text)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact fractional chromatic number.
    ChiF {
        #[command(flatten)]
        input: GraphArgs,
        /// Write the primal and dual certificate as JSON.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Print a JSON object instead of the bare rational.
        #[arg(long)]
        json: bool,
    },
    /// Which of the categories with χ_f ≥ Δ a connected graph falls into.
    Classify {
        #[command(flatten)]
        input: GraphArgs,
        /// Cross-check the verdict against the exact LP.
        #[arg(long)]
        strict: bool,
    },
    /// Find an a:b colouring; without --a, the least a for the given b.
    Color {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(short)]
        a: Option<usize>,
        #[arg(short, default_value_t = 1)]
        b: usize,
        /// Also write the certificate to this file.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Check a fold or fractional certificate. The graph defaults to the
    /// one embedded in the certificate.
    Verify {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Compare χ_f with (ω + Δ + 1) / 2.
    Bound {
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Bound χ_f through a two-vertex cut; without --u/--v, list the cuts.
    Cut2 {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long, requires = "v")]
        u: Option<usize>,
        #[arg(long, requires = "u")]
        v: Option<usize>,
        /// Vertices of the first side besides u and v, comma separated.
        #[arg(long, value_delimiter = ',', requires = "u")]
        side: Option<Vec<usize>>,
    },
    /// Independent set meeting every copy of the given patterns.
    Hitting {
        #[command(flatten)]
        input: GraphArgs,
        /// Catalogue keys or K<n>, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["lemma", "max_cliques"])]
        family: Option<Vec<String>>,
        /// Use the family of a named lemma and report its hypotheses
        /// (k4, k4-c8sq, k5-c5k2).
        #[arg(long)]
        lemma: Option<HittingLemma>,
        /// Meet every maximum clique instead.
        #[arg(long)]
        max_cliques: bool,
        /// Extend the set to a maximal independent set.
        #[arg(long)]
        maximal: bool,
    },
    /// Fold colouring of a connected K4-free graph with maximum degree 4.
    Delta4 {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long, default_value = "pattern")]
        mode: Mode,
        /// Fail instead of retrying in conservative mode.
        #[arg(long)]
        no_fallback: bool,
        /// Reject double pairs that cannot avoid the forbidden patterns.
        #[arg(long)]
        strict_selection: bool,
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
        #[arg(long)]
        emit_report: Option<PathBuf>,
        /// Keep stage timings in the report (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Exact gaps Δ - χ_f over a graph6 stream, on a worker pool.
    Sweep {
        /// Maximum degree of the graphs to measure.
        #[arg(short, long)]
        k: usize,
        /// graph6 file; stdin when absent.
        #[arg(long, conflicts_with = "enumerate")]
        input: Option<PathBuf>,
        /// Sweep all connected graphs on exactly this many vertices.
        #[arg(long)]
        enumerate: Option<usize>,
        /// Append results here and skip graphs already recorded.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Include every record, not only the summary.
        #[arg(long)]
        records: bool,
    },
    /// Emit the named configuration graphs as edge-list text.
    Catalog {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        list: bool,
        /// Write every entry to <dir>/<key>.txt.
        #[arg(long, conflicts_with_all = ["name", "list"])]
        out_dir: Option<PathBuf>,
    },
    /// Print graph6 lines: random connected graphs, or with --all every
    /// connected graph of the order.
    Generate {
        #[arg(short, long)]
        n: usize,
        #[arg(long, conflicts_with_all = ["count", "seed", "max_degree", "k4_free", "density"])]
        all: bool,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        k4_free: bool,
        /// Chance of each extra edge, in percent.
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(0..=100))]
        density: u32,
    },
}

/// What a command prints, and with which status.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn json<T: Serialize>(value: &T) -> Self {
        Outcome::ok(to_json(value))
    }

    fn failure<T: Serialize>(value: &T) -> Self {
        Outcome {
            text: to_json(value),
            code: 1,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable output")
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    std::fs::write(path, to_json(value) + "\n")?;
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::Parse { .. }
        | Error::InvalidGraph(_)
        | Error::SizeOutOfRange(_)
        | Error::VertexOutOfRange { .. }
        | Error::TooLarge { .. }
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::SizeOutOfRange(_) => "size_out_of_range",
        Error::VertexOutOfRange { .. } => "vertex_out_of_range",
        Error::InvalidGraph(_) => "invalid_graph",
        Error::TooLarge { .. } => "too_large",
        Error::ResourceLimit { .. } => "resource_limit",
        Error::NotConnected => "not_connected",
        Error::NotFound(_) => "not_found",
        Error::HypothesisViolation { .. } => "hypothesis_violation",
        Error::NotVertexTransitive => "not_vertex_transitive",
        Error::NotASeparator { .. } => "not_a_separator",
        Error::Parse { .. } => "parse",
        Error::InputViolation(_) => "input_violation",
        Error::Stage { .. } => "stage",
        Error::NoValidSelection { .. } => "no_valid_selection",
        Error::ClassInvalid { .. } => "class_invalid",
        Error::NotFourColorable { .. } => "not_four_colorable",
        Error::NoFeasibleClass { .. } => "no_feasible_class",
        Error::AssemblyConflict(_) => "assembly_conflict",
        Error::Rejected { .. } => "rejected",
        Error::Io(_) => "io",
    };
    let mut v = json!({ "error": kind, "message": e.to_string() });
    let extra = match e {
        Error::Parse { line, offset, .. } => json!({ "line": line, "offset": offset }),
        Error::ResourceLimit { what, budget, partial } => json!({
            "what": what,
            "budget": budget,
            "lower": partial.lower.as_ref().map(fmt_rational),
            "upper": partial.upper.as_ref().map(fmt_rational),
        }),
        Error::Rejected { witness, .. } => json!({ "witness": witness }),
        Error::NotFourColorable { class, critical, gallai_forest } => {
            json!({ "class": class, "critical": critical, "gallai_forest": gallai_forest })
        }
        Error::NoFeasibleClass { vertex } | Error::NoValidSelection { vertex, .. } => json!({ "vertex": vertex }),
        Error::NotASeparator { u, v } => json!({ "u": u, "v": v }),
        _ => json!({}),
    };
    if let (Some(obj), Value::Object(extra)) = (v.as_object_mut(), extra) {
        obj.extend(extra);
    }
    v
}

fn chi_f_cmd(input: &GraphArgs, certificate: Option<&Path>, json: bool) -> Result<Outcome, Error> {
    let g = input.load()?;
    let (value, sol) = chi_f_exact(&g)?;
    if let Some(path) = certificate {
        write_json(path, &FractionalCertificate::new(&g, &sol)?)?;
    }
    Ok(if json {
        Outcome::json(&json!({ "graph6": to_graph6(&g), "n": g.n(), "chi_f": fmt_rational(&value) }))
    } else {
        Outcome::ok(fmt_rational(&value))
    })
}

fn color_cmd(input: &GraphArgs, a: Option<usize>, b: usize, certificate: Option<&Path>) -> Result<Outcome, Error> {
    let g = input.load()?;
    let a = match a {
        Some(a) => a,
        None => chi_b(&g, b)?,
    };
    match find_ab_coloring(&g, a, b)? {
        Some(c) => {
            let cert = FoldCertificate::new(&g, &c);
            if let Some(path) = certificate {
                write_json(path, &cert)?;
            }
            Ok(Outcome::json(&cert))
        }
        None => Ok(Outcome::failure(&json!({
            "error": "not_found",
            "message": format!("no {a}:{b} colouring exists"),
            "a": a,
            "b": b,
        }))),
    }
}

fn verify_cmd(input: &GraphArgs, certificate: &Path) -> Result<Outcome, Error> {
    let text = std::fs::read_to_string(certificate)?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        offset: e.column(),
        message: e.to_string(),
    })?;
    let bad_schema = |e: serde_json::Error| Error::Parse {
        line: 1,
        offset: 0,
        message: format!("certificate schema: {e}"),
    };
    if raw.get("assignment").is_some() {
        let cert: FoldCertificate = serde_json::from_value(raw).map_err(bad_schema)?;
        let g = if input.given() { input.load()? } else { cert.graph()? };
        return Ok(match cert.verify(Some(&g))? {
            Ok(()) => Outcome::json(&json!({ "valid": true, "kind": "fold", "a": cert.a, "b": cert.b })),
            Err(violation) => Outcome::failure(&json!({ "valid": false, "kind": "fold", "violation": violation })),
        });
    }
    let cert: FractionalCertificate = serde_json::from_value(raw).map_err(bad_schema)?;
    let g = if input.given() {
        input.load()?
    } else {
        let g6 = cert.graph.as_deref().ok_or_else(|| {
            Error::InputViolation("certificate embeds no graph; pass --graph or --file".into())
        })?;
        fracbrooks::io::from_graph6(g6)?
    };
    Ok(match cert.verify(&g) {
        Ok(()) => Outcome::json(&json!({ "valid": true, "kind": "fractional", "chi_f": fmt_rational(&cert.chi_f) })),
        Err(reason) => Outcome::failure(&json!({ "valid": false, "kind": "fractional", "reason": reason })),
    })
}

fn bound_cmd(input: &GraphArgs) -> Result<Outcome, Error> {
    let g = input.load()?;
    let chi_f = chi_f_exact(&g)?.0;
    let mr = molloy_reed_bound(&g)?;
    Ok(Outcome::json(&json!({
        "n": g.n(),
        "delta": g.delta(),
        "omega": clique_number(&g)?,
        "chi_f": fmt_rational(&chi_f),
        "bound": fmt_rational(&mr),
        "holds": chi_f <= mr,
    })))
}

fn cut2_cmd(input: &GraphArgs, uv: Option<(usize, usize)>, side: Option<Vec<usize>>) -> Result<Outcome, Error> {
    let g = input.load()?;
    let Some((u, v)) = uv else {
        let cuts: Vec<[usize; 2]> = find_two_cuts(&g).into_iter().map(|(u, v)| [u, v]).collect();
        return Ok(Outcome::json(&json!({ "two_cuts": cuts })));
    };
    let side: Option<VertexSet> = side.map(|s| s.into_iter().collect());
    Ok(Outcome::json(&cut2_upper_bound(&g, u, v, side.as_ref())?))
}

fn hitting_cmd(
    input: &GraphArgs,
    family: Option<Vec<String>>,
    lemma: Option<HittingLemma>,
    max_cliques: bool,
    maximal: bool,
) -> Result<Outcome, Error> {
    let g = input.load()?;
    let (names, result, hypotheses) = if max_cliques {
        (vec!["maximum cliques".to_string()], stable_set_meeting_max_cliques(&g, maximal)?, None)
    } else {
        let (fam, report) = match (family, lemma) {
            (Some(names), _) => {
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                (HittingFamily::from_names(&refs)?, None)
            }
            (None, Some(l)) => (l.family(), Some(check_lemma_hypotheses(&g, l)?)),
            (None, None) => (HittingFamily::k4(), None),
        };
        let names = fam.members().iter().map(|m| m.name.clone()).collect();
        (names, hitting_independent_set(&g, &fam, maximal)?, report)
    };
    let found = matches!(result, Hitting::Found { .. });
    let out = json!({ "family": names, "result": result, "hypotheses": hypotheses });
    Ok(if found { Outcome::json(&out) } else { Outcome::failure(&out) })
}

struct Delta4Args<'a> {
    input: &'a GraphArgs,
    opts: PipelineOptions,
    emit_certificate: Option<&'a Path>,
    emit_report: Option<&'a Path>,
    timings: bool,
}

fn delta4_cmd(args: Delta4Args<'_>) -> Result<Outcome, Error> {
    let g = args.input.load()?;
    let mut out = run_pipeline(&g, args.opts)?;
    if !args.timings {
        out.report.timings_us.clear();
    }
    if let Some(path) = args.emit_certificate {
        write_json(path, &FoldCertificate::new(&g, &out.coloring))?;
    }
    if let Some(path) = args.emit_report {
        write_json(path, &out.report)?;
    }
    Ok(Outcome::json(&out.report))
}

struct SweepArgs {
    k: usize,
    input: Option<PathBuf>,
    enumerate: Option<usize>,
    checkpoint: Option<PathBuf>,
    threads: usize,
    records: bool,
}

fn sweep_cmd(args: SweepArgs) -> Result<Outcome, Error> {
    let text = match (&args.enumerate, &args.input) {
        (Some(n), _) => connected_graphs(*n)?.iter().map(|g| to_graph6(g) + "\n").collect(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| Error::InputViolation(format!("worker pool: {e}")))?;
    let (records, summary) = pool.install(|| gap_sweep(text.lines(), args.k, args.checkpoint.as_deref()))?;
    Ok(if args.records {
        Outcome::json(&json!({ "summary": summary, "records": records }))
    } else {
        Outcome::json(&summary)
    })
}

fn catalog_cmd(name: Option<String>, list: bool, out_dir: Option<PathBuf>) -> Result<Outcome, Error> {
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(&dir)?;
        let mut written = Vec::new();
        for key in keys() {
            let path = dir.join(format!("{key}.txt"));
            std::fs::write(&path, pattern(key)?.to_text())?;
            written.push(path.display().to_string());
        }
        return Ok(Outcome::json(&json!({ "written": written })));
    }
    match name {
        Some(name) if !list => Ok(Outcome::ok(pattern(&name)?.to_text().trim_end().to_string())),
        _ => Ok(Outcome::json(&keys())),
    }
}

struct GenerateArgs {
    n: usize,
    all: bool,
    count: usize,
    seed: u64,
    max_degree: Option<usize>,
    k4_free: bool,
    density: u32,
}

fn generate_cmd(args: GenerateArgs) -> Result<Outcome, Error> {
    let graphs = if args.all {
        connected_graphs(args.n)?
    } else {
        let mut r = rng(args.seed);
        let spec = RandomSpec {
            n: args.n,
            max_degree: args.max_degree.unwrap_or(args.n.saturating_sub(1)),
            k4_free: args.k4_free,
            density: args.density,
        };
        (0..args.count).map(|_| random_connected(&mut r, spec)).collect::<Result<_, _>>()?
    };
    let lines: Vec<String> = graphs.iter().map(to_graph6).collect();
    Ok(Outcome::ok(lines.join("\n")))
}

fn dispatch(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::ChiF { input, certificate, json } => chi_f_cmd(&input, certificate.as_deref(), json),
        Command::Classify { input, strict } => Ok(Outcome::json(&classify(&input.load()?, strict)?)),
        Command::Color { input, a, b, certificate } => color_cmd(&input, a, b, certificate.as_deref()),
        Command::Verify { input, certificate } => verify_cmd(&input, &certificate),
        Command::Bound { input } => bound_cmd(&input),
        Command::Cut2 { input, u, v, side } => cut2_cmd(&input, u.zip(v), side),
        Command::Hitting {
            input,
            family,
            lemma,
            max_cliques,
            maximal,
        } => hitting_cmd(&input, family, lemma, max_cliques, maximal),
        Command::Delta4 {
            input,
            mode,
            no_fallback,
            strict_selection,
            emit_certificate,
            emit_report,
            timings,
        } => delta4_cmd(Delta4Args {
            input: &input,
            opts: PipelineOptions {
                mode,
                fallback: !no_fallback,
                strict_selection,
            },
            emit_certificate: emit_certificate.as_deref(),
            emit_report: emit_report.as_deref(),
            timings,
        }),
        Command::Sweep {
            k,
            input,
            enumerate,
            checkpoint,
            threads,
            records,
        } => sweep_cmd(SweepArgs {
            k,
            input,
            enumerate,
            checkpoint,
            threads,
            records,
        }),
        Command::Catalog { name, list, out_dir } => catalog_cmd(name, list, out_dir),
        Command::Generate {
            n,
            all,
            count,
            seed,
            max_degree,
            k4_free,
            density,
        } => generate_cmd(GenerateArgs {
            n,
            all,
            count,
            seed,
            max_degree,
            k4_free,
            density,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match dispatch(cli.command) {
        Ok(out) => (out.text, out.code),
        Err(e) => (to_json(&error_json(&e)), exit_code(&e)),
    };
    if !text.is_empty() {
        // a closed pipe downstream is not an error of ours
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
    ExitCode::from(code)
}
