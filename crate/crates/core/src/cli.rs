//! Command-line front end.
//!
//! Exit codes: 0 when the verdict is positive (minimal cover, witness found,
//! hypothesis holds, output produced), 1 when it is negative or a
//! precondition of the chosen algorithm fails, 2 on usage and parse errors.

use std::ffi::OsString;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::countable::{
    find_omega_witness, gen_domotor, gen_lattice_lines, gen_omega, local_construction, truncate, validate_witness,
    LazyHypergraph,
};
use crate::covers::{
    enumerate_minimal_covers_bounded, greedy_minimalize, is_cover, is_minimal_cover, Cover, MinimalityReport,
};
use crate::error::Error;
use crate::format;
use crate::hypergraph::FiniteHypergraph;
use crate::random::{random_hypergraph, rng_from_seed, RandomShape, DEFAULT_SEED};
use crate::structured::{bounded_width_cover, check_nm, point_finite_cover, NmParams};
use crate::vertex_set::VertexSet;

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hypercover", version, about = "Minimal covers of hypergraphs")]
pub struct Args {
    /// Emit one JSON document instead of line-oriented text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether the given edges form a (minimal) cover.
    CheckCover {
        /// Hypergraph file; standard input when absent or `-`.
        file: Option<String>,
        /// Comma-separated edge indices (0-based, in file order).
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        indices: Vec<usize>,
    },
    /// Compute a minimal cover with one of the constructive algorithms.
    Minimalize {
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = Algorithm::Greedy)]
        algorithm: Algorithm,
    },
    /// List every minimal cover of a small hypergraph.
    Enumerate {
        file: Option<String>,
        #[arg(long, default_value_t = crate::covers::DEFAULT_MAX_EDGES)]
        max_edges: usize,
    },
    /// Search for an omega staircase of the given depth.
    FindOmega {
        file: Option<String>,
        #[arg(long)]
        depth: usize,
    },
    /// Check that every n distinct edges share fewer than m vertices.
    CheckNm {
        file: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Write a generated hypergraph to standard output.
    Gen {
        #[arg(value_enum)]
        name: Generator,
        /// Number of edges to take from omega or domotor.
        #[arg(long)]
        count: Option<usize>,
        /// Grid radius for lines.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Upper bound on the number of edges for random.
        #[arg(long, default_value_t = 30)]
        max_edges: usize,
        #[arg(long, default_value_t = 20)]
        max_vertices: usize,
        #[arg(long, default_value_t = 6)]
        max_width: usize,
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Greedy,
    PointFinite,
    BoundedWidth,
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Omega,
    Domotor,
    Lines,
    Random,
}

/// Machine-readable result of one command.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub result: Value,
    pub verdict: String,
}

struct Outcome {
    code: i32,
    verdict: String,
    result: Value,
    lines: Vec<String>,
}

impl Outcome {
    fn new(code: i32, verdict: impl Into<String>, result: Value, lines: Vec<String>) -> Self {
        Outcome { code, verdict: verdict.into(), result, lines }
    }
}

/// Parses `argv` and runs the command, writing to the given streams.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let args = match Args::try_parse_from(&argv) {
        Ok(args) => args,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{}", e.render());
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = write!(stdout, "{}", e.render());
            return EXIT_POSITIVE;
        }
    };
    let echo: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&args, &echo, stdin, stdout) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_USAGE
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args() -> i32 {
    run(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}

fn read_input(file: &Option<String>, stdin: &mut dyn Read) -> Result<String, String> {
    match file.as_deref() {
        None | Some("-") => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|e| format!("reading standard input: {e}"))?;
            Ok(text)
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}")),
    }
}

pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn execute(args: &Args, echo: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32, String> {
    let file = match &args.command {
        Command::Gen {
            name,
            count,
            radius,
            seed,
            max_edges,
            max_vertices,
            max_width,
            max_degree,
        } => {
            let shape = RandomShape {
                max_edges: *max_edges,
                max_vertices: *max_vertices,
                max_width: *max_width,
                max_degree: *max_degree,
            };
            let text = generate(*name, *count, *radius, *seed, &shape)?;
            stdout.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
            return Ok(EXIT_POSITIVE);
        }
        Command::CheckCover { file, .. }
        | Command::Minimalize { file, .. }
        | Command::Enumerate { file, .. }
        | Command::FindOmega { file, .. }
        | Command::CheckNm { file, .. } => file,
    };
    let text = read_input(file, stdin)?;
    let h = format::parse(&text).map_err(|e| format!("parse error: {e}"))?;
    let outcome = match &args.command {
        Command::CheckCover { indices, .. } => check_cover(&h, indices)?,
        Command::Minimalize { algorithm, .. } => minimalize(&h, *algorithm),
        Command::Enumerate { max_edges, .. } => enumerate(&h, *max_edges)?,
        Command::FindOmega { depth, .. } => find_omega(&h, *depth)?,
        Command::CheckNm { n, m, .. } => nm(&h, *n, *m)?,
        Command::Gen { .. } => unreachable!("handled above"),
    };
    let report = RunReport {
        command: echo.to_vec(),
        input_digest: Some(digest(&text)),
        result: outcome.result,
        verdict: outcome.verdict,
    };
    let written = if args.json {
        serde_json::to_writer_pretty(&mut *stdout, &report)
            .map_err(io::Error::from)
            .and_then(|()| writeln!(stdout))
    } else {
        write_human(stdout, &report, &outcome.lines)
    };
    written.map_err(|e| e.to_string())?;
    Ok(outcome.code)
}

fn write_human(out: &mut dyn Write, report: &RunReport, lines: &[String]) -> io::Result<()> {
    writeln!(out, "command: {}", report.command.join(" "))?;
    if let Some(d) = &report.input_digest {
        writeln!(out, "input: {d}")?;
    }
    for line in lines {
        writeln!(out, "{line}")?;
    }
    writeln!(out, "verdict: {}", report.verdict)
}

fn labels(h: &FiniteHypergraph, set: &VertexSet) -> Vec<String> {
    set.iter().map(|v| h.label(v)).collect()
}

fn private_vertices(h: &FiniteHypergraph, report: &MinimalityReport) -> (Value, Vec<String>) {
    let json: serde_json::Map<String, Value> = report
        .private_vertex
        .iter()
        .map(|(&i, &v)| (i.to_string(), json!({ "id": v, "label": h.label(v) })))
        .collect();
    let lines = report
        .private_vertex
        .iter()
        .map(|(i, &v)| format!("private {i} -> {}", h.label(v)))
        .collect();
    (Value::Object(json), lines)
}

fn join(indices: &[usize]) -> String {
    indices.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn check_cover(h: &FiniteHypergraph, indices: &[usize]) -> Result<Outcome, String> {
    let cover = Cover::new(h, indices.iter().copied()).map_err(|e| e.to_string())?;
    let selected = cover.indices();
    if !is_cover(&cover) {
        let missing = h.vertex_set().difference(&cover.union());
        return Ok(Outcome::new(
            EXIT_NEGATIVE,
            "not a cover",
            json!({ "selected": selected, "cover": false, "minimal": false, "uncovered": labels(h, &missing) }),
            vec![format!("selected: {}", join(&selected)), format!("uncovered: {}", labels(h, &missing).join(" "))],
        ));
    }
    let report = is_minimal_cover(&cover).map_err(|e| e.to_string())?;
    let (private, mut lines) = private_vertices(h, &report);
    lines.insert(0, format!("selected: {}", join(&selected)));
    lines.push(format!("minimal: {}", report.minimal));
    if let Some(v) = report.violating_edge {
        lines.push(format!("redundant edge: {v}"));
    }
    let result = json!({
        "selected": selected,
        "cover": true,
        "minimal": report.minimal,
        "private_vertex": private,
        "violating_edge": report.violating_edge,
    });
    Ok(if report.minimal {
        Outcome::new(EXIT_POSITIVE, "minimal cover", result, lines)
    } else {
        Outcome::new(EXIT_NEGATIVE, "cover, not minimal", result, lines)
    })
}

fn minimalize(h: &FiniteHypergraph, algorithm: Algorithm) -> Outcome {
    let mut trace = None;
    let computed = match algorithm {
        Algorithm::Greedy => greedy_minimalize(&Cover::all(h)),
        Algorithm::PointFinite => point_finite_cover(h),
        Algorithm::BoundedWidth => bounded_width_cover(h),
        Algorithm::Local => local_construction(h).map(|(cover, t)| {
            trace = Some(t);
            cover
        }),
    };
    let checked = computed.and_then(|cover| {
        let report = is_minimal_cover(&cover)?;
        Ok((cover, report))
    });
    let (cover, report) = match checked {
        Ok(pair) => pair,
        Err(e) => {
            return Outcome::new(
                EXIT_NEGATIVE,
                format!("precondition failed: {e}"),
                json!({ "algorithm": algorithm, "error": e.to_string() }),
                Vec::new(),
            )
        }
    };
    let selected = cover.indices();
    let (private, mut lines) = private_vertices(h, &report);
    lines.insert(0, format!("algorithm: {}", algorithm_name(algorithm)));
    lines.insert(1, format!("selected: {}", join(&selected)));
    if let Some(t) = &trace {
        for step in &t.steps {
            lines.push(format!(
                "step {}: v={} remaining=[{}] earlier=[{}] local-family=[{}] universe=[{}] lifted=[{}]",
                step.n,
                h.label(step.vertex),
                labels(h, &step.remaining).join(" "),
                labels(h, &step.earlier).join(" "),
                join(&step.local_family),
                labels(h, &step.universe).join(" "),
                join(&step.lifted),
            ));
        }
    }
    let mut result = json!({
        "algorithm": algorithm,
        "selected": selected,
        "minimal": report.minimal,
        "private_vertex": private,
    });
    if let Some(t) = trace {
        result["trace"] = serde_json::to_value(t).expect("trace serializes");
    }
    Outcome::new(EXIT_POSITIVE, "minimal cover", result, lines)
}

fn algorithm_name(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Greedy => "greedy",
        Algorithm::PointFinite => "point-finite",
        Algorithm::BoundedWidth => "bounded-width",
        Algorithm::Local => "local",
    }
}

fn enumerate(h: &FiniteHypergraph, max_edges: usize) -> Result<Outcome, String> {
    let covers: Vec<Vec<usize>> = enumerate_minimal_covers_bounded(h, max_edges)
        .map_err(|e| e.to_string())?
        .map(|c| c.indices())
        .collect();
    let mut lines: Vec<String> = covers.iter().map(|c| format!("cover: {}", join(c))).collect();
    lines.push(format!("count: {}", covers.len()));
    Ok(Outcome::new(
        EXIT_POSITIVE,
        format!("{} minimal covers", covers.len()),
        json!({ "count": covers.len(), "covers": covers }),
        lines,
    ))
}

fn find_omega(h: &FiniteHypergraph, depth: usize) -> Result<Outcome, String> {
    if depth == 0 {
        return Err("--depth must be at least 1".into());
    }
    let witness = find_omega_witness(h, depth).map_err(|e| e.to_string())?;
    Ok(match witness {
        None => Outcome::new(
            EXIT_NEGATIVE,
            "none",
            json!({ "depth": depth, "found": false, "witness": null }),
            vec![format!("depth: {depth}"), "witness: none".into()],
        ),
        Some(w) => {
            let validated = validate_witness(h, &w).is_ok();
            let omega_labels: Vec<String> = w.omega.iter().map(|&v| h.label(v)).collect();
            Outcome::new(
                if validated { EXIT_POSITIVE } else { EXIT_NEGATIVE },
                if validated { "witness found" } else { "witness failed validation" },
                json!({
                    "depth": depth,
                    "found": true,
                    "validated": validated,
                    "witness": {
                        "omega": w.omega,
                        "omega_labels": omega_labels,
                        "edge_indices": w.edge_indices,
                    },
                }),
                vec![
                    format!("depth: {depth}"),
                    format!("vertices: {}", omega_labels.join(" ")),
                    format!("edges: {}", join(&w.edge_indices)),
                ],
            )
        }
    })
}

fn nm(h: &FiniteHypergraph, n: usize, m: usize) -> Result<Outcome, String> {
    let params = NmParams::new(n, m).map_err(|e| e.to_string())?;
    let report = check_nm(h, params).map_err(|e: Error| e.to_string())?;
    let mut lines = vec![format!("n: {n}"), format!("m: {m}")];
    let counterexample = report.counterexample.as_ref().map(|c| {
        lines.push(format!("subfamily: {}", join(&c.edges)));
        lines.push(format!("intersection: {}", labels(h, &c.intersection).join(" ")));
        json!({ "edges": c.edges, "intersection": labels(h, &c.intersection) })
    });
    let result = json!({ "n": n, "m": m, "holds": report.holds, "counterexample": counterexample });
    Ok(if report.holds {
        Outcome::new(EXIT_POSITIVE, "holds", result, lines)
    } else {
        Outcome::new(EXIT_NEGATIVE, "fails", result, lines)
    })
}

fn generate(name: Generator, count: Option<usize>, radius: Option<usize>, seed: u64, shape: &RandomShape) -> Result<String, String> {
    let need_count = || count.ok_or_else(|| format!("`gen {}` needs --count", generator_name(name)));
    let (hypergraph, comments) = match name {
        Generator::Omega => {
            let k = need_count()?;
            let t = truncate(&gen_omega(), k);
            (t.hypergraph, vec![format!("omega truncated to {k} edges; edge n is {{0, ..., n-1}}"), "vertex tokens are their own ids".into()])
        }
        Generator::Domotor => {
            let k = need_count()?;
            let lazy = gen_domotor();
            let t = truncate(&lazy, k);
            let mut comments = vec![
                format!("domotor truncated to {k} edges; index 2(n-2) is [-n,0]+{{n}}, index 2(n-2)+1 is {{-n}}+[0,n]"),
                "integer z is written as id 2z (z >= 0) or -2z-1 (z < 0)".into(),
            ];
            comments.extend(id_table(&t.hypergraph, &lazy));
            (strip_labels(t.hypergraph), comments)
        }
        Generator::Lines => {
            let r = radius.ok_or("`gen lines` needs --radius")?;
            let lazy = gen_lattice_lines(r).map_err(|e| e.to_string())?;
            let t = truncate(&lazy, usize::MAX);
            let mut comments = vec![
                format!("maximal collinear subsets of the grid [-{r},{r}]^2; {} lines", t.hypergraph.len()),
                format!("point (x,y) has id (y+{r})*{} + (x+{r})", 2 * r + 1),
            ];
            comments.extend(id_table(&t.hypergraph, &lazy));
            (strip_labels(t.hypergraph), comments)
        }
        Generator::Random => {
            if shape.max_edges == 0 || shape.max_vertices == 0 || shape.max_width == 0 {
                return Err("--max-edges, --max-vertices and --max-width must be positive".into());
            }
            let h = random_hypergraph(&mut rng_from_seed(seed), shape);
            (h, vec![format!("random hypergraph, seed {seed}, {shape:?}")])
        }
    };
    format::serialize(&hypergraph, &comments).map_err(|e| e.to_string())
}

fn generator_name(g: Generator) -> &'static str {
    match g {
        Generator::Omega => "omega",
        Generator::Domotor => "domotor",
        Generator::Lines => "lines",
        Generator::Random => "random",
    }
}

fn id_table(h: &FiniteHypergraph, lazy: &LazyHypergraph) -> Vec<String> {
    h.vertex_set().iter().map(|v| format!("id {v} = {}", lazy.label(v))).collect()
}

fn strip_labels(h: FiniteHypergraph) -> FiniteHypergraph {
    h.with_labels(Default::default())
}

