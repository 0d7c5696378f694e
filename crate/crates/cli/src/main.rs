use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use cotree::connectivity::{is_three_connected, DEFAULT_BRUTE_BOUND};
use cotree::dot::to_dot;
use cotree::dual_order::dual_canonical_ordering;
use cotree::generate::{generate, GenKind};
use cotree::order::{
    compute_canonical_ordering, enumerate_vertices, label_edges, validate_canonical_ordering,
    CanonicalOrdering, OrderingJson,
};
use cotree::pipeline::Pipeline;
use cotree::trees::{barnette_tree, constrained_barnette, tree_to_walk, SpanningTreePair};
use cotree::verify::{best_degree_pair, matrix_tree_count, verify_graph, OracleError};
use cotree::{GraphJson, PlanarGraph, ValidationReport};

#[derive(Parser)]
#[command(
    name = "cotree",
    version,
    about = "Canonical orderings and bounded-degree tree / co-tree pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and print it as JSON.
    Gen(Common),
    /// Check an input graph and, if given, an ordering for it.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Ordering JSON to validate instead of a computed one.
        #[arg(long)]
        ordering: Option<PathBuf>,
    },
    /// Canonical ordering with vertex indices.
    Order {
        #[command(flatten)]
        common: Common,
        /// Emit the per-edge direction and label table instead.
        #[arg(long)]
        labels: bool,
    },
    /// Canonical ordering of the dual graph.
    DualOrder(Common),
    /// Parent-edge spanning tree; with --u and --w, the constrained variant.
    Barnette {
        #[command(flatten)]
        common: Common,
        #[arg(long, requires = "w")]
        u: Option<usize>,
        #[arg(long, requires = "u")]
        w: Option<usize>,
    },
    /// Spanning tree and co-tree of maximum degree 5.
    FiveTree(Common),
    /// Closed walk around the five-tree.
    Walk(Common),
    /// Run every checker, optionally over a batch of seeds.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Number of consecutive seeds to verify, starting at --seed.
        #[arg(long)]
        batch: Option<u64>,
        /// Also run the exhaustive oracles on graphs with at most this many vertices.
        #[arg(long, default_value_t = 0)]
        oracle_gate: usize,
    },
    /// Time the full pipeline on growing triangulations.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "25000,50000,100000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Generator kind.
    #[arg(long, conflicts_with = "input")]
    gen: Option<String>,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graph JSON file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: Format,
    /// Do not check 3-connectivity of input files.
    #[arg(long)]
    skip_3conn: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

/// Input or usage problem: exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<bool, UsageError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Gen(c) => {
            let g = load(&c)?;
            let text = match c.format {
                Format::Json => pretty(&serde_json::to_value(g.to_json())?),
                Format::Dot => to_dot(&g, None, None),
                Format::Text => format!(
                    "n={} m={} f={} roots=({}, {}, {})\n",
                    g.vertex_count(),
                    g.edge_count(),
                    g.face_count(),
                    g.roots().v1,
                    g.roots().v2,
                    g.roots().vn
                ),
            };
            emit(&c, &text)?;
            Ok(true)
        }
        Command::Validate { common, ordering } => {
            let g = load(&common)?;
            let co = match ordering {
                Some(path) => {
                    let j: OrderingJson = serde_json::from_str(&fs::read_to_string(&path)?)?;
                    CanonicalOrdering::from(j)
                }
                None => compute_canonical_ordering(&g)?,
            };
            let rep = validate_canonical_ordering(&g, &co);
            emit_report(&common, &rep)?;
            Ok(rep.passed())
        }
        Command::Order { common, labels } => {
            let g = load(&common)?;
            let co = compute_canonical_ordering(&g)?;
            let en = enumerate_vertices(&g, &co);
            let v = if labels {
                serde_json::to_value(label_edges(&g, &co, &en).records(&g))?
            } else {
                serde_json::to_value(co.to_json(Some(&en.idx)))?
            };
            let text = match common.format {
                Format::Text if !labels => co
                    .groups
                    .iter()
                    .enumerate()
                    .map(|(k, grp)| format!("V{} {:?} {:?}\n", k + 1, co.kinds[k], grp))
                    .collect(),
                _ => pretty(&v),
            };
            emit(&common, &text)?;
            Ok(true)
        }
        Command::DualOrder(c) => {
            let g = load(&c)?;
            let co = compute_canonical_ordering(&g)?;
            let dg = cotree::dual(&g);
            let dco = dual_canonical_ordering(&g, &co, &dg)?;
            let gs = dg.graph();
            let en = enumerate_vertices(gs, &dco.ordering);
            emit(
                &c,
                &pretty(&serde_json::to_value(dco.to_json(Some(&en.idx)))?),
            )?;
            Ok(true)
        }
        Command::Barnette { common, u, w } => {
            let g = load(&common)?;
            let (pair, extra) = match (u, w) {
                (Some(u), Some(w)) => {
                    let ct = constrained_barnette(&g, u, w)?;
                    (ct.pair, json!({ "u": u, "w": w, "face": ct.face }))
                }
                _ => {
                    let co = compute_canonical_ordering(&g)?;
                    let ann = label_edges(&g, &co, &enumerate_vertices(&g, &co));
                    (barnette_tree(&g, &ann)?, Value::Null)
                }
            };
            emit_tree(&common, &g, &pair, extra, None)?;
            Ok(pair.max_deg_tree <= 3)
        }
        Command::FiveTree(c) => {
            let g = load(&c)?;
            let p = Pipeline::run(&g)?;
            emit_tree(&c, &g, &p.five, Value::Null, Some(&p))?;
            Ok(p.five.max_deg_tree <= 5 && p.five.max_deg_cotree <= 5)
        }
        Command::Walk(c) => {
            let g = load(&c)?;
            let p = Pipeline::run(&g)?;
            let w = tree_to_walk(&g, &p.five.tree_edges)?;
            let v = json!({
                "walk": w.vertices,
                "vertex_visits": w.vertex_visits,
                "face_visits": w.face_visits,
                "max_vertex_visits": w.max_vertex_visits(),
                "max_face_visits": w.max_face_visits(),
                "face_visit_definition": "maximal run of consecutive corners of the face along the walk",
            });
            let text = match c.format {
                Format::Text => format!(
                    "length {} max vertex visits {} max face visits {}\n",
                    w.vertices.len() - 1,
                    w.max_vertex_visits(),
                    w.max_face_visits()
                ),
                _ => pretty(&v),
            };
            emit(&c, &text)?;
            Ok(w.max_vertex_visits() <= 5 && w.max_face_visits() <= 5)
        }
        Command::Verify {
            common,
            batch,
            oracle_gate,
        } => verify(&common, batch, oracle_gate),
        Command::Bench {
            sizes,
            runs,
            seed,
            format,
            out,
        } => bench(&sizes, runs, seed, format, out),
    }
}

fn load(c: &Common) -> Result<PlanarGraph, UsageError> {
    match (&c.gen, &c.input) {
        (Some(kind), _) => Ok(generate(kind.parse::<GenKind>()?, c.n, c.seed)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            let j: GraphJson = serde_json::from_str(&text)?;
            let g = PlanarGraph::from_json(&j)?;
            if !c.skip_3conn {
                match is_three_connected(&g, DEFAULT_BRUTE_BOUND, false) {
                    Ok(true) => {}
                    Ok(false) => return Err(UsageError("input graph is not 3-connected".into())),
                    Err(e) => {
                        return Err(UsageError(format!(
                            "{e}; pass --skip-3conn to proceed unchecked"
                        )))
                    }
                }
            }
            Ok(g)
        }
        (None, None) => Err(UsageError("one of --gen or --in is required".into())),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<(), UsageError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| UsageError(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(c: &Common, text: &str) -> Result<(), UsageError> {
    write_out(c.out.as_ref(), text)
}

fn emit_report(c: &Common, rep: &ValidationReport) -> Result<(), UsageError> {
    let text = match c.format {
        Format::Json => pretty(&rep.to_json()),
        _ => rep.to_string(),
    };
    emit(c, &text)
}

fn emit_tree(
    c: &Common,
    g: &PlanarGraph,
    pair: &SpanningTreePair,
    extra: Value,
    p: Option<&Pipeline>,
) -> Result<(), UsageError> {
    let text = match c.format {
        Format::Json => {
            let mut v = serde_json::to_value(pair.to_json(g))?;
            if let (Value::Object(m), Value::Object(x)) = (&mut v, extra) {
                m.extend(x);
            }
            pretty(&v)
        }
        Format::Dot => to_dot(g, Some(&pair.tree_edges), p.map(|p| &p.h)),
        Format::Text => format!(
            "tree edges {} max degree {}\nco-tree edges {} max degree {}\n",
            pair.tree_edges.len(),
            pair.max_deg_tree,
            pair.cotree_edges.len(),
            pair.max_deg_cotree
        ),
    };
    emit(c, &text)
}

fn verify_one(g: &PlanarGraph, oracle_gate: usize) -> Value {
    let mut v = match verify_graph(g) {
        Ok(verdict) => serde_json::to_value(&verdict).expect("serialisable"),
        Err(e) => {
            json!({ "report": { "pass": false, "findings": [{ "check": "pipeline", "location": "", "message": e.to_string() }] } })
        }
    };
    if let Some(r) = v.get_mut("report") {
        if r.get("pass").is_none() {
            let pass = r["findings"].as_array().is_some_and(Vec::is_empty);
            r["pass"] = json!(pass);
        }
    }
    if g.vertex_count() <= oracle_gate {
        let oracle = match best_degree_pair(g) {
            Ok(best) => {
                let kirchhoff = matrix_tree_count(g);
                let grunbaum = best.tree <= 3 && best.cotree <= 3;
                if !grunbaum {
                    eprintln!("WARNING: no spanning tree with tree and co-tree degree at most 3 on this graph");
                }
                json!({
                    "trees_enumerated": best.trees_seen,
                    "matrix_tree": kirchhoff.to_string(),
                    "counts_agree": i128::from(best.trees_seen as i64) == kirchhoff,
                    "best_pair": [best.tree, best.cotree],
                    "three_three_pair_exists": grunbaum,
                })
            }
            Err(OracleError::TooLarge { .. }) => json!({ "skipped": "above enumeration gate" }),
        };
        v["oracle"] = oracle;
    }
    v
}

fn verdict_passed(v: &Value) -> bool {
    v["report"]["pass"].as_bool().unwrap_or(false)
        && v["oracle"]["counts_agree"].as_bool().unwrap_or(true)
}

fn verify(c: &Common, batch: Option<u64>, oracle_gate: usize) -> CmdResult {
    let results: Vec<Value> = match batch {
        Some(count) => {
            let kind: GenKind = c
                .gen
                .as_deref()
                .ok_or_else(|| UsageError("--batch needs --gen".into()))?
                .parse()?;
            let graphs: Vec<(u64, PlanarGraph)> = (c.seed..c.seed + count)
                .map(|s| Ok((s, generate(kind, c.n, s)?)))
                .collect::<Result<_, UsageError>>()?;
            graphs
                .par_iter()
                .map(|(s, g)| {
                    let mut v = verify_one(g, oracle_gate);
                    v["seed"] = json!(s);
                    v
                })
                .collect()
        }
        None => vec![verify_one(&load(c)?, oracle_gate)],
    };
    let pass = results.iter().all(verdict_passed);
    let text = match c.format {
        Format::Text => results
            .iter()
            .map(|v| {
                let seed = v
                    .get("seed")
                    .map(|s| format!("seed {s}: "))
                    .unwrap_or_default();
                let status = if verdict_passed(v) { "pass" } else { "FAIL" };
                let mut line = format!(
                    "{seed}{status} n={} T={} T*={}\n",
                    v["n"], v["five_max_deg_tree"], v["five_max_deg_cotree"]
                );
                for f in v["report"]["findings"].as_array().into_iter().flatten() {
                    line.push_str(&format!(
                        "  [{}] {}: {}\n",
                        f["check"], f["location"], f["message"]
                    ));
                }
                line
            })
            .collect(),
        _ if batch.is_some() => pretty(&json!({ "pass": pass, "graphs": results })),
        _ => pretty(&results[0]),
    };
    emit(c, &text)?;
    Ok(pass)
}

fn bench(
    sizes: &[usize],
    runs: usize,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
) -> CmdResult {
    let mut rows = Vec::new();
    for &n in sizes {
        let g = generate(GenKind::Triangulation, n, seed)?;
        Pipeline::run(&g)?;
        let mut secs = Vec::with_capacity(runs);
        for _ in 0..runs.max(1) {
            let t = Instant::now();
            Pipeline::run(&g)?;
            secs.push(t.elapsed().as_secs_f64());
        }
        let mean = secs.iter().sum::<f64>() / secs.len() as f64;
        rows.push((n, mean, secs));
    }
    let ratios: Vec<f64> = rows.windows(2).map(|w| w[1].1 / w[0].1).collect();
    let text = match format {
        Format::Text => {
            let mut s: String = rows
                .iter()
                .map(|(n, mean, _)| format!("n={n:>8} mean {mean:.4} s\n"))
                .collect();
            for (w, r) in rows.windows(2).zip(&ratios) {
                s.push_str(&format!("ratio {}/{} = {r:.3}\n", w[1].0, w[0].0));
            }
            s
        }
        _ => pretty(&json!({
            "kind": "triangulation",
            "seed": seed,
            "runs": runs,
            "sizes": rows.iter().map(|(n, mean, secs)| json!({ "n": n, "mean_s": mean, "runs_s": secs })).collect::<Vec<_>>(),
            "ratios": ratios,
        })),
    };
    write_out(out.as_ref(), &text)?;
    Ok(true)
}
