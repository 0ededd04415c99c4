//! Command-line surface of the circular-coloring laboratory.
//!
//! Exit codes: 0 on success, 1 when a verification subcommand finds a
//! property violation, 2 on usage or parse errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use girthlab::corpus;
use girthlab::experiment::{
    emit_report, run_verify_theorem, ExperimentConfig, ExperimentMode, ReportFormat,
};
use girthlab::format::{emit_rooted, parse_graph_file, parse_marked_graph, ParsedGraph};
use girthlab::tablefile;
use girthlab_core::circular::{
    circular_chromatic_number, is_pq_colorable, is_pq_colorable_certified,
    PQParams, SolveOutcome, DEFAULT_TABLE_LIMIT,
};
use girthlab_core::gadget::{synthesize_gadgets, GadgetParams};
use girthlab_core::graph::odd_girth;
use girthlab_core::precolor::{f_set, probe_extension_distance, ProbeInstance};
use girthlab_core::reduction::{reduce_type, ReductionParams};
use girthlab_core::types::{check_glue_type, type_of};
use girthlab_core::{girth_bound, Dist};

#[derive(Parser)]
#[command(name = "girthlab", version, about = "circular colorings of graphs with bounded tree-width")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph file in the shared text format.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Length of a shortest odd cycle (`inf` for bipartite graphs).
    Oddgirth {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        json: bool,
    },
    /// Exact circular chromatic number.
    ChiC {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        json: bool,
    },
    /// Decide (p,q)-colorability, optionally extending a precoloring.
    PqColor {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Comma-separated `vertex=color` pairs (1-based vertices).
        #[arg(long)]
        precolor: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The set of extendable root precolorings, as a hex bitset.
    Fset {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Distance type of a rooted graph.
    Type {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        json: bool,
    },
    /// Apply the type reduction to a bipartite rooted graph.
    Reduce {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        trace: bool,
        /// Write the reduced graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize the gadget table for every bipartite type within a bound.
    Gadgets {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        type_bound: u64,
        /// Candidate graphs examined per type.
        #[arg(long, default_value_t = 2000)]
        budget: u64,
        #[arg(long, default_value_t = girthlab_core::gadget::DEFAULT_VERTEX_CAP)]
        vertex_cap: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// The explicit girth bound, exact or symbolic.
    Bound {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: u32,
    },
    /// Probe the extension distance over a corpus directory.
    ProbeD {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Directory of graph files whose `r` lines mark the precolored set.
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Run the glue-type invariant over random certified instances.
    VerifyLemma4 {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// The desk-scale theorem experiment.
    VerifyTheorem {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 3)]
        girth_floor: u64,
        #[arg(long, conflicts_with_all = ["samples", "sample_vertices"])]
        exhaustive_cap: Option<usize>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 10)]
        sample_vertices: usize,
        #[arg(long, default_value_t = 0.5)]
        keep_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the text table instead of JSON.
        #[arg(long)]
        text: bool,
    },
}

fn table_limit() -> u64 {
    std::env::var("GIRTHLAB_TABLE_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_TABLE_LIMIT)
}

fn load(path: &Path) -> Result<ParsedGraph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_graph_file(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn parse_precolor(spec: &str) -> Result<Vec<(usize, u32)>> {
    let mut out = Vec::new();
    for part in spec.split(',').filter(|s| !s.is_empty()) {
        let (v, c) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("bad precolor entry `{part}`, want `vertex=color`"))?;
        let v: usize = v.trim().parse().context("precolor vertex")?;
        let c: u32 = c.trim().parse().context("precolor color")?;
        if v == 0 {
            bail!("precolor vertices are 1-based");
        }
        out.push((v - 1, c));
    }
    Ok(out)
}

fn dist_json(d: Dist) -> serde_json::Value {
    match d {
        Dist::Fin(x) => serde_json::json!(x),
        Dist::Inf => serde_json::Value::Null,
    }
}

/// 0 = clean, 1 = property violation found.
fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Oddgirth { graph, json } => {
            let g = load(&graph.graph)?;
            let og = odd_girth(g.graph());
            if json {
                println!("{}", serde_json::json!({ "odd_girth": dist_json(og) }));
            } else {
                println!("{og}");
            }
        }
        Command::ChiC { graph, json } => {
            let g = load(&graph.graph)?;
            let chi_c = circular_chromatic_number(g.graph());
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "status": "ok",
                        "value": { "p": chi_c.num(), "q": chi_c.den() },
                    })
                );
            } else {
                println!("{chi_c}");
            }
        }
        Command::PqColor { graph, p, q, precolor, json } => {
            let g = load(&graph.graph)?;
            let pq = PQParams::new(p, q).map_err(|e| anyhow!("{e}"))?;
            let partial = precolor.as_deref().map(parse_precolor).transpose()?.unwrap_or_default();
            let outcome = match g.rooted() {
                Some(t) => is_pq_colorable_certified(t, pq, &partial, table_limit()),
                None => is_pq_colorable(g.graph(), pq, &partial),
            }
            .map_err(|e| anyhow!("{e}"))?;
            match outcome {
                SolveOutcome::Colored(w) => {
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({ "status": "colorable", "witness": w.assignment })
                        );
                    } else {
                        let colors: Vec<String> =
                            w.assignment.iter().map(|c| c.to_string()).collect();
                        println!("colorable: {}", colors.join(" "));
                    }
                }
                SolveOutcome::Unsat => {
                    if json {
                        println!("{}", serde_json::json!({ "status": "unsat" }));
                    } else {
                        println!("unsat");
                    }
                }
            }
        }
        Command::Fset { graph, p, q } => {
            let g = load(&graph.graph)?;
            let t = g.rooted().ok_or_else(|| anyhow!("fset needs a rooted graph (r line)"))?;
            let pq = PQParams::new(p, q).map_err(|e| anyhow!("{e}"))?;
            let fs = f_set(t, pq, table_limit()).map_err(|e| anyhow!("{e}"))?;
            println!("{}", fs.to_hex());
            println!("c members {} of {}", fs.count(), fs.len());
            if t.k() == 1 {
                for idx in fs.members() {
                    let colors = fs.colors_of(idx);
                    println!("c pair ({},{})", colors[0], colors[1]);
                }
            }
        }
        Command::Type { graph, json } => {
            let g = load(&graph.graph)?;
            let t = g.rooted().ok_or_else(|| anyhow!("type needs a rooted graph (r line)"))?;
            let ty = type_of(t);
            if json {
                println!("{}", serde_json::json!(tablefile::type_to_rows(&ty)));
            } else {
                print!("{ty}");
            }
        }
        Command::Reduce { graph, p, q, d, trace, out } => {
            let g = load(&graph.graph)?;
            let t = g.rooted().ok_or_else(|| anyhow!("reduce needs a rooted graph"))?;
            let pq = PQParams::new(p, q).map_err(|e| anyhow!("{e}"))?;
            let params = ReductionParams::new(pq, d).map_err(|e| anyhow!("{e}"))?;
            let (reduced, tr) = reduce_type(t, params).map_err(|e| anyhow!("{e}"))?;
            let text = emit_rooted(&reduced);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            if trace {
                eprintln!("i0 = {}", tr.i0);
                eprintln!("classes = {:?}", tr.classes);
                eprintln!("contractions = {}", tr.contraction_log.len());
                eprint!("predicted type:\n{}", tr.predicted_type);
            }
        }
        Command::Gadgets { k, p, q, d, type_bound, budget, vertex_cap, out } => {
            let pq = PQParams::new(p, q).map_err(|e| anyhow!("{e}"))?;
            let params = GadgetParams { k, pq, d, type_bound, search_budget: budget, vertex_cap };
            let table = synthesize_gadgets(params, 1_000_000, table_limit())
                .map_err(|e| anyhow!("{e}"))?;
            std::fs::write(&out, tablefile::write_json(&table))
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "wrote {} entries (max gadget order {}) to {}",
                table.entries.len(),
                table.max_gadget_order(),
                out.display()
            );
        }
        Command::Bound { k, p, d } => {
            let b = girth_bound(k, p, d);
            println!("coefficient 3(k+1) = {}", b.coefficient);
            println!("exponent e = {}", b.exponent);
            match (&b.value, b.digit_count_estimate) {
                (Some(v), Some(est)) => {
                    let s = v.to_string();
                    println!(
                        "value = {}...{} ({} digits; log estimate {est})",
                        &s[..8.min(s.len())],
                        &s[s.len().saturating_sub(8)..],
                        s.len()
                    );
                }
                _ => {
                    println!("value = {} * 2^e (symbolic)", b.coefficient);
                    match b.digit_count_estimate {
                        Some(est) => println!("digit count estimate = {est}"),
                        None => println!("log10 estimate = {:e}", b.log10_estimate),
                    }
                }
            }
        }
        Command::ProbeD { p, q, corpus } => {
            let pq = PQParams::new(p, q).map_err(|e| anyhow!("{e}"))?;
            let mut paths: Vec<PathBuf> = std::fs::read_dir(&corpus)
                .with_context(|| format!("reading {}", corpus.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            paths.sort();
            let mut instances = Vec::new();
            for path in &paths {
                let text = std::fs::read_to_string(path)?;
                let (graph, marked) =
                    parse_marked_graph(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
                instances.push(ProbeInstance { graph, marked });
            }
            let outcome =
                probe_extension_distance(pq, &instances).map_err(|e| anyhow!("{e}"))?;
            println!("d_hat = {}", outcome.d_hat);
            println!(
                "instances = {}, failing = {}",
                outcome.instances_checked, outcome.failing_instances
            );
            if let Some(w) = outcome.witness {
                println!(
                    "witness: instance {} ({}) colors {:?} at min distance {}",
                    w.instance,
                    paths[w.instance].display(),
                    w.colors,
                    w.min_pairwise_distance
                );
            }
        }
        Command::VerifyLemma4 { count, seed, k } => {
            let mut done = 0usize;
            let mut draw = seed;
            while done < count {
                draw += 1;
                let Some((a, b, m0)) = corpus::random_glue_instance(k, 8, draw) else {
                    bail!("glue-instance sampler starved after seed {draw}");
                };
                if let Err(e) = check_glue_type(&a, &b, &m0) {
                    eprintln!("violation on instance {done} (seed {draw}): {e}");
                    return Ok(1);
                }
                done += 1;
            }
            println!("glue-type invariant held on {count} random instances");
        }
        Command::VerifyTheorem {
            k,
            p,
            q,
            girth_floor,
            exhaustive_cap,
            samples,
            sample_vertices,
            keep_prob,
            seed,
            out,
            text,
        } => {
            let mode = match (exhaustive_cap, samples) {
                (Some(cap), None) => ExperimentMode::Exhaustive { vertex_cap: cap },
                (None, Some(count)) => ExperimentMode::Sampled {
                    sample_count: count,
                    sample_vertices,
                    edge_keep_prob: keep_prob,
                },
                _ => bail!("choose exactly one of --exhaustive-cap and --samples"),
            };
            let cfg = ExperimentConfig { k, p, q, girth_floor, mode, seed };
            let report = run_verify_theorem(&cfg).map_err(|e| anyhow!("{e}"))?;
            let fmt = if text { ReportFormat::Text } else { ReportFormat::Json };
            let rendered = emit_report(&report, fmt);
            match out {
                Some(path) => std::fs::write(&path, &rendered)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{rendered}"),
            }
            eprintln!(
                "tested {} graphs, {} failures, g_hat = {}",
                report.body.summary.tested,
                report.body.summary.failures,
                report.body.summary.g_hat
            );
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run() {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
