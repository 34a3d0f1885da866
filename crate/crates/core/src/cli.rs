//! `hdroute` command line. Every command prints exactly one JSON document
//! on stdout. Exit codes: 0 success (or "yes" for `decide`), 1 "no" for
//! `decide`, 2 error, 3 no S-D path.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::capacity::Capacity;
use crate::cycles::{count_elementary_cycles, CycleCount};
use crate::error::{Error, Result};
use crate::gen::GenSpec;
use crate::graph::{Digraph, Path};
use crate::metrics::hd_path_capacity;
use crate::oracle::{brute_force_best_fd, brute_force_best_hd};
use crate::router::{best_hd_simple_path_with, check_threshold, hd_path_decide, RouteOptions, DEFAULT_ITERATION_BUDGET};
use crate::sat::{parse_dimacs, reduce};
use crate::widest::{tree_path, widest_path_tree};

pub const DECIMAL_PLACES: u32 = 6;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_NO_PATH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hdroute", version, about = "Best half-duplex routes on relay networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Best HD simple route.
    Route {
        /// JSON graph file, or - for stdin.
        graph: PathBuf,
        /// Include one record per elimination.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_ITERATION_BUDGET)]
        max_iterations: u64,
    },
    /// Widest (FD-best) route against the HD-best route.
    Compare { graph: PathBuf },
    /// Does some simple route reach the threshold? Exit 0 yes, 1 no.
    Decide {
        graph: PathBuf,
        /// Decimal or p/q; defaults to the graph's "threshold" field.
        #[arg(long)]
        threshold: Option<String>,
    },
    /// Build the HD-path instance of a 3-CNF formula.
    Reduce {
        /// DIMACS CNF file, or - for stdin.
        formula: PathBuf,
        #[arg(long, default_value = "2")]
        z: String,
        /// Write the graph here and the provenance map next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive best HD and FD routes.
    Oracle { graph: PathBuf },
    /// Generate an instance from a JSON GenSpec.
    Gen {
        spec: PathBuf,
        /// Overrides the spec's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count elementary cycles.
    Cycles {
        graph: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
    },
}

/// Parses `args` (program name first), runs the command and writes the
/// JSON result to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (value, code) = match execute(cli.command) {
        Ok(done) => done,
        Err(e) => {
            eprintln!("hdroute: {e}");
            let code = if matches!(e, Error::NoPath) { EXIT_NO_PATH } else { EXIT_ERROR };
            (json!({ "error": e.to_string() }), code)
        }
    };
    let text = match &value {
        Value::Object(m) if m.contains_key("nodes") => serde_json::to_string_pretty(&value),
        _ => serde_json::to_string(&value),
    }
    .expect("JSON values serialize");
    if writeln!(out, "{text}").is_err() {
        return EXIT_ERROR;
    }
    code
}

fn execute(command: Command) -> Result<(Value, i32)> {
    match command {
        Command::Route { graph, trace, max_iterations } => {
            let g = load_graph(&graph)?;
            let result = best_hd_simple_path_with(&g, RouteOptions { max_iterations, record_trace: trace })?;
            let mut m = Map::new();
            m.insert("path".into(), path_json(&g, &result.path));
            put_capacity(&mut m, "hd_capacity", &result.hd_capacity);
            m.insert("iterations".into(), json!(result.iterations));
            m.insert("replicas".into(), json!(result.replicas_created));
            if trace {
                m.insert("trace".into(), serde_json::to_value(&result.trace)?);
            }
            Ok((Value::Object(m), 0))
        }
        Command::Compare { graph } => {
            let g = load_graph(&graph)?;
            let tree = widest_path_tree(&g, g.source());
            let fd_route = tree_path(&tree, g.destination())?;
            let fd_value = tree.achieved(g.destination()).cloned().ok_or(Error::NoPath)?;
            let fd_route_hd = hd_path_capacity(&g, &fd_route)?;
            let best = best_hd_simple_path_with(&g, RouteOptions::default())?;

            let mut fd = Map::new();
            fd.insert("path".into(), path_json(&g, &fd_route));
            put_capacity(&mut fd, "fd_capacity", &fd_value);
            put_capacity(&mut fd, "hd_capacity", &fd_route_hd);
            let mut hd = Map::new();
            hd.insert("path".into(), path_json(&g, &best.path));
            put_capacity(&mut hd, "hd_capacity", &best.hd_capacity);
            let mut m = Map::new();
            m.insert("fd_route".into(), Value::Object(fd));
            m.insert("hd_route".into(), Value::Object(hd));
            match best.hd_capacity.ratio(&fd_route_hd) {
                Some(r) => put_capacity(&mut m, "ratio", &Capacity::from(r)),
                None => {
                    m.insert("ratio".into(), Value::Null);
                }
            }
            Ok((Value::Object(m), 0))
        }
        Command::Decide { graph, threshold } => {
            let text = read_input(&graph)?;
            let doc: crate::graph::GraphDoc = serde_json::from_str(&text)?;
            let threshold = match threshold {
                Some(t) => t.parse::<Capacity>()?,
                None => doc.threshold.clone().ok_or_else(|| Error::InvalidParameter("no --threshold given and the graph records none".into()))?,
            };
            check_threshold(&threshold)?;
            let g = Digraph::from_doc(&doc)?;
            let yes = hd_path_decide(&g, &threshold)?;
            let mut m = Map::new();
            m.insert("decision".into(), json!(yes));
            put_capacity(&mut m, "threshold", &threshold);
            Ok((Value::Object(m), if yes { 0 } else { EXIT_NO }))
        }
        Command::Reduce { formula, z, out } => {
            let inst = parse_dimacs(&read_input(&formula)?)?;
            let z: Capacity = z.parse()?;
            let red = reduce(&inst, &z)?;
            let mut doc = red.graph.to_doc();
            doc.threshold = Some(red.threshold.clone());
            match out {
                None => Ok((serde_json::to_value(&doc)?, 0)),
                Some(path) => {
                    let sidecar = provenance_path(&path);
                    fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")?;
                    fs::write(&sidecar, serde_json::to_string_pretty(&red.provenance)? + "\n")?;
                    let mut m = Map::new();
                    m.insert("graph".into(), json!(path.display().to_string()));
                    m.insert("provenance".into(), json!(sidecar.display().to_string()));
                    m.insert("vertices".into(), json!(red.graph.vertex_count()));
                    m.insert("edges".into(), json!(red.graph.edge_count()));
                    m.insert("forbidden_pairs".into(), json!(red.forbidden.len()));
                    put_capacity(&mut m, "threshold", &red.threshold);
                    Ok((Value::Object(m), 0))
                }
            }
        }
        Command::Oracle { graph } => {
            let g = load_graph(&graph)?;
            let (hd_path, hd) = brute_force_best_hd(&g)?;
            let (fd_path, fd) = brute_force_best_fd(&g)?;
            let mut m = Map::new();
            m.insert("path".into(), path_json(&g, &hd_path));
            put_capacity(&mut m, "hd_capacity", &hd);
            m.insert("fd_path".into(), path_json(&g, &fd_path));
            put_capacity(&mut m, "fd_capacity", &fd);
            Ok((Value::Object(m), 0))
        }
        Command::Gen { spec, seed, out } => {
            let mut spec: GenSpec = serde_json::from_str(&read_input(&spec)?)?;
            if let Some(s) = seed {
                match &mut spec {
                    GenSpec::Layered { seed, .. } | GenSpec::Random { seed, .. } => *seed = s,
                    GenSpec::Gap { .. } => return Err(Error::InvalidParameter("gap instances take no seed".into())),
                }
            }
            let doc = spec.generate()?;
            match out {
                None => Ok((serde_json::to_value(&doc)?, 0)),
                Some(path) => {
                    fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")?;
                    let summary = json!({
                        "graph": path.display().to_string(),
                        "vertices": doc.nodes.len(),
                        "edges": doc.edges.len(),
                    });
                    Ok((summary, 0))
                }
            }
        }
        Command::Cycles { graph, limit } => {
            let g = load_graph(&graph)?;
            let value = match count_elementary_cycles(&g, limit)? {
                CycleCount::Exact(n) => json!({ "cycles": n, "limit": limit }),
                CycleCount::ExceedsLimit => json!({ "cycles": null, "exceeds_limit": true, "limit": limit }),
            };
            Ok((value, 0))
        }
    }
}

fn read_input(path: &FsPath) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
    }
}

fn load_graph(path: &FsPath) -> Result<Digraph> {
    Digraph::from_json(&read_input(path)?)
}

/// `net.json` -> `net.provenance.json`.
pub fn provenance_path(graph_path: &FsPath) -> PathBuf {
    let stem = match graph_path.extension() {
        Some(ext) if ext == "json" => graph_path.with_extension(""),
        _ => graph_path.to_path_buf(),
    };
    let mut name = stem.into_os_string();
    name.push(".provenance.json");
    PathBuf::from(name)
}

fn path_json(g: &Digraph, path: &Path) -> Value {
    json!(path.names(g))
}

fn put_capacity(m: &mut Map<String, Value>, key: &str, c: &Capacity) {
    m.insert(key.to_string(), json!(c.to_fraction_string()));
    m.insert(format!("{key}_decimal"), json!(c.to_decimal_string(DECIMAL_PLACES)));
}
