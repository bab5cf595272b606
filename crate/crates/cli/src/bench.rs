//! Batch runs over a directory of edge lists.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use totres::forces::{organic_layout, run, ForceConfig, Mode};
use totres::graph::{parse_edge_list, Graph, Layout};
use totres::metrics::{collinear_overlaps, total_resolution, to_degrees_rounded};

/// Column order of the CSV output.
pub const CSV_HEADER: &str =
    "graph,nodes,edges,mode,iterations,runtime_ms,angular_deg,crossing_deg,total_deg,converged,error";

/// Extension of the edge-list files picked up by [`collect_graphs`].
pub const EDGE_LIST_EXT: &str = "edges";

/// One CSV row: a graph run under one mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub graph: String,
    pub nodes: Option<usize>,
    pub edges: Option<usize>,
    pub mode: String,
    pub iterations: Option<usize>,
    pub runtime_ms: Option<u64>,
    pub angular_deg: Option<f64>,
    pub crossing_deg: Option<f64>,
    pub total_deg: Option<f64>,
    pub converged: Option<bool>,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub modes: Vec<Mode>,
    pub seed: u64,
    /// Eades steps used to untangle the random starting layout.
    pub pre_iters: usize,
    pub max_iters: Option<usize>,
    pub eps_deg: Option<f64>,
    /// `key = value` overrides applied to every run.
    pub config: Option<String>,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            modes: vec![Mode::Mixed, Mode::CrossingOnly, Mode::AngularOnly, Mode::Eades],
            seed: 42,
            pre_iters: 500,
            max_iters: None,
            eps_deg: None,
            config: None,
        }
    }
}

/// Edge-list files under `dir`, recursively, sorted by path.
pub fn collect_graphs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut found = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).with_context(|| format!("reading {}", d.display()))? {
            let path = entry?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == EDGE_LIST_EXT) {
                found.push(path);
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Name of a graph in the CSV: its path relative to `root`, without extension.
pub fn graph_name(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path).with_extension("");
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join("/")
}

/// Force configuration for one run, with CLI overrides applied.
pub fn run_config(
    g: &Graph,
    init: &Layout,
    mode: Mode,
    config: Option<&str>,
    max_iters: Option<usize>,
    eps_deg: Option<f64>,
) -> Result<ForceConfig> {
    let mut cfg = ForceConfig::for_layout(g, init, mode);
    if let Some(text) = config {
        cfg.apply_kv(text)?;
    }
    cfg.mode = mode;
    if let Some(n) = max_iters {
        cfg.max_iters = n;
    }
    if let Some(e) = eps_deg {
        cfg.eps_deg = e;
    }
    let cfg = cfg.with_mode(mode);
    cfg.validate()?;
    Ok(cfg)
}

fn failed(name: &str, mode: Mode, g: Option<&Graph>, msg: String) -> BenchRecord {
    BenchRecord {
        graph: name.to_string(),
        nodes: g.map(Graph::node_count),
        edges: g.map(Graph::edge_count),
        mode: mode.to_string(),
        iterations: None,
        runtime_ms: None,
        angular_deg: None,
        crossing_deg: None,
        total_deg: None,
        converged: None,
        error: msg,
    }
}

fn bench_one(name: &str, g: &Graph, init: &Layout, mode: Mode, opts: &BenchOptions) -> BenchRecord {
    let cfg = match run_config(g, init, mode, opts.config.as_deref(), opts.max_iters, opts.eps_deg) {
        Ok(c) => c,
        Err(e) => return failed(name, mode, Some(g), e.to_string()),
    };
    let start = Instant::now();
    let result = run(g, init, &cfg);
    let runtime_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(r) => {
            let report = total_resolution(g, &r.final_layout);
            let overlaps = collinear_overlaps(g, &r.final_layout);
            BenchRecord {
                graph: name.to_string(),
                nodes: Some(g.node_count()),
                edges: Some(g.edge_count()),
                mode: mode.to_string(),
                iterations: Some(r.iterations),
                runtime_ms: Some(runtime_ms),
                angular_deg: report.angular.map(to_degrees_rounded),
                crossing_deg: report.crossing.map(to_degrees_rounded),
                total_deg: report.total.map(to_degrees_rounded),
                converged: Some(r.converged),
                error: if overlaps.is_empty() {
                    String::new()
                } else {
                    format!("{} collinear overlapping edge pairs", overlaps.len())
                },
            }
        }
        Err(e) => failed(name, mode, Some(g), e.to_string()),
    }
}

/// Run every graph under every mode. Rows come back in input order, modes
/// in the order given, whatever the scheduling.
pub fn run_bench(graphs: &[(String, Result<Graph, String>)], opts: &BenchOptions) -> Vec<BenchRecord> {
    graphs
        .par_iter()
        .flat_map_iter(|(name, parsed)| -> Vec<BenchRecord> {
            match parsed {
                Err(msg) => opts
                    .modes
                    .iter()
                    .map(|&m| failed(name, m, None, msg.clone()))
                    .collect(),
                Ok(g) => {
                    let init = organic_layout(g, opts.seed, opts.pre_iters);
                    opts.modes
                        .par_iter()
                        .map(|&m| bench_one(name, g, &init, m, opts))
                        .collect()
                }
            }
        })
        .collect()
}

/// Read and parse every edge list under `dir`. Unreadable or malformed files
/// are kept as errors so that they show up in the output.
pub fn load_graphs(dir: &Path) -> Result<Vec<(String, Result<Graph, String>)>> {
    Ok(collect_graphs(dir)?
        .into_iter()
        .map(|path| {
            let name = graph_name(dir, &path);
            let parsed = std::fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|text| parse_edge_list(&text).map_err(|e| e.to_string()));
            (name, parsed)
        })
        .collect())
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Per-mode means of the successful rows, as a small text table.
pub fn summary(rows: &[BenchRecord], modes: &[Mode]) -> String {
    let mut out = format!("{:<24} {:>5} {:>10} {:>10} {:>10} {:>8}\n", "mode", "runs", "angular", "crossing", "total", "iters");
    for m in modes {
        let ok: Vec<&BenchRecord> = rows
            .iter()
            .filter(|r| r.mode == m.as_str() && r.error.is_empty() && r.iterations.is_some())
            .collect();
        let mean = |f: &dyn Fn(&BenchRecord) -> Option<f64>| {
            let v: Vec<f64> = ok.iter().filter_map(|r| f(r)).collect();
            if v.is_empty() {
                "-".to_string()
            } else {
                format!("{:.2}", v.iter().sum::<f64>() / v.len() as f64)
            }
        };
        out.push_str(&format!(
            "{:<24} {:>5} {:>10} {:>10} {:>10} {:>8}\n",
            m.as_str(),
            ok.len(),
            mean(&|r| r.angular_deg),
            mean(&|r| r.crossing_deg),
            mean(&|r| r.total_deg),
            mean(&|r| r.iterations.map(|i| i as f64)),
        ));
    }
    out
}
