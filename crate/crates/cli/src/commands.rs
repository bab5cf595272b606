//! The subcommands. Each returns the text to print on stdout.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use totres::constructions::{circular_complete, grid_snap, two_layer_bipartite};
use totres::forces::{organic_layout, run, ForceConfig, HistoryRow, Mode};
use totres::graph::{parse_edge_list, parse_layout, write_layout, Graph, Layout};
use totres::metrics::{collinear_overlaps, total_resolution, ReportJson};

use crate::bench::{load_graphs, run_bench, summary, write_csv, BenchOptions};
use crate::svg::{render_svg, SvgStyle};
use crate::{BenchArgs, ConstructArgs, Kind, LayoutArgs, MetricsArgs, OutputArgs};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_edge_list(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_layout(path: &Path, g: &Graph) -> Result<Layout> {
    parse_layout(&read(path)?, g).with_context(|| format!("parsing {}", path.display()))
}

/// Collinear overlapping edges make crossing angles meaningless.
fn check_overlaps(g: &Graph, l: &Layout) -> Result<()> {
    let overlaps = collinear_overlaps(g, l);
    if let Some(&(a, b)) = overlaps.first() {
        let name = |e: usize| {
            let (u, v) = g.edges()[e];
            format!("{}-{}", g.id(u), g.id(v))
        };
        bail!(
            "degenerate drawing: {} pair(s) of collinear overlapping edges, first {} and {}",
            overlaps.len(),
            name(a),
            name(b)
        );
    }
    Ok(())
}

fn metrics_json(g: &Graph, l: &Layout) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ReportJson::from(&total_resolution(g, l)))? + "\n")
}

/// Write the layout, SVG and metrics files requested in `out` and return the
/// metrics JSON.
fn emit(g: &Graph, l: &Layout, out: &OutputArgs) -> Result<String> {
    let json = metrics_json(g, l)?;
    if let Some(p) = &out.out {
        write(p, &write_layout(g, l))?;
    }
    if let Some(p) = &out.svg {
        write(p, &render_svg(g, l, &total_resolution(g, l), &SvgStyle::default()))?;
    }
    if let Some(p) = &out.metrics_out {
        write(p, &json)?;
    }
    Ok(json)
}

pub fn construct(args: &ConstructArgs) -> Result<String> {
    let (g, l) = match args.kind {
        Kind::Complete => {
            if args.m.is_some() || args.grid {
                bail!("--m and --grid only apply to bipartite");
            }
            circular_complete(args.n, args.radius)?
        }
        Kind::Bipartite => {
            let m = args.m.context("bipartite needs --m and --n")?;
            if args.grid {
                let (g, grid) = grid_snap(m, args.n)?;
                (g, grid.to_layout())
            } else {
                let (g, l, _) = two_layer_bipartite(m, args.n, args.size)?;
                (g, l)
            }
        }
    };
    if let Some(p) = &args.edges_out {
        write(p, &g.to_edge_list())?;
    }
    emit(&g, &l, &args.output)
}

/// Force configuration from the flags: defaults scaled to `init`, then the
/// config file, then the explicit flags.
pub fn force_config(args: &LayoutArgs, g: &Graph, init: &Layout) -> Result<ForceConfig> {
    let mut cfg = ForceConfig::for_layout(g, init, Mode::Mixed);
    if let Some(p) = &args.force.config {
        cfg.apply_kv(&read(p)?)
            .with_context(|| format!("in {}", p.display()))?;
    }
    if let Some(m) = args.force.mode {
        cfg.mode = m;
    }
    if let Some(n) = args.force.max_iters {
        cfg.max_iters = n;
    }
    if let Some(e) = args.force.eps_deg {
        cfg.eps_deg = e;
    }
    let mode = cfg.mode;
    let cfg = cfg.with_mode(mode);
    cfg.validate()?;
    Ok(cfg)
}

fn deg_cell(v: Option<f64>) -> String {
    v.map(|d| ((d * 1e4).round() / 1e4).to_string()).unwrap_or_default()
}

/// History as CSV: `iteration,angular_deg,crossing_deg`, empty cells for
/// undefined resolutions.
pub fn history_csv(rows: &[HistoryRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["iteration", "angular_deg", "crossing_deg"])?;
    for r in rows {
        w.write_record([r.iteration.to_string(), deg_cell(r.angular_deg), deg_cell(r.crossing_deg)])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn layout(args: &LayoutArgs) -> Result<String> {
    let g = load_graph(&args.input)?;
    let init = match &args.init {
        Some(p) => load_layout(p, &g)?,
        None => organic_layout(&g, args.seed, args.pre_iters),
    };
    check_overlaps(&g, &init).context("initial layout")?;
    let cfg = force_config(args, &g, &init)?;
    let result = run(&g, &init, &cfg)?;
    check_overlaps(&g, &result.final_layout).context("final layout")?;
    if let Some(p) = &args.history {
        write(p, &history_csv(&result.history)?)?;
    }
    emit(&g, &result.final_layout, &args.output)
}

pub fn metrics(args: &MetricsArgs) -> Result<String> {
    let g = load_graph(&args.input)?;
    let l = load_layout(&args.layout, &g)?;
    check_overlaps(&g, &l)?;
    metrics_json(&g, &l)
}

pub fn bench(args: &BenchArgs) -> Result<String> {
    let config = args.config.as_deref().map(read).transpose()?;
    let opts = BenchOptions {
        modes: args.modes.clone(),
        seed: args.seed,
        pre_iters: args.pre_iters,
        max_iters: args.max_iters,
        eps_deg: args.eps_deg,
        config,
    };
    let graphs = load_graphs(&args.dir)?;
    if graphs.is_empty() {
        bail!("no *.{} files under {}", crate::bench::EDGE_LIST_EXT, args.dir.display());
    }
    let rows = run_bench(&graphs, &opts);
    match &args.out {
        Some(p) => {
            let f = fs::File::create(p).with_context(|| format!("writing {}", p.display()))?;
            write_csv(&rows, f)?;
            Ok(summary(&rows, &opts.modes))
        }
        None => {
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            Ok(String::from_utf8(buf)?)
        }
    }
}
