//! Force-directed refinement of a drawing towards high total resolution.
//!
//! Three force families act on the nodes:
//!
//! 1. logarithmic springs along the graph's edges;
//! 2. for every crossing, springs and angle forces between endpoints that
//!    are consecutive counter-clockwise around the crossing point, pushing
//!    the crossing towards a right angle;
//! 3. for every node of degree at least two, springs and angle forces
//!    between consecutive neighbors, pushing every gap towards `2π/d(u)`.
//!
//! The angle forces point perpendicular to the bisector of the angle they
//! act on, with magnitude `|target - θ| / θ`. A [`Mode`] selects the families.
//! Two baselines are provided for comparison: classic Eades (springs plus
//! inverse-square node repulsion) and an edge-repulsion variant that keeps
//! only the springs and the angular angle forces.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::{bisector, ccw_angle, perp, unit_from_to, Point2, Vec2};
use crate::graph::{random_layout, Graph, Layout};
use crate::metrics::{find_crossings, report_with_crossings, sorted_neighbors, Crossing};

/// Largest magnitude factor any single contribution may have, as a multiple
/// of its stiffness constant.
pub const MAX_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForceError {
    #[error("invalid force configuration: {0}")]
    InvalidConfig(String),
    #[error("config line {line}: {msg}")]
    ConfigSyntax { line: usize, msg: String },
    #[error("layout diverged (non-finite position) at iteration {iteration}")]
    Diverged { iteration: usize },
    #[error("layout has {found} positions for a graph of {expected} nodes")]
    SizeMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Mixed,
    CrossingOnly,
    AngularOnly,
    Eades,
    EdgeRepulsionBaseline,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Mixed,
        Mode::CrossingOnly,
        Mode::AngularOnly,
        Mode::Eades,
        Mode::EdgeRepulsionBaseline,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Mixed => "mixed",
            Mode::CrossingOnly => "crossing-only",
            Mode::AngularOnly => "angular-only",
            Mode::Eades => "eades",
            Mode::EdgeRepulsionBaseline => "edge-repulsion-baseline",
        }
    }

    fn crossing_forces(self) -> bool {
        matches!(self, Mode::Mixed | Mode::CrossingOnly)
    }

    fn angular_springs(self) -> bool {
        matches!(self, Mode::Mixed | Mode::AngularOnly)
    }

    fn angular_angles(self) -> bool {
        matches!(
            self,
            Mode::Mixed | Mode::AngularOnly | Mode::EdgeRepulsionBaseline
        )
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = ForceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| ForceError::InvalidConfig(format!("unknown mode {s:?}")))
    }
}

/// Constants of the force model and of the iteration protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceConfig {
    pub c_spring: f64,
    /// Natural length of the edge springs.
    pub l_spring: f64,
    pub c_spring_cros: f64,
    pub c_ang_cros: f64,
    pub c_spring_ang: f64,
    pub c_ang_ang: f64,
    /// Node-node repulsion constant of the Eades baseline.
    pub c_rep: f64,
    /// Displacement per unit of force.
    pub step: f64,
    /// Cap on a single node's displacement per iteration.
    pub max_move: f64,
    /// Convergence threshold on the per-iteration improvement of both
    /// resolutions, in degrees.
    pub eps_deg: f64,
    /// Number of consecutive settled iterations required before stopping.
    pub patience: usize,
    pub max_iters: usize,
    pub mode: Mode,
}

impl Default for ForceConfig {
    fn default() -> Self {
        ForceConfig {
            c_spring: 2.0,
            l_spring: 1.0,
            c_spring_cros: 1.0,
            c_ang_cros: 1.0,
            c_spring_ang: 1.0,
            c_ang_ang: 1.0,
            c_rep: 1.0,
            step: 0.002,
            max_move: 0.1,
            eps_deg: 0.001,
            patience: 20,
            max_iters: 100_000,
            mode: Mode::Mixed,
        }
    }
}

impl ForceConfig {
    /// Defaults with every length scaled to the mean edge length of
    /// `layout`, and the constants of unused families zeroed for `mode`.
    pub fn for_layout(g: &Graph, layout: &Layout, mode: Mode) -> Self {
        let mut cfg = ForceConfig::default();
        if let Some(len) = layout.mean_edge_length(g).filter(|&l| l > 0.0 && l.is_finite()) {
            cfg.rescale(len);
        }
        cfg.with_mode(mode)
    }

    /// Set the natural length and scale the step and displacement cap with it.
    pub fn rescale(&mut self, l_spring: f64) {
        let k = l_spring / self.l_spring;
        self.l_spring = l_spring;
        self.step *= k;
        self.max_move *= k;
    }

    /// Switch mode, zeroing the constants the mode turns off.
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        match mode {
            Mode::CrossingOnly => {
                self.c_spring_ang = 0.0;
                self.c_ang_ang = 0.0;
            }
            Mode::AngularOnly => {
                self.c_spring_cros = 0.0;
                self.c_ang_cros = 0.0;
            }
            _ => {}
        }
        self
    }

    pub fn validate(&self) -> Result<(), ForceError> {
        let positive = [
            ("c_spring", self.c_spring),
            ("l_spring", self.l_spring),
            ("step", self.step),
            ("max_move", self.max_move),
            ("eps_deg", self.eps_deg),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ForceError::InvalidConfig(format!("{name} must be > 0, got {v}")));
            }
        }
        let nonneg = [
            ("c_spring_cros", self.c_spring_cros),
            ("c_ang_cros", self.c_ang_cros),
            ("c_spring_ang", self.c_spring_ang),
            ("c_ang_ang", self.c_ang_ang),
            ("c_rep", self.c_rep),
        ];
        for (name, v) in nonneg {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(ForceError::InvalidConfig(format!("{name} must be >= 0, got {v}")));
            }
        }
        if self.max_iters == 0 {
            return Err(ForceError::InvalidConfig("max_iters must be > 0".into()));
        }
        if self.patience == 0 {
            return Err(ForceError::InvalidConfig("patience must be > 0".into()));
        }
        match self.mode {
            Mode::CrossingOnly if self.c_spring_ang != 0.0 || self.c_ang_ang != 0.0 => Err(
                ForceError::InvalidConfig("crossing-only mode requires c_spring_ang = c_ang_ang = 0".into()),
            ),
            Mode::AngularOnly if self.c_spring_cros != 0.0 || self.c_ang_cros != 0.0 => Err(
                ForceError::InvalidConfig("angular-only mode requires c_spring_cros = c_ang_cros = 0".into()),
            ),
            _ => Ok(()),
        }
    }

    /// Override fields from `key = value` lines. Keys are the field names;
    /// `#` starts a comment line.
    pub fn apply_kv(&mut self, text: &str) -> Result<(), ForceError> {
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |msg: String| ForceError::ConfigSyntax { line: line_no, msg };
            let (key, value) = trimmed
                .split_once('=')
                .ok_or_else(|| err("expected key=value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let real = || -> Result<f64, ForceError> {
                value
                    .parse::<f64>()
                    .map_err(|_| err(format!("{key}: {value:?} is not a number")))
            };
            match key {
                "c_spring" => self.c_spring = real()?,
                "l_spring" => self.l_spring = real()?,
                "c_spring_cros" => self.c_spring_cros = real()?,
                "c_ang_cros" => self.c_ang_cros = real()?,
                "c_spring_ang" => self.c_spring_ang = real()?,
                "c_ang_ang" => self.c_ang_ang = real()?,
                "c_rep" => self.c_rep = real()?,
                "step" => self.step = real()?,
                "max_move" => self.max_move = real()?,
                "eps_deg" => self.eps_deg = real()?,
                "max_iters" => {
                    self.max_iters = value
                        .parse()
                        .map_err(|_| err(format!("max_iters: {value:?} is not an integer")))?
                }
                "patience" => {
                    self.patience = value
                        .parse()
                        .map_err(|_| err(format!("patience: {value:?} is not an integer")))?
                }
                "mode" => self.mode = value.parse().map_err(|e: ForceError| err(e.to_string()))?,
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        Ok(())
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn clamp_factor(x: f64) -> f64 {
    x.clamp(-MAX_FACTOR, MAX_FACTOR)
}

fn log_spring(c: f64, from: Point2, to: Point2, natural: f64) -> Option<Vec2> {
    let dir = unit_from_to(from, to).ok()?;
    if !(natural > 0.0) {
        return None;
    }
    let factor = clamp_factor((from.distance(to) / natural).ln());
    Some(dir * (c * factor))
}

/// Edge spring on `u`: `c_spring · log(|pu - pv| / l_spring)` along `u -> v`.
/// Positive (attractive) when stretched. `None` for coincident points.
pub fn spring_force(pu: Point2, pv: Point2, cfg: &ForceConfig) -> Option<Vec2> {
    log_spring(cfg.c_spring, pu, pv, cfg.l_spring)
}

/// Spring on crossing-edge endpoint `a` towards endpoint `b` of the other
/// edge. Its natural length is the distance `a` and `b` would have if the
/// edges met at a right angle at `pc`.
pub fn crossing_spring_force(pa: Point2, pb: Point2, pc: Point2, cfg: &ForceConfig) -> Option<Vec2> {
    if pa == pc || pb == pc {
        return None;
    }
    let natural = (pc.distance(pa).powi(2) + pc.distance(pb).powi(2)).sqrt();
    log_spring(cfg.c_spring_cros, pa, pb, natural)
}

/// `|π/2 - θ| / θ`
pub fn crossing_magnitude(theta: f64) -> f64 {
    (FRAC_PI_2 - theta).abs() / theta
}

/// `|2π/d - θ| / θ`
pub fn angular_magnitude(theta: f64, degree: usize) -> f64 {
    (TAU / degree as f64 - theta).abs() / theta
}

/// Force on `a` from the angle that rays `center -> a` and `center -> b`
/// form. Perpendicular to the bisector; pushes `a` away from `b` while the
/// angle is below `target` and towards it above. The force on `b` is
/// obtained by swapping the arguments and is the exact negation.
fn angle_force(
    c: f64,
    pa: Point2,
    pb: Point2,
    center: Point2,
    theta: f64,
    target: f64,
    magnitude: f64,
) -> Option<Vec2> {
    let s = sign(theta - target);
    if s == 0.0 {
        return Some(Vec2::ZERO);
    }
    let ua = pa - center;
    let ub = pb - center;
    let dir = perp(bisector(ua, ub).ok()?).ok()?;
    // `dir` points from a's side of the bisector towards b's side when b is
    // counter-clockwise from a.
    let orient = if ua.cross(ub) >= 0.0 { 1.0 } else { -1.0 };
    Some(dir * (c * s * clamp_factor(magnitude) * orient))
}

/// Angle force on crossing-edge endpoint `a` due to `b`, the endpoint of the
/// other edge next to it around the crossing point `pc`.
pub fn crossing_angle_force(pa: Point2, pb: Point2, pc: Point2, cfg: &ForceConfig) -> Option<Vec2> {
    let ua = pa - pc;
    let ub = pb - pc;
    if ua.is_zero() || ub.is_zero() {
        return None;
    }
    // Unsigned angle in [0, π]; the orientation is handled by angle_force.
    let theta = ua.cross(ub).abs().atan2(ua.dot(ub));
    if theta <= 0.0 || theta >= PI {
        return None;
    }
    angle_force(
        cfg.c_ang_cros,
        pa,
        pb,
        pc,
        theta,
        FRAC_PI_2,
        crossing_magnitude(theta),
    )
}

/// Spring between consecutive neighbors `vi`, `vj` of `u` (force on `vi`).
/// Natural length: the distance they would have at angle `2π/degree`.
pub fn angular_spring_force(
    pvi: Point2,
    pvj: Point2,
    u: Point2,
    degree: usize,
    cfg: &ForceConfig,
) -> Option<Vec2> {
    if pvi == u || pvj == u || degree == 0 {
        return None;
    }
    let (ei, ej) = (u.distance(pvi), u.distance(pvj));
    let natural_sq = ei * ei + ej * ej - 2.0 * ei * ej * (TAU / degree as f64).cos();
    log_spring(cfg.c_spring_ang, pvi, pvj, natural_sq.max(0.0).sqrt())
}

/// Angle force on `vi` from the counter-clockwise gap `θ` from edge `u-vi`
/// to edge `u-vj`, pushing `θ` towards `2π/degree`.
pub fn angular_angle_force(
    pvi: Point2,
    pvj: Point2,
    u: Point2,
    degree: usize,
    cfg: &ForceConfig,
) -> Option<Vec2> {
    if degree == 0 {
        return None;
    }
    let theta = ccw_angle(pvi - u, pvj - u).ok()?;
    if theta <= 0.0 {
        return None;
    }
    let s = sign(theta - TAU / degree as f64);
    if s == 0.0 {
        return Some(Vec2::ZERO);
    }
    // The bisector of the two unit directions lies inside the gap only for
    // θ < π; past π it flips to the other side, and so does its
    // perpendicular, which keeps the sign convention below valid.
    let dir = perp(bisector(pvi - u, pvj - u).ok()?).ok()?;
    Some(dir * (cfg.c_ang_ang * s * clamp_factor(angular_magnitude(theta, degree))))
}

/// Inverse-square repulsion of the Eades baseline on `u`, scaled so it is
/// `c_rep` at the natural spring length.
pub fn repulsion_force(pu: Point2, pv: Point2, cfg: &ForceConfig) -> Option<Vec2> {
    let dir = unit_from_to(pv, pu).ok()?;
    let d = pu.distance(pv) / cfg.l_spring;
    Some(dir * (cfg.c_rep * clamp_factor(1.0 / (d * d))))
}

fn add(forces: &mut [Vec2], node: usize, f: Option<Vec2>) {
    if let Some(f) = f {
        forces[node] += f;
    }
}

/// Net force on every node.
pub fn accumulate_forces(g: &Graph, l: &Layout, cfg: &ForceConfig) -> Vec<Vec2> {
    let crossings = if cfg.mode.crossing_forces() {
        find_crossings(g, l)
    } else {
        Vec::new()
    };
    accumulate_with_crossings(g, l, &crossings, cfg)
}

/// [`accumulate_forces`] with the crossing list supplied by the caller.
/// Contributions are summed in a fixed order: edge springs by edge, crossing
/// forces by crossing, angular forces by node, then repulsion by node pair.
pub fn accumulate_with_crossings(
    g: &Graph,
    l: &Layout,
    crossings: &[Crossing],
    cfg: &ForceConfig,
) -> Vec<Vec2> {
    let pos = &l.positions;
    let mut forces = vec![Vec2::ZERO; g.node_count()];

    for &(a, b) in g.edges() {
        add(&mut forces, a, spring_force(pos[a], pos[b], cfg));
        add(&mut forces, b, spring_force(pos[b], pos[a], cfg));
    }

    if cfg.mode.crossing_forces() {
        for c in crossings {
            add_crossing_forces(g, pos, c, cfg, &mut forces);
        }
    }

    let (springs, angles) = (cfg.mode.angular_springs(), cfg.mode.angular_angles());
    if springs || angles {
        for u in 0..g.node_count() {
            let d = g.degree(u);
            if d < 2 {
                continue;
            }
            let ring = sorted_neighbors(g, l, u);
            for k in 0..d {
                let vi = ring[k].0;
                let vj = ring[(k + 1) % d].0;
                if springs {
                    add(&mut forces, vi, angular_spring_force(pos[vi], pos[vj], pos[u], d, cfg));
                    add(&mut forces, vj, angular_spring_force(pos[vj], pos[vi], pos[u], d, cfg));
                }
                if angles {
                    let f = angular_angle_force(pos[vi], pos[vj], pos[u], d, cfg);
                    add(&mut forces, vi, f);
                    add(&mut forces, vj, f.map(|f| -f));
                }
            }
        }
    }

    if cfg.mode == Mode::Eades {
        for u in 0..g.node_count() {
            for v in u + 1..g.node_count() {
                if g.has_edge(u, v) {
                    continue;
                }
                add(&mut forces, u, repulsion_force(pos[u], pos[v], cfg));
                add(&mut forces, v, repulsion_force(pos[v], pos[u], cfg));
            }
        }
    }
    forces
}

fn add_crossing_forces(
    g: &Graph,
    pos: &[Point2],
    c: &Crossing,
    cfg: &ForceConfig,
    forces: &mut [Vec2],
) {
    let (a, b) = g.edges()[c.edge_a];
    let (x, y) = g.edges()[c.edge_b];
    let mut ends = [a, b, x, y].map(|v| (v, (pos[v] - c.point).angle()));
    ends.sort_by(|p, q| p.1.total_cmp(&q.1).then(p.0.cmp(&q.0)));
    for k in 0..4 {
        let i = ends[k].0;
        let j = ends[(k + 1) % 4].0;
        add(forces, i, crossing_spring_force(pos[i], pos[j], c.point, cfg));
        add(forces, j, crossing_spring_force(pos[j], pos[i], c.point, cfg));
        let f = crossing_angle_force(pos[i], pos[j], c.point, cfg);
        add(forces, i, f);
        add(forces, j, f.map(|f| -f));
    }
}

/// Move every node by `step · force`, capped at `max_move`.
fn apply_forces(l: &Layout, forces: &[Vec2], cfg: &ForceConfig) -> Layout {
    let positions = l
        .positions
        .iter()
        .zip(forces)
        .map(|(&p, &f)| {
            let mut d = f * cfg.step;
            let n = d.norm();
            if n > cfg.max_move {
                d = d * (cfg.max_move / n);
            }
            p + d
        })
        .collect();
    let mut out = Layout::new(positions);
    separate_coincident(&mut out, cfg.l_spring);
    out
}

/// Nudge nodes that ended up on top of an earlier node by a tiny seeded
/// offset. Returns the number of nodes moved.
pub fn separate_coincident(l: &mut Layout, scale: f64) -> usize {
    let tol = 1e-9 * scale;
    let mut order: Vec<usize> = (0..l.len()).collect();
    order.sort_by(|&i, &j| l.positions[i].x.total_cmp(&l.positions[j].x).then(i.cmp(&j)));
    let mut moved = 0;
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if l.positions[j].x - l.positions[i].x > tol {
                break;
            }
            if l.positions[i].distance(l.positions[j]) <= tol {
                let victim = i.max(j);
                let p = l.positions[victim];
                let seed = (victim as u64) ^ p.x.to_bits() ^ p.y.to_bits().rotate_left(17);
                let angle = ChaCha8Rng::seed_from_u64(seed).gen_range(0.0..TAU);
                l.positions[victim] = p + Vec2::new(angle.cos(), angle.sin()) * (1e-6 * scale);
                moved += 1;
            }
        }
    }
    moved
}

/// One iteration: every node moves by `step` times its net force.
pub fn step(g: &Graph, l: &Layout, cfg: &ForceConfig) -> Layout {
    apply_forces(l, &accumulate_forces(g, l, cfg), cfg)
}

/// Step of the initial Eades pass, as a multiple of the mean edge length.
pub const ORGANIC_STEP: f64 = 0.05;

/// Seeded starting layout: uniform random positions in a box of side
/// `10·√n`, then `iterations` fixed Eades steps to untangle them.
pub fn organic_layout(g: &Graph, seed: u64, iterations: usize) -> Layout {
    let side = 10.0 * (g.node_count().max(1) as f64).sqrt();
    let mut layout = random_layout(g, seed, side);
    let mut cfg = ForceConfig::for_layout(g, &layout, Mode::Eades);
    cfg.step = ORGANIC_STEP * cfg.l_spring;
    for _ in 0..iterations {
        layout = step(g, &layout, &cfg);
    }
    layout
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryRow {
    pub iteration: usize,
    pub angular_deg: Option<f64>,
    pub crossing_deg: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub final_layout: Layout,
    pub iterations: usize,
    pub history: Vec<HistoryRow>,
    pub converged: bool,
}

/// True unless `cur` improves on `prev` by at least `eps`. Losing every
/// crossing counts as an improvement, gaining the first one does not.
fn settled(prev: Option<f64>, cur: Option<f64>, eps: f64) -> bool {
    match (prev, cur) {
        (Some(a), Some(b)) => b - a < eps,
        (Some(_), None) => false,
        (None, _) => true,
    }
}

/// Iterate [`step`] until neither resolution improves by `eps_deg` degrees
/// from one iteration to the next for `patience` iterations in a row, or
/// `max_iters` is reached.
pub fn run(g: &Graph, init: &Layout, cfg: &ForceConfig) -> Result<RunResult, ForceError> {
    cfg.validate()?;
    if init.len() != g.node_count() {
        return Err(ForceError::SizeMismatch {
            expected: g.node_count(),
            found: init.len(),
        });
    }
    let mut layout = init.clone();
    let mut crossings = find_crossings(g, &layout);
    let first = report_with_crossings(g, &layout, &crossings);
    let (mut prev_ang, mut prev_cr) = (
        first.angular.map(f64::to_degrees),
        first.crossing.map(f64::to_degrees),
    );
    let mut history = Vec::new();
    let mut converged = false;
    let mut calm = 0;

    for iteration in 1..=cfg.max_iters {
        let forces = accumulate_with_crossings(g, &layout, &crossings, cfg);
        layout = apply_forces(&layout, &forces, cfg);
        if !layout.is_finite() {
            return Err(ForceError::Diverged { iteration });
        }
        crossings = find_crossings(g, &layout);
        let report = report_with_crossings(g, &layout, &crossings);
        let ang = report.angular.map(f64::to_degrees);
        let cr = report.crossing.map(f64::to_degrees);
        history.push(HistoryRow {
            iteration,
            angular_deg: ang,
            crossing_deg: cr,
        });
        if settled(prev_ang, ang, cfg.eps_deg) && settled(prev_cr, cr, cfg.eps_deg) {
            calm += 1;
            if calm >= cfg.patience {
                converged = true;
                break;
            }
        } else {
            calm = 0;
        }
        prev_ang = ang;
        prev_cr = cr;
    }

    Ok(RunResult {
        final_layout: layout,
        iterations: history.len(),
        history,
        converged,
    })
}
