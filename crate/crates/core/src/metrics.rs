//! Angular, crossing and total resolution of a straight-line drawing.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::geometry::{acute_between_lines, orient, segment_intersection, Point2};
use crate::graph::{Graph, Layout};

/// A proper crossing between two non-adjacent edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    /// Index into [`Graph::edges`]; always `edge_a < edge_b`.
    pub edge_a: usize,
    pub edge_b: usize,
    pub point: Point2,
    pub acute_angle: f64,
}

/// The smallest angle between consecutive edges around a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularWitness {
    pub node: usize,
    /// Neighbors bounding the gap, in counter-clockwise order.
    pub first: usize,
    pub second: usize,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionReport {
    pub angular: Option<f64>,
    pub crossing: Option<f64>,
    pub total: Option<f64>,
    pub angular_witness: Option<AngularWitness>,
    pub crossing_witness: Option<Crossing>,
    pub crossing_count: usize,
}

/// All proper crossings, ordered by `(edge_a, edge_b)`.
pub fn find_crossings(g: &Graph, l: &Layout) -> Vec<Crossing> {
    let edges = g.edges();
    let pos = &l.positions;
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if let Some(point) = segment_intersection((pos[a], pos[b]), (pos[c], pos[d])) {
                out.push(Crossing {
                    edge_a: i,
                    edge_b: j,
                    point,
                    acute_angle: acute_between_lines(pos[b] - pos[a], pos[d] - pos[c]),
                });
            }
        }
    }
    out
}

/// Pairs of non-adjacent edges that lie on a common line and share more
/// than a point. Such drawings are degenerate rather than crossing.
pub fn collinear_overlaps(g: &Graph, l: &Layout) -> Vec<(usize, usize)> {
    let edges = g.edges();
    let pos = &l.positions;
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let (p, q, r, s) = (pos[a], pos[b], pos[c], pos[d]);
            if orient(p, q, r) != 0.0 || orient(p, q, s) != 0.0 {
                continue;
            }
            // Project onto the segment direction and test interval overlap.
            let dir = q - p;
            let t = |x: Point2| (x - p).dot(dir);
            let (lo1, hi1) = (0.0f64, dir.dot(dir));
            let (lo2, hi2) = (t(r).min(t(s)), t(r).max(t(s)));
            if lo1.max(lo2) < hi1.min(hi2) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Smallest cyclic gap between incident edges at node `u`, with the pair
/// that bounds it. `None` below degree 2.
pub fn node_angular_resolution(g: &Graph, l: &Layout, u: usize) -> Option<AngularWitness> {
    let sorted = sorted_neighbors(g, l, u);
    if sorted.len() < 2 {
        return None;
    }
    let mut best: Option<AngularWitness> = None;
    for k in 0..sorted.len() {
        let (v, av) = sorted[k];
        let (w, aw) = sorted[(k + 1) % sorted.len()];
        let gap = if k + 1 == sorted.len() { aw + TAU - av } else { aw - av };
        if best.is_none_or(|b| gap < b.angle) {
            best = Some(AngularWitness {
                node: u,
                first: v,
                second: w,
                angle: gap,
            });
        }
    }
    best
}

/// Neighbors of `u` with their direction angle in `[0, 2π)`, sorted
/// counter-clockwise (ties broken by node index).
pub fn sorted_neighbors(g: &Graph, l: &Layout, u: usize) -> Vec<(usize, f64)> {
    let pu = l.positions[u];
    let mut out: Vec<(usize, f64)> = g
        .neighbors(u)
        .iter()
        .map(|&v| (v, (l.positions[v] - pu).angle()))
        .collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    out
}

fn angular_witness(g: &Graph, l: &Layout) -> Option<AngularWitness> {
    (0..g.node_count())
        .filter_map(|u| node_angular_resolution(g, l, u))
        .fold(None, |best: Option<AngularWitness>, w| match best {
            Some(b) if b.angle <= w.angle => Some(b),
            _ => Some(w),
        })
}

fn crossing_witness(crossings: &[Crossing]) -> Option<Crossing> {
    crossings.iter().fold(None, |best: Option<Crossing>, c| match best {
        Some(b) if b.acute_angle <= c.acute_angle => Some(b),
        _ => Some(*c),
    })
}

pub fn angular_resolution(g: &Graph, l: &Layout) -> Option<f64> {
    angular_witness(g, l).map(|w| w.angle)
}

pub fn crossing_resolution(g: &Graph, l: &Layout) -> Option<f64> {
    crossing_witness(&find_crossings(g, l)).map(|c| c.acute_angle)
}

pub fn total_resolution(g: &Graph, l: &Layout) -> ResolutionReport {
    report_with_crossings(g, l, &find_crossings(g, l))
}

/// Build a report from an already computed crossing list.
pub fn report_with_crossings(g: &Graph, l: &Layout, crossings: &[Crossing]) -> ResolutionReport {
    let angular_witness = angular_witness(g, l);
    let crossing_witness = crossing_witness(crossings);
    let angular = angular_witness.map(|w| w.angle);
    let crossing = crossing_witness.map(|c| c.acute_angle);
    ResolutionReport {
        angular,
        crossing,
        total: min_defined(angular, crossing),
        angular_witness,
        crossing_witness,
        crossing_count: crossings.len(),
    }
}

pub fn min_defined(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Radians to degrees rounded to 4 decimals, for user-facing output.
pub fn to_degrees_rounded(rad: f64) -> f64 {
    (rad.to_degrees() * 1e4).round() / 1e4
}

/// JSON shape of a report. Absent resolutions serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub angular_deg: Option<f64>,
    pub crossing_deg: Option<f64>,
    pub total_deg: Option<f64>,
    pub crossings: usize,
}

impl From<&ResolutionReport> for ReportJson {
    fn from(r: &ResolutionReport) -> Self {
        ReportJson {
            angular_deg: r.angular.map(to_degrees_rounded),
            crossing_deg: r.crossing.map(to_degrees_rounded),
            total_deg: r.total.map(to_degrees_rounded),
            crossings: r.crossing_count,
        }
    }
}
