//! Closed-form drawings of complete and complete bipartite graphs with
//! provably good total resolution.
//!
//! * [`circular_complete`] puts `K_n` on a regular polygon: angular
//!   resolution `π/n`, crossing resolution `2π/n`.
//! * [`two_layer_bipartite`] draws `K_{m,n}` on the top and bottom side of a
//!   square, fixing node positions with fans of rays from the square's
//!   corners. Its angular resolution is the last fan gap seen from a bottom
//!   corner, which is at least half the fan step.
//! * [`grid_snap`] scales that drawing so the first top gap is one unit and
//!   rounds every node down onto the integer grid.

use std::f64::consts::{FRAC_PI_4, TAU};

use thiserror::Error;

use crate::geometry::Point2;
use crate::graph::{Graph, GridLayout, Layout};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("complete graph construction needs n >= 3, got {0}")]
    TooFewNodes(usize),
    #[error("both sides of a bipartite construction need at least 2 nodes (got {m} and {n}); draw stars with the circular or force-directed layouts instead")]
    StarBipartite { m: usize, n: usize },
    #[error("size parameter must be positive and finite, got {0}")]
    BadSize(f64),
}

/// Numbers describing the top fan of a two-layer construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteConstructionTrace {
    /// Fan step of the larger side, `π / (4 (m - 1))`.
    pub phi: f64,
    /// Fan step of the smaller side.
    pub psi: f64,
    /// Square side.
    pub side: f64,
    /// Horizontal gaps between consecutive top nodes, walking away from the
    /// top-right corner. Strictly increasing.
    pub gaps: Vec<f64>,
    /// Angles at the bottom-left corner between rays to consecutive top
    /// nodes, walking from the top-left corner towards the top-right one.
    /// Strictly decreasing; the last one is the drawing's angular resolution.
    pub corner_angles: Vec<f64>,
    /// True when the caller's second class was larger and went on top.
    pub swapped: bool,
}

/// `K_n` on a circle of radius `radius`, node `k` at angle `2πk/n`.
pub fn circular_complete(n: usize, radius: f64) -> Result<(Graph, Layout), ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::TooFewNodes(n));
    }
    check_size(radius)?;
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    let g = Graph::from_indexed_edges(n, edges).expect("complete graph is simple");
    let positions = (0..n)
        .map(|k| {
            let a = TAU * k as f64 / n as f64;
            Point2::new(radius * a.cos(), radius * a.sin())
        })
        .collect();
    Ok((g, Layout::new(positions)))
}

fn check_size(s: f64) -> Result<(), ConstructionError> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(ConstructionError::BadSize(s))
    }
}

/// `tan(k · π/(4 (count-1)))`, pinned to exactly 0 and 1 at the fan ends.
fn fan_tan(k: usize, count: usize) -> f64 {
    if k == 0 {
        0.0
    } else if k + 1 == count {
        1.0
    } else {
        (k as f64 * FRAC_PI_4 / (count - 1) as f64).tan()
    }
}

/// Two-layer drawing of `K_{m,n}` in the square `[0, side]²`.
///
/// Nodes of the first class are named `a1..am`, the second `b1..bn`, and the
/// graph lists the first class first. The larger class sits on the top side
/// `y = side`, its `i`-th node at `x = side - side·tan((i-1)φ)`; the smaller
/// class sits on the bottom side, its `j`-th node at `x = side·tan((j-1)ψ)`.
pub fn two_layer_bipartite(
    m: usize,
    n: usize,
    side: f64,
) -> Result<(Graph, Layout, BipartiteConstructionTrace), ConstructionError> {
    if m < 2 || n < 2 {
        return Err(ConstructionError::StarBipartite { m, n });
    }
    check_size(side)?;
    let swapped = m < n;
    let (top, bottom) = if swapped { (n, m) } else { (m, n) };

    let top_x: Vec<f64> = (0..top).map(|k| side - side * fan_tan(k, top)).collect();
    let bottom_x: Vec<f64> = (0..bottom).map(|k| side * fan_tan(k, bottom)).collect();

    let gaps: Vec<f64> = top_x.windows(2).map(|w| w[0] - w[1]).collect();
    // Top nodes from the top-left corner (index top-1) back to the
    // top-right corner (index 0), as seen from the origin.
    let corner_angles: Vec<f64> = (1..top)
        .rev()
        .map(|k| (top_x[k - 1] / side).atan() - (top_x[k] / side).atan())
        .collect();

    let first: Vec<Point2>;
    let second: Vec<Point2>;
    let top_pts: Vec<Point2> = top_x.iter().map(|&x| Point2::new(x, side)).collect();
    let bottom_pts: Vec<Point2> = bottom_x.iter().map(|&x| Point2::new(x, 0.0)).collect();
    if swapped {
        first = bottom_pts;
        second = top_pts;
    } else {
        first = top_pts;
        second = bottom_pts;
    }

    let g = complete_bipartite(m, n);
    let mut positions = first;
    positions.extend(second);

    let trace = BipartiteConstructionTrace {
        phi: FRAC_PI_4 / (top - 1) as f64,
        psi: FRAC_PI_4 / (bottom - 1) as f64,
        side,
        gaps,
        corner_angles,
        swapped,
    };
    Ok((g, Layout::new(positions), trace))
}

/// `K_{m,n}` with ids `a1..am`, `b1..bn`.
pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let ids = (1..=m)
        .map(|i| format!("a{i}"))
        .chain((1..=n).map(|j| format!("b{j}")));
    let mut g = Graph::new(ids).expect("ids are distinct");
    for i in 1..=m {
        for j in 1..=n {
            g.add_edge(&format!("a{i}"), &format!("b{j}"))
                .expect("complete bipartite graph is simple");
        }
    }
    g
}

/// Side length at which the first top gap is exactly one unit.
pub fn unit_gap_side(m: usize, n: usize) -> f64 {
    let top = m.max(n);
    1.0 / (FRAC_PI_4 / (top - 1) as f64).tan()
}

// Values within this relative distance of an integer are treated as that
// integer before rounding; 1/tan(π/4) is not exactly 1 in floating point.
const SNAP_TOLERANCE: f64 = 1e-9;

fn near_integer(x: f64) -> Option<f64> {
    let r = x.round();
    ((x - r).abs() <= SNAP_TOLERANCE * x.abs().max(1.0)).then_some(r)
}

fn snap_floor(x: f64) -> i64 {
    near_integer(x).unwrap_or_else(|| x.floor()) as i64
}

fn snap_ceil(x: f64) -> i64 {
    near_integer(x).unwrap_or_else(|| x.ceil()) as i64
}

/// Integer grid version of [`two_layer_bipartite`].
///
/// Built at side `1/tan φ`; the top layer is raised to the next grid line
/// and every x coordinate is rounded down.
pub fn grid_snap(m: usize, n: usize) -> Result<(Graph, GridLayout), ConstructionError> {
    if m < 2 || n < 2 {
        return Err(ConstructionError::StarBipartite { m, n });
    }
    let side = unit_gap_side(m, n);
    let (g, layout, _) = two_layer_bipartite(m, n, side)?;
    let height = snap_ceil(side);
    let positions = layout
        .positions
        .iter()
        .map(|p| {
            let y = if p.y > 0.0 { height } else { 0 };
            (snap_floor(p.x), y)
        })
        .collect();
    Ok((g, GridLayout { positions }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{angular_resolution, crossing_resolution, find_crossings, total_resolution};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn k4_square() {
        let (g, l) = circular_complete(4, 1.0).unwrap();
        let expect = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (p, (x, y)) in l.positions.iter().zip(expect) {
            assert_abs_diff_eq!(p.x, x, epsilon = 1e-15);
            assert_abs_diff_eq!(p.y, y, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(angular_resolution(&g, &l).unwrap(), PI / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(crossing_resolution(&g, &l).unwrap(), FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn k6_and_triangle() {
        let (g, l) = circular_complete(6, 2.5).unwrap();
        let r = total_resolution(&g, &l);
        assert_abs_diff_eq!(r.angular.unwrap().to_degrees(), 30.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.crossing.unwrap().to_degrees(), 60.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.total.unwrap().to_degrees(), 30.0, epsilon = 1e-9);

        let (g, l) = circular_complete(3, 1.0).unwrap();
        let r = total_resolution(&g, &l);
        assert_eq!(r.crossing, None);
        assert_abs_diff_eq!(r.angular.unwrap().to_degrees(), 60.0, epsilon = 1e-9);
    }

    #[test]
    fn circular_rejects_small_n() {
        assert_eq!(circular_complete(2, 1.0).unwrap_err(), ConstructionError::TooFewNodes(2));
        assert!(circular_complete(5, 0.0).is_err());
    }

    #[test]
    fn k22_is_unit_square() {
        let (g, l, trace) = two_layer_bipartite(2, 2, 1.0).unwrap();
        let pts: Vec<(f64, f64)> = l.positions.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(pts, vec![(1.0, 1.0), (0.0, 1.0), (0.0, 0.0), (1.0, 0.0)]);
        // Brute force over the four edges: the two diagonals cross at 90°,
        // every corner sees a side and a diagonal at 45°.
        assert_eq!(find_crossings(&g, &l).len(), 1);
        assert_abs_diff_eq!(angular_resolution(&g, &l).unwrap(), PI / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(crossing_resolution(&g, &l).unwrap(), FRAC_PI_2, epsilon = 1e-12);
        assert_eq!(trace.corner_angles.len(), 1);
        assert_abs_diff_eq!(trace.corner_angles[0], PI / 4.0, epsilon = 1e-15);
    }

    #[test]
    fn top_offsets_for_m3() {
        let (_, l, trace) = two_layer_bipartite(3, 2, 1.0).unwrap();
        let offsets: Vec<f64> = l.positions[..3].iter().map(|p| 1.0 - p.x).collect();
        assert_eq!(offsets[0], 0.0);
        assert_abs_diff_eq!(offsets[1], 0.41421356237309503, epsilon = 1e-12);
        assert_eq!(offsets[2], 1.0);
        assert_abs_diff_eq!(trace.phi, PI / 8.0);
    }

    #[test]
    fn k54_bounds() {
        let (g, l, trace) = two_layer_bipartite(5, 4, 3.0).unwrap();
        let ang = angular_resolution(&g, &l).unwrap();
        let cr = crossing_resolution(&g, &l).unwrap();
        assert!(ang >= PI / 32.0);
        assert!(cr > ang);
        assert_abs_diff_eq!(ang, *trace.corner_angles.last().unwrap(), epsilon = 1e-9);
    }

    #[test]
    fn swap_puts_larger_side_on_top() {
        let (g, l, trace) = two_layer_bipartite(2, 4, 1.0).unwrap();
        assert!(trace.swapped);
        assert_eq!(trace.corner_angles.len(), 3);
        let a1 = g.node_index("a1").unwrap();
        let b1 = g.node_index("b1").unwrap();
        assert_eq!(l.positions[a1].y, 0.0);
        assert_eq!(l.positions[b1].y, 1.0);
        assert_eq!(g.edge_count(), 8);
    }

    #[test]
    fn stars_are_rejected() {
        assert!(matches!(
            two_layer_bipartite(1, 3, 1.0),
            Err(ConstructionError::StarBipartite { m: 1, n: 3 })
        ));
        assert!(grid_snap(4, 1).is_err());
        assert!(two_layer_bipartite(3, 3, -1.0).is_err());
    }

    #[test]
    fn grid_k22_is_unit_square() {
        let (_, grid) = grid_snap(2, 2).unwrap();
        assert_eq!(grid.positions, vec![(1, 1), (0, 1), (0, 0), (1, 0)]);
    }

    #[test]
    fn grid_k88_area() {
        // ⌈1/tan(π/28)⌉ = ⌈8.8769...⌉ = 9.
        let (_, grid) = grid_snap(8, 8).unwrap();
        let (w, h) = grid.extent();
        assert_eq!(h, 9);
        assert!(w <= 9);
        assert!((w + 1) * (h + 1) <= 4 * 64);
        assert!(grid.is_injective());
    }

    #[test]
    fn grid_first_gap_is_one() {
        for m in 2..20 {
            let side = unit_gap_side(m, 2);
            let (_, _, trace) = two_layer_bipartite(m, 2, side).unwrap();
            assert_abs_diff_eq!(trace.gaps[0], 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn grid_is_injective_everywhere() {
        for m in 2..=64 {
            for n in 2..=m {
                let (_, grid) = grid_snap(m, n).unwrap();
                assert!(grid.is_injective(), "m={m} n={n}");
                assert!(grid.positions.iter().all(|&(x, y)| x >= 0 && y >= 0));
            }
        }
    }
}
