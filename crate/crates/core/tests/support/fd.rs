//! Finite-difference trials for the angle forces: take one tiny step along
//! the computed force and measure the angle again from the positions.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use totres::forces::{angular_angle_force, crossing_angle_force, ForceConfig};
use totres::geometry::segment_intersection;
use totres::{Point2, Vec2};

pub const H: f64 = 1e-6;


fn unsigned_angle(a: Vec2, b: Vec2) -> f64 {
    a.cross(b).abs().atan2(a.dot(b))
}

fn ccw(a: Vec2, b: Vec2) -> f64 {
    let t = a.cross(b).atan2(a.dot(b));
    if t < 0.0 {
        t + TAU
    } else {
        t
    }
}

fn polar(c: Point2, r: f64, a: f64) -> Point2 {
    Point2::new(c.x + r * a.cos(), c.y + r * a.sin())
}

/// Two crossing edges a–a', b–b' through a random point. Returns the
/// counts (moved towards the target, moved away, skipped).
pub fn crossing_trials(n: usize, seed: u64) -> (usize, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = ForceConfig::default();
    let (mut ok, mut bad, mut skipped) = (0, 0, 0);
    for _ in 0..n {
        let c = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let alpha = rng.gen_range(0.0..TAU);
        let theta = rng.gen_range(0.01..PI - 0.01);
        let a = polar(c, rng.gen_range(0.2..3.0), alpha);
        let b = polar(c, rng.gen_range(0.2..3.0), alpha + theta);
        let a2 = polar(c, rng.gen_range(0.2..3.0), alpha + PI);
        let b2 = polar(c, rng.gen_range(0.2..3.0), alpha + theta + PI);
        let Some(pc) = segment_intersection((a, a2), (b, b2)) else {
            skipped += 1;
            continue;
        };
        let before = unsigned_angle(a - pc, b - pc);
        if (before - FRAC_PI_2).abs() < 1e-9 {
            skipped += 1;
            continue;
        }
        let (Some(fa), Some(fb)) = (
            crossing_angle_force(a, b, pc, &cfg),
            crossing_angle_force(b, a, pc, &cfg),
        ) else {
            skipped += 1;
            continue;
        };
        let (na, nb) = (a + fa * H, b + fb * H);
        let Some(pc2) = segment_intersection((na, a2), (nb, b2)) else {
            bad += 1;
            continue;
        };
        let after = unsigned_angle(na - pc2, nb - pc2);
        if (after - before) * (FRAC_PI_2 - before) > 0.0 {
            ok += 1;
        } else {
            bad += 1;
        }
    }
    (ok, bad, skipped)
}

/// A node with two consecutive neighbors at a random gap and a random
/// degree. Returns counts as [`crossing_trials`].
pub fn angular_trials(n: usize, seed: u64) -> (usize, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = ForceConfig::default();
    let (mut ok, mut bad, mut skipped) = (0, 0, 0);
    for _ in 0..n {
        let u = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let degree = rng.gen_range(2..=8usize);
        let alpha = rng.gen_range(0.0..TAU);
        let theta = rng.gen_range(0.01..TAU - 0.01);
        let vi = polar(u, rng.gen_range(0.2..3.0), alpha);
        let vj = polar(u, rng.gen_range(0.2..3.0), alpha + theta);
        let before = ccw(vi - u, vj - u);
        let target = TAU / degree as f64;
        if (before - target).abs() < 1e-9 || (before - PI).abs() < 1e-6 {
            skipped += 1;
            continue;
        }
        let Some(f) = angular_angle_force(vi, vj, u, degree, &cfg) else {
            skipped += 1;
            continue;
        };
        let after = ccw((vi + f * H) - u, (vj - f * H) - u);
        if (after - before) * (target - before) > 0.0 {
            ok += 1;
        } else {
            bad += 1;
        }
    }
    (ok, bad, skipped)
}
