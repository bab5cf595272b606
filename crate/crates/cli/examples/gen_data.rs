//! Regenerates the bundled sample graphs under `data/`.
//!
//! cargo run -p totres-cli --example gen_data -- data

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Edges = Vec<(usize, usize)>;

fn path(n: usize) -> Edges {
    (1..n).map(|i| (i - 1, i)).collect()
}

fn cycle(n: usize) -> Edges {
    let mut e = path(n);
    e.push((n - 1, 0));
    e
}

fn star(k: usize) -> Edges {
    (1..=k).map(|i| (0, i)).collect()
}

fn wheel(k: usize) -> Edges {
    let mut e = star(k);
    e.extend((1..=k).map(|i| (i, i % k + 1)));
    e
}

fn binary_tree(n: usize) -> Edges {
    (1..n).map(|i| ((i - 1) / 2, i)).collect()
}

fn random_tree(n: usize, seed: u64) -> Edges {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

fn grid(w: usize, h: usize) -> Edges {
    let id = |x: usize, y: usize| y * w + x;
    let mut e = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                e.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                e.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    e
}

fn ladder(n: usize) -> Edges {
    grid(n, 2)
}

fn complete(n: usize) -> Edges {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn complete_bipartite(m: usize, n: usize) -> Edges {
    (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j))).collect()
}

fn petersen() -> Edges {
    let mut e: Edges = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    e.extend((0..5).map(|i| (i, i + 5)));
    e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    e
}

fn cube(d: u32) -> Edges {
    let n = 1usize << d;
    (0..n)
        .flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(a, b)| a < b)
        .collect()
}

/// Connected sparse graph: a random spanning tree, then random extra edges
/// until there are `round(1.35 n)` edges.
fn sparse(n: usize, seed: u64) -> Edges {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = random_tree(n, seed ^ 0x5eed);
    let mut seen: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let target = (1.35 * n as f64).round() as usize;
    while edges.len() < target {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && seen.insert((a.min(b), a.max(b))) {
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges
}

fn write(dir: &Path, name: &str, edges: &Edges) {
    let mut text = String::new();
    for (a, b) in edges {
        text.push_str(&format!("{a} {b}\n"));
    }
    fs::write(dir.join(format!("{name}.edges")), text).unwrap();
}

fn main() {
    let root = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    let root = Path::new(&root);
    let samples = root.join("samples");
    let rome = root.join("rome-like");
    fs::create_dir_all(&samples).unwrap();
    fs::create_dir_all(&rome).unwrap();

    let named: Vec<(String, Edges)> = vec![
        ("path_10".into(), path(10)),
        ("path_25".into(), path(25)),
        ("cycle_12".into(), cycle(12)),
        ("star_6".into(), star(6)),
        ("wheel_8".into(), wheel(8)),
        ("tree_binary_15".into(), binary_tree(15)),
        ("tree_binary_31".into(), binary_tree(31)),
        ("tree_random_30".into(), random_tree(30, 7)),
        ("tree_random_60".into(), random_tree(60, 8)),
        ("grid_4x4".into(), grid(4, 4)),
        ("grid_5x6".into(), grid(5, 6)),
        ("grid_8x8".into(), grid(8, 8)),
        ("ladder_10".into(), ladder(10)),
        ("k4".into(), complete(4)),
        ("k5".into(), complete(5)),
        ("k6".into(), complete(6)),
        ("k8".into(), complete(8)),
        ("k_2_3".into(), complete_bipartite(2, 3)),
        ("k_3_3".into(), complete_bipartite(3, 3)),
        ("k_3_5".into(), complete_bipartite(3, 5)),
        ("k_4_4".into(), complete_bipartite(4, 4)),
        ("k_5_5".into(), complete_bipartite(5, 5)),
        ("petersen".into(), petersen()),
        ("cube_q3".into(), cube(3)),
        ("cube_q4".into(), cube(4)),
    ];
    for (name, edges) in &named {
        write(&samples, name, edges);
    }
    for i in 0..20usize {
        let n = 50 + (i * 50) / 19;
        write(&rome, &format!("sparse_{i:02}_n{n}"), &sparse(n, 1000 + i as u64));
    }
}
