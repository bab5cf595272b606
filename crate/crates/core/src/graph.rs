//! Graphs, layouts, and their newline-delimited text formats.
//!
//! Node ids are opaque strings. A [`Graph`] maps them once onto dense indices
//! in first-appearance order; a [`Layout`] is a position per index.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::Point2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: expected 2 tokens, found {found}")]
    Malformed { line: usize, found: usize },
    #[error("line {line}: self-loop on node {id:?}")]
    SelfLoop { line: usize, id: String },
    #[error("line {line}: duplicate edge {a:?} -- {b:?}")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("edge endpoint {0:?} is not a declared node")]
    UnknownEndpoint(String),
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LayoutError {
    #[error("line {line}: expected `id x y`, found {found} tokens")]
    Malformed { line: usize, found: usize },
    #[error("line {line}: unknown node id {id:?}")]
    UnknownNode { line: usize, id: String },
    #[error("line {line}: node {id:?} positioned twice")]
    Repeated { line: usize, id: String },
    #[error("line {line}: coordinate {value:?} is not a finite number")]
    BadCoordinate { line: usize, value: String },
    #[error("node {0:?} has no position")]
    MissingNode(String),
    #[error("layout has {found} positions for a graph of {expected} nodes")]
    SizeMismatch { expected: usize, found: usize },
}

/// Simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    /// Endpoint index pairs as given, in insertion order.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new<I, S>(ids: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Graph {
            ids: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
        };
        for id in ids {
            let id = id.into();
            if g.index.contains_key(&id) {
                return Err(GraphError::DuplicateNode(id));
            }
            g.push_node(id);
        }
        Ok(g)
    }

    /// Build a graph over `0..n` with ids `"0"`, `"1"`, ... and the given
    /// index edges.
    pub fn from_indexed_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new((0..n).map(|i| i.to_string()))?;
        for (a, b) in edges {
            g.add_edge_by_index(a, b, 0)?;
        }
        Ok(g)
    }

    fn push_node(&mut self, id: String) -> usize {
        let idx = self.ids.len();
        self.index.insert(id.clone(), idx);
        self.ids.push(id);
        self.adjacency.push(Vec::new());
        idx
    }

    fn add_edge_by_index(&mut self, a: usize, b: usize, line: usize) -> Result<(), GraphError> {
        for &x in &[a, b] {
            if x >= self.ids.len() {
                return Err(GraphError::UnknownEndpoint(x.to_string()));
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop {
                line,
                id: self.ids[a].clone(),
            });
        }
        if self.adjacency[a].contains(&b) {
            return Err(GraphError::DuplicateEdge {
                line,
                a: self.ids[a].clone(),
                b: self.ids[b].clone(),
            });
        }
        self.edges.push((a, b));
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
        Ok(())
    }

    /// Add an edge between two declared nodes.
    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let ia = self.node_index(a).ok_or_else(|| GraphError::UnknownEndpoint(a.into()))?;
        let ib = self.node_index(b).ok_or_else(|| GraphError::UnknownEndpoint(b.into()))?;
        self.add_edge_by_index(ia, ib, 0)
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, idx: usize) -> &str {
        &self.ids[idx]
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    /// Maximum degree, 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    /// Edge list text accepted by [`parse_edge_list`]. Only edges are
    /// written, so isolated nodes do not survive the round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{} {}", self.ids[a], self.ids[b]);
        }
        out
    }
}

/// Parse an edge list: one `idA idB` pair per line, `#` starts a comment
/// line, blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut g = Graph::new(Vec::<String>::new())?;
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::Malformed {
                line: line_no,
                found: tokens.len(),
            });
        }
        if tokens[0] == tokens[1] {
            return Err(GraphError::SelfLoop {
                line: line_no,
                id: tokens[0].to_string(),
            });
        }
        let a = match g.node_index(tokens[0]) {
            Some(i) => i,
            None => g.push_node(tokens[0].to_string()),
        };
        let b = match g.node_index(tokens[1]) {
            Some(i) => i,
            None => g.push_node(tokens[1].to_string()),
        };
        g.add_edge_by_index(a, b, line_no)?;
    }
    Ok(g)
}

/// A position for every node of some graph, indexed like the graph's nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub positions: Vec<Point2>,
}

impl Layout {
    pub fn new(positions: Vec<Point2>) -> Self {
        Layout { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.positions.iter().all(|p| p.is_finite())
    }

    pub fn check_for(&self, g: &Graph) -> Result<(), LayoutError> {
        if self.positions.len() != g.node_count() {
            return Err(LayoutError::SizeMismatch {
                expected: g.node_count(),
                found: self.positions.len(),
            });
        }
        Ok(())
    }

    /// Mean Euclidean length of the graph's edges, `None` without edges.
    pub fn mean_edge_length(&self, g: &Graph) -> Option<f64> {
        if g.edge_count() == 0 {
            return None;
        }
        let total: f64 = g
            .edges()
            .iter()
            .map(|&(a, b)| self.positions[a].distance(self.positions[b]))
            .sum();
        Some(total / g.edge_count() as f64)
    }

    /// Axis-aligned bounding box as `(min, max)` corners.
    pub fn bounding_box(&self) -> Option<(Point2, Point2)> {
        let first = *self.positions.first()?;
        Some(self.positions.iter().fold((first, first), |(lo, hi), p| {
            (
                Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    /// Smallest distance between two distinct nodes, `None` below 2 nodes.
    pub fn min_pairwise_distance(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (i, a) in self.positions.iter().enumerate() {
            for b in &self.positions[i + 1..] {
                let d = a.distance(*b);
                best = Some(best.map_or(d, |m| m.min(d)));
            }
        }
        best
    }
}

/// Integer grid positions, indexed like the graph's nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridLayout {
    pub positions: Vec<(i64, i64)>,
}

impl GridLayout {
    pub fn to_layout(&self) -> Layout {
        Layout::new(
            self.positions
                .iter()
                .map(|&(x, y)| Point2::new(x as f64, y as f64))
                .collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        let set: HashSet<_> = self.positions.iter().collect();
        set.len() == self.positions.len()
    }

    /// Largest x and y coordinate, i.e. the drawing's width and height for
    /// nonnegative coordinates.
    pub fn extent(&self) -> (i64, i64) {
        self.positions
            .iter()
            .fold((0, 0), |(w, h), &(x, y)| (w.max(x), h.max(y)))
    }
}

/// Parse `id x y` lines into a layout for `g`.
pub fn parse_layout(text: &str, g: &Graph) -> Result<Layout, LayoutError> {
    let mut positions: Vec<Option<Point2>> = vec![None; g.node_count()];
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(LayoutError::Malformed {
                line: line_no,
                found: tokens.len(),
            });
        }
        let idx = g.node_index(tokens[0]).ok_or_else(|| LayoutError::UnknownNode {
            line: line_no,
            id: tokens[0].to_string(),
        })?;
        let coord = |s: &str| -> Result<f64, LayoutError> {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| LayoutError::BadCoordinate {
                    line: line_no,
                    value: s.to_string(),
                })
        };
        let p = Point2::new(coord(tokens[1])?, coord(tokens[2])?);
        if positions[idx].replace(p).is_some() {
            return Err(LayoutError::Repeated {
                line: line_no,
                id: tokens[0].to_string(),
            });
        }
    }
    positions
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| LayoutError::MissingNode(g.id(i).to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map(Layout::new)
}

/// Write `id x y` lines in graph order. Rust's shortest round-trip float
/// formatting is used, so parsing the output recovers every coordinate
/// bit for bit.
pub fn write_layout(g: &Graph, l: &Layout) -> String {
    let mut out = String::new();
    for (id, p) in g.ids().iter().zip(&l.positions) {
        let _ = writeln!(out, "{} {} {}", id, p.x, p.y);
    }
    out
}

/// Uniform random positions in `[0, side]²`, deterministic for a seed.
///
/// Any node closer than `side * 1e-6` to an earlier one is resampled.
pub fn random_layout(g: &Graph, seed: u64, side: f64) -> Layout {
    assert!(side > 0.0, "layout box must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_sep = side * 1e-6;
    let mut positions: Vec<Point2> = Vec::with_capacity(g.node_count());
    for _ in 0..g.node_count() {
        let p = loop {
            let p = Point2::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side));
            if positions.iter().all(|q| q.distance(p) > min_sep) {
                break p;
            }
        };
        positions.push(p);
    }
    Layout::new(positions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3() -> Graph {
        parse_edge_list("a b\nb c").unwrap()
    }

    #[test]
    fn parses_edge_list() {
        let g = path3();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.ids(), ["a", "b", "c"]);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.max_degree(), 2);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# header\n\n  x y \n# mid\ny z\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn rejects_bad_edge_lists() {
        assert!(matches!(
            parse_edge_list("a a"),
            Err(GraphError::SelfLoop { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("a b\n# x\nb a"),
            Err(GraphError::DuplicateEdge { line: 3, .. })
        ));
        assert!(matches!(
            parse_edge_list("a b\nc"),
            Err(GraphError::Malformed { line: 2, found: 1 })
        ));
        assert!(matches!(
            parse_edge_list("a b c"),
            Err(GraphError::Malformed { line: 1, found: 3 })
        ));
    }

    #[test]
    fn builder_validation() {
        assert!(Graph::new(["a", "a"]).is_err());
        let mut g = Graph::new(["a", "b"]).unwrap();
        assert!(g.add_edge("a", "c").is_err());
        g.add_edge("a", "b").unwrap();
        assert!(g.add_edge("b", "a").is_err());
        assert!(Graph::from_indexed_edges(2, [(0, 0)]).is_err());
    }

    #[test]
    fn parses_layout() {
        let g = parse_edge_list("a b").unwrap();
        let l = parse_layout("a 0 0\nb 1 0", &g).unwrap();
        assert_eq!(l.positions, vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]);
    }

    #[test]
    fn layout_errors() {
        let g = path3();
        assert!(matches!(
            parse_layout("a 0 0\nb 1 0", &g),
            Err(LayoutError::MissingNode(id)) if id == "c"
        ));
        let g = parse_edge_list("a b").unwrap();
        assert!(matches!(
            parse_layout("a 0 nan\nb 1 1", &g),
            Err(LayoutError::BadCoordinate { line: 1, .. })
        ));
        assert!(matches!(
            parse_layout("a 0 inf\nb 1 1", &g),
            Err(LayoutError::BadCoordinate { .. })
        ));
        assert!(matches!(
            parse_layout("a 0 0\nz 1 1", &g),
            Err(LayoutError::UnknownNode { line: 2, .. })
        ));
        assert!(matches!(
            parse_layout("a 0 0\na 1 1\nb 0 1", &g),
            Err(LayoutError::Repeated { line: 2, .. })
        ));
    }

    #[test]
    fn writes_layout() {
        let g = Graph::new(["a"]).unwrap();
        assert_eq!(write_layout(&g, &Layout::new(vec![Point2::ORIGIN])), "a 0 0\n");
        let empty = Graph::new(Vec::<String>::new()).unwrap();
        assert_eq!(write_layout(&empty, &Layout::new(vec![])), "");
    }

    #[test]
    fn random_layout_is_seeded() {
        let g = path3();
        let a = random_layout(&g, 7, 10.0);
        assert_eq!(a, random_layout(&g, 7, 10.0));
        assert_ne!(a, random_layout(&g, 8, 10.0));
        assert!(a.positions.iter().all(|p| (0.0..10.0).contains(&p.x) && (0.0..10.0).contains(&p.y)));
        assert!(a.min_pairwise_distance().unwrap() > 1e-5);

        let single = Graph::new(["x"]).unwrap();
        assert_eq!(random_layout(&single, 1, 1.0).len(), 1);
    }

    #[test]
    fn grid_layout_helpers() {
        let grid = GridLayout {
            positions: vec![(0, 0), (3, 2), (1, 5)],
        };
        assert!(grid.is_injective());
        assert_eq!(grid.extent(), (3, 5));
        let dup = GridLayout {
            positions: vec![(1, 1), (1, 1)],
        };
        assert!(!dup.is_injective());
    }

    fn edge_set(g: &Graph) -> HashSet<(String, String)> {
        g.edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (g.id(a).to_string(), g.id(b).to_string());
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect()
    }

    proptest! {
        #[test]
        fn edge_list_round_trips(pairs in prop::collection::vec((0usize..15, 0usize..15), 0..40)) {
            let mut g = Graph::from_indexed_edges(15, []).unwrap();
            for (a, b) in pairs {
                if a != b && !g.has_edge(a, b) {
                    g.add_edge_by_index(a, b, 0).unwrap();
                }
            }
            let text = g.to_edge_list();
            let h = parse_edge_list(&text).unwrap();
            prop_assert_eq!(edge_set(&g), edge_set(&h));
            prop_assert_eq!(h.to_edge_list(), text);
            let max_adj = (0..h.node_count()).map(|u| h.neighbors(u).len()).max().unwrap_or(0);
            prop_assert_eq!(h.max_degree(), max_adj);
        }

        #[test]
        fn layout_round_trips_bitwise(seed in any::<u64>(), scale in 1e-3..1e6f64) {
            let g = Graph::from_indexed_edges(6, [(0, 1), (2, 3)]).unwrap();
            let mut l = random_layout(&g, seed, 1.0);
            for p in &mut l.positions {
                p.x = (p.x - 0.5) * scale;
                p.y = (p.y - 0.3) / scale;
            }
            let back = parse_layout(&write_layout(&g, &l), &g).unwrap();
            for (a, b) in l.positions.iter().zip(&back.positions) {
                prop_assert_eq!(a.x.to_bits(), b.x.to_bits());
                prop_assert_eq!(a.y.to_bits(), b.y.to_bits());
            }
        }
    }
}
