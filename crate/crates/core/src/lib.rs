//! Straight-line graph drawings with high total resolution: the minimum of
//! the angular resolution (smallest angle between edges at a node) and the
//! crossing resolution (smallest angle at an edge crossing).
//!
//! * [`constructions`] gives exact drawings of `K_n` and `K_{m,n}`;
//! * [`forces`] improves arbitrary drawings with a force-directed method;
//! * [`metrics`] measures a drawing.

pub mod constructions;
pub mod forces;
pub mod geometry;
pub mod graph;
pub mod metrics;

pub use geometry::{Point2, Vec2};
pub use graph::{Graph, GridLayout, Layout};
