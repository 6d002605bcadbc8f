//! Convex hulls the way a rubber band computes them.
//!
//! A closed ring of particle agents is dropped around a set of "nail"
//! obstacles rasterized into a uniform grid. Pairwise tension pulls the
//! ring inward, surface friction drains its energy, and sub-stepped
//! collision checks stop particles at nail boundaries. Once the band is
//! fixed, the nails it presses against are the hull vertices. Classical
//! exact algorithms (Graham scan, Jarvis march) serve as oracles.

pub mod band;
pub mod bench;
pub mod campaign;
pub mod config;
pub mod geometry;
pub mod grid;
pub mod hull;
pub mod oracle;
pub mod points;
pub mod render;
pub mod scheduler;
pub mod trajectory;

pub use band::{apply_friction, Band, ContactEvent, Particle};
pub use geometry::{orientation, perimeter, point_in_ring, Ring, Vec2};
pub use grid::{Cell, CellContent, NailGrid, NailId};
pub use hull::{canonical, contacts, extract_hull, HullPolygon};
pub use oracle::{graham_scan, hull_equal, jarvis_march};
pub use scheduler::{is_fixed, run, run_observed, RunResult, SimParams, TickMetrics};
