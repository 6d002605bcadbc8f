//! Reads a convex-hull answer off a converged run: which nails does the
//! fixed band press against, and in what order around the hull.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geometry::{orientation, Vec2};
use crate::grid::{NailGrid, NailId};
use crate::scheduler::RunResult;

#[derive(Debug, Error, PartialEq)]
pub enum HullError {
    #[error("run did not converge; no hull can be extracted")]
    NotConverged,
    #[error("contact set is empty")]
    EmptyContactSet,
    #[error("no input points")]
    EmptyInput,
}

/// Canonical hull: strictly convex vertices in counter-clockwise order,
/// starting at the lexicographically smallest (x, then y). Collinear input
/// that cannot form a polygon collapses to its two extreme points with the
/// `degenerate` flag set.
#[derive(Debug, Clone, PartialEq)]
pub struct HullPolygon {
    vertices: Vec<Vec2>,
    degenerate: bool,
}

impl HullPolygon {
    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        if n < 2 {
            return 0.0;
        }
        (0..n)
            .map(|i| self.vertices[i].dist(self.vertices[(i + 1) % n]))
            .sum()
    }
}

fn lex_less(a: Vec2, b: Vec2) -> bool {
    a.x < b.x || (a.x == b.x && a.y < b.y)
}

fn lex_min_index(points: &[Vec2]) -> usize {
    let mut best = 0;
    for (i, &p) in points.iter().enumerate().skip(1) {
        if lex_less(p, points[best]) {
            best = i;
        }
    }
    best
}

fn degenerate_extremes(points: &[Vec2]) -> HullPolygon {
    let mut min = points[0];
    let mut max = points[0];
    for &p in points {
        if lex_less(p, min) {
            min = p;
        }
        if lex_less(max, p) {
            max = p;
        }
    }
    HullPolygon { vertices: vec![min, max], degenerate: true }
}

fn all_collinear(points: &[Vec2]) -> bool {
    if points.len() < 3 {
        return true;
    }
    let a = points[0];
    let Some(&b) = points.iter().find(|&&p| p != a) else {
        return true;
    };
    points.iter().all(|&p| orientation(a, b, p) == 0)
}

/// Normal form for hull comparison: enforce CCW, drop collinear vertices,
/// rotate to start at the lexicographic minimum. Input must be a convex
/// cycle (either orientation, any rotation, collinear vertices allowed).
pub fn canonical(poly: &[Vec2]) -> Result<HullPolygon, HullError> {
    if poly.is_empty() {
        return Err(HullError::EmptyInput);
    }
    // drop consecutive duplicates (cyclically)
    let mut vs: Vec<Vec2> = Vec::with_capacity(poly.len());
    for &p in poly {
        if vs.last() != Some(&p) {
            vs.push(p);
        }
    }
    while vs.len() > 1 && vs.first() == vs.last() {
        vs.pop();
    }
    if all_collinear(&vs) {
        return Ok(degenerate_extremes(&vs));
    }

    // signed area fixes the orientation
    let n = vs.len();
    let area2: f64 = (0..n)
        .map(|i| vs[i].cross(vs[(i + 1) % n]))
        .sum();
    if area2 < 0.0 {
        vs.reverse();
    }

    // peel collinear vertices until every consecutive triple turns left
    loop {
        let n = vs.len();
        if n < 3 {
            return Ok(degenerate_extremes(poly));
        }
        let mut removed = false;
        let mut kept = Vec::with_capacity(n);
        for i in 0..n {
            let prev = vs[(i + n - 1) % n];
            let next = vs[(i + 1) % n];
            if orientation(prev, vs[i], next) == 0 {
                removed = true;
            } else {
                kept.push(vs[i]);
            }
        }
        if !removed {
            break;
        }
        vs = kept;
    }

    let start = lex_min_index(&vs);
    vs.rotate_left(start);
    Ok(HullPolygon { vertices: vs, degenerate: false })
}

/// Nails the converged band presses against: everything in the contact
/// log's final `window` ticks, plus every nail whose disk lies within
/// `delta` cells of some final particle position.
pub fn contacts(
    result: &RunResult,
    grid: &NailGrid,
    delta: f64,
) -> Result<BTreeSet<NailId>, HullError> {
    if !result.converged {
        return Err(HullError::NotConverged);
    }
    let window_start = result.ticks.saturating_sub(result.params.window as u64) + 1;
    let mut ids: BTreeSet<NailId> = result
        .contact_log
        .iter()
        .filter(|ev| ev.tick >= window_start)
        .map(|ev| ev.nail)
        .collect();
    let reach = grid.r_nail() as f64 + delta;
    for (id, nail) in grid.nails().iter().enumerate() {
        if ids.contains(&(id as NailId)) {
            continue;
        }
        if result
            .band
            .particles()
            .iter()
            .any(|p| p.pos.dist(*nail) <= reach)
        {
            ids.insert(id as NailId);
        }
    }
    Ok(ids)
}

/// Default contact reach: the band halts up to one sub-step plus cell
/// rasterization slack short of a disk.
pub fn default_contact_delta(r_nail: u32) -> f64 {
    r_nail as f64 + 1.0
}

/// Orders the contacted nails counter-clockwise by angle around their
/// centroid, drops reflex and collinear stragglers, and canonicalizes.
pub fn extract_hull(
    contact_ids: &BTreeSet<NailId>,
    grid: &NailGrid,
) -> Result<HullPolygon, HullError> {
    if contact_ids.is_empty() {
        return Err(HullError::EmptyContactSet);
    }
    let mut pts: Vec<Vec2> = contact_ids
        .iter()
        .map(|&id| grid.nails()[id as usize])
        .collect();
    pts.sort_by(|a, b| lex_cmp(*a, *b));
    pts.dedup();
    if all_collinear(&pts) {
        return Ok(degenerate_extremes(&pts));
    }

    let centroid = pts.iter().fold(Vec2::ZERO, |acc, &p| acc + p) * (1.0 / pts.len() as f64);
    pts.sort_by(|&a, &b| {
        let aa = (a.y - centroid.y).atan2(a.x - centroid.x);
        let ab = (b.y - centroid.y).atan2(b.x - centroid.x);
        aa.partial_cmp(&ab)
            .unwrap()
            .then_with(|| {
                a.dist(centroid)
                    .partial_cmp(&b.dist(centroid))
                    .unwrap()
            })
    });

    // repair pass: spurious contacts show up as reflex or collinear turns
    loop {
        let n = pts.len();
        if n < 3 {
            return Ok(degenerate_extremes(&pts));
        }
        let mut idx = None;
        for i in 0..n {
            let prev = pts[(i + n - 1) % n];
            let next = pts[(i + 1) % n];
            if orientation(prev, pts[i], next) <= 0 {
                idx = Some(i);
                break;
            }
        }
        match idx {
            Some(i) => {
                pts.remove(i);
            }
            None => break,
        }
    }
    canonical(&pts)
}

fn lex_cmp(a: Vec2, b: Vec2) -> std::cmp::Ordering {
    a.x.partial_cmp(&b.x)
        .unwrap()
        .then(a.y.partial_cmp(&b.y).unwrap())
}
