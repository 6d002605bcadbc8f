//! Exact classical hull algorithms used as ground truth for the physical
//! method and for each other.

use std::cmp::Ordering;

use crate::geometry::{orientation, Vec2};
use crate::hull::{canonical, HullError, HullPolygon};

fn dedup_sorted(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    pts.dedup();
    pts
}

/// O(N log N) hull via an angular sort around the bottom-most point.
/// Duplicates are tolerated; collinear input yields the flagged degenerate
/// two-point form.
pub fn graham_scan(points: &[Vec2]) -> Result<HullPolygon, HullError> {
    if points.is_empty() {
        return Err(HullError::EmptyInput);
    }
    let mut pts = dedup_sorted(points);
    if pts.len() < 3 {
        return canonical(&pts);
    }

    // pivot: lowest y, then lowest x
    let pivot_idx = pts
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            a.y.partial_cmp(&b.y)
                .unwrap()
                .then(a.x.partial_cmp(&b.x).unwrap())
        })
        .map(|(i, _)| i)
        .unwrap();
    let pivot = pts.swap_remove(pivot_idx);

    // angular order around the pivot; ties (collinear with pivot) nearer first
    pts.sort_by(|&a, &b| match orientation(pivot, a, b) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => pivot
            .dist(a)
            .partial_cmp(&pivot.dist(b))
            .unwrap(),
    });

    let mut stack: Vec<Vec2> = vec![pivot];
    for &p in &pts {
        while stack.len() >= 2
            && orientation(stack[stack.len() - 2], stack[stack.len() - 1], p) <= 0
        {
            stack.pop();
        }
        stack.push(p);
    }

    canonical(&stack)
}

/// O(N*H) gift wrapping from the lexicographically smallest point.
/// Same contract as [`graham_scan`].
pub fn jarvis_march(points: &[Vec2]) -> Result<HullPolygon, HullError> {
    if points.is_empty() {
        return Err(HullError::EmptyInput);
    }
    let pts = dedup_sorted(points);
    if pts.len() < 3 {
        return canonical(&pts);
    }

    let start = 0; // dedup_sorted leaves the lexicographic minimum first
    let mut hull = Vec::new();
    let mut cur = start;
    loop {
        hull.push(pts[cur]);
        let mut next = (cur + 1) % pts.len();
        for cand in 0..pts.len() {
            if cand == cur {
                continue;
            }
            match orientation(pts[cur], pts[next], pts[cand]) {
                -1 => next = cand,
                0 => {
                    // farther collinear point wins; skips on-edge points
                    if pts[cur].dist(pts[cand]) > pts[cur].dist(pts[next]) {
                        next = cand;
                    }
                }
                _ => {}
            }
        }
        cur = next;
        if cur == start {
            break;
        }
        if hull.len() > pts.len() {
            // collinear input wraps forever without ever closing a polygon
            break;
        }
    }
    canonical(&hull)
}

/// Canonical hulls compare bit-exact: canonicalization already absorbed
/// rotation, orientation and collinearity.
pub fn hull_equal(a: &HullPolygon, b: &HullPolygon) -> bool {
    a == b
}
