//! Planar primitives shared by the simulator, the hull extractor and the
//! oracles. All coordinates live in grid cell units.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Cross products with absolute value at or below this are treated as
/// collinear. Absolute tolerance is fine: coordinates live in a bounded grid.
pub const ORIENT_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("a ring needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
}

/// 2D vector for positions, velocities, accelerations and forces.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2 { x: self.x + rhs.x, y: self.y + rhs.y }
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2 { x: self.x - rhs.x, y: self.y - rhs.y }
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2 { x: self.x * s, y: self.y * s }
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 { x: -self.x, y: -self.y }
    }
}

/// Closed cyclic polyline: vertex `i` neighbors `i-1` and `i+1` mod n.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring {
    vertices: Vec<Vec2>,
}

impl Ring {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        Ok(Ring { vertices })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Sign of the cross product (q-p)x(r-p): +1 for a counter-clockwise turn,
/// -1 for clockwise, 0 for collinear within [`ORIENT_EPS`].
pub fn orientation(p: Vec2, q: Vec2, r: Vec2) -> i8 {
    let c = (q - p).cross(r - p);
    if c.abs() <= ORIENT_EPS {
        0
    } else if c > 0.0 {
        1
    } else {
        -1
    }
}

fn dist_point_segment(pt: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return pt.dist(a);
    }
    let t = ((pt - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    pt.dist(a + ab * t)
}

/// Even-odd containment test. Points within [`ORIENT_EPS`] of an edge count
/// as inside.
pub fn point_in_ring(pt: Vec2, ring: &Ring) -> bool {
    let vs = ring.vertices();
    let n = vs.len();
    let mut inside = false;
    for i in 0..n {
        let a = vs[i];
        let b = vs[(i + 1) % n];
        if dist_point_segment(pt, a, b) <= ORIENT_EPS {
            return true;
        }
        if (a.y > pt.y) != (b.y > pt.y) {
            let x_int = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x_int > pt.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Sum of Euclidean edge lengths, including the closing edge.
pub fn perimeter(ring: &Ring) -> f64 {
    let vs = ring.vertices();
    let n = vs.len();
    (0..n).map(|i| vs[i].dist(vs[(i + 1) % n])).sum()
}
