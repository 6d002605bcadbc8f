//! The elastic band: a closed ring of particle agents. Each tick every
//! particle computes neighbor tension and friction into a staging buffer
//! (phase 1), then all particles move in collision-checked sub-steps
//! (phase 2).

use thiserror::Error;

use crate::geometry::{Ring, Vec2};
use crate::grid::{Cell, CellContent, NailGrid, NailId};
use crate::scheduler::SimParams;

#[derive(Debug, Error, PartialEq)]
pub enum BandError {
    #[error("band needs at least 8 particles, got {0}")]
    TooFewParticles(usize),
    #[error("margin {margin} pushes the initial band outside the {width}x{height} grid")]
    MarginTooLarge { margin: f64, width: u32, height: u32 },
}

/// One band agent. Positions are continuous; only nails occupy cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    pub pos: Vec2,
    pub vel: Vec2,
    pub acc: Vec2,
    pub mass: f64,
}

impl Particle {
    pub fn at_rest(pos: Vec2, mass: f64) -> Self {
        Particle { pos, vel: Vec2::ZERO, acc: Vec2::ZERO, mass }
    }
}

/// A particle ran into a nail and stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContactEvent {
    pub particle: usize,
    pub nail: NailId,
    pub tick: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Staged {
    acc: Vec2,
    vel: Vec2,
}

/// Closed cyclic chain of particles with a phase-1 staging buffer.
/// The neighbor structure is fixed for the whole run.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    particles: Vec<Particle>,
    staged: Vec<Staged>,
}

impl Band {
    /// Places `particle_count` particles equidistantly (by arc length,
    /// counter-clockwise from the lower-left corner) along the nail bounding
    /// box expanded by `margin` cells. The expanded rectangle must fit
    /// strictly inside the grid.
    pub fn init(
        grid: &NailGrid,
        margin: f64,
        particle_count: usize,
        mass: f64,
    ) -> Result<Band, BandError> {
        if particle_count < 8 {
            return Err(BandError::TooFewParticles(particle_count));
        }
        let (bb_min, bb_max) = grid.nail_bbox();
        let min = bb_min - Vec2::new(margin, margin);
        let max = bb_max + Vec2::new(margin, margin);
        if !(min.x > 0.0
            && min.y > 0.0
            && max.x < grid.width() as f64
            && max.y < grid.height() as f64)
        {
            return Err(BandError::MarginTooLarge {
                margin,
                width: grid.width(),
                height: grid.height(),
            });
        }
        let w = max.x - min.x;
        let h = max.y - min.y;
        let total = 2.0 * (w + h);
        let particles = (0..particle_count)
            .map(|j| {
                let s = j as f64 * total / particle_count as f64;
                let pos = if s < w {
                    Vec2::new(min.x + s, min.y)
                } else if s < w + h {
                    Vec2::new(max.x, min.y + (s - w))
                } else if s < 2.0 * w + h {
                    Vec2::new(max.x - (s - w - h), max.y)
                } else {
                    Vec2::new(min.x, max.y - (s - 2.0 * w - h))
                };
                Particle::at_rest(pos, mass)
            })
            .collect();
        Ok(Band::from_particles(particles))
    }

    pub fn from_particles(particles: Vec<Particle>) -> Band {
        assert!(particles.len() >= 3, "a band is a ring of at least 3 particles");
        let staged = vec![Staged::default(); particles.len()];
        Band { particles, staged }
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn positions(&self) -> Vec<Vec2> {
        self.particles.iter().map(|p| p.pos).collect()
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.positions()).expect("band always has >= 3 particles")
    }

    pub fn max_speed(&self) -> f64 {
        self.particles
            .iter()
            .map(|p| p.vel.norm())
            .fold(0.0, f64::max)
    }

    /// Staged (acc, vel) for particle `i`, as written by the last
    /// `calculate_state` call this tick.
    pub fn staged(&self, i: usize) -> (Vec2, Vec2) {
        (self.staged[i].acc, self.staged[i].vel)
    }

    /// Commits phase-1 results to the live particle state.
    pub fn commit_staged(&mut self) {
        for (p, s) in self.particles.iter_mut().zip(&self.staged) {
            p.acc = s.acc;
            p.vel = s.vel;
        }
    }
}

/// Net pull on particle `i` from its two cyclic neighbors: zero-rest-length
/// linear tension `k * (pos_neighbor - pos_i)` summed over both sides.
pub fn tension_force(band: &Band, i: usize, k: f64) -> Vec2 {
    let n = band.particles.len();
    let pos = band.particles[i].pos;
    let prev = band.particles[(i + n - 1) % n].pos;
    let next = band.particles[(i + 1) % n].pos;
    (prev - pos) * k + (next - pos) * k
}

/// Speed decrement friction: speeds above `eps_f` lose exactly `eps_f`
/// (direction preserved), anything at or below is zeroed. The zeroing
/// branch doubles as static friction.
pub fn apply_friction(vel: Vec2, eps_f: f64) -> Vec2 {
    let speed = vel.norm();
    if speed > eps_f {
        vel * ((speed - eps_f) / speed)
    } else {
        Vec2::ZERO
    }
}

/// Phase 1 for particle `i`: acceleration from tension, velocity from the
/// acceleration, friction on top. Writes staging only; reads only tick-start
/// positions, so any particle order gives the same staging buffer.
pub fn calculate_state(band: &mut Band, i: usize, params: &SimParams) {
    let force = tension_force(band, i, params.k);
    let p = &band.particles[i];
    let acc = force * (1.0 / p.mass);
    let vel = apply_friction(p.vel + acc * params.dt, params.eps_f);
    band.staged[i] = Staged { acc, vel };
}

/// Walks every cell a short segment passes through (in order, conservative
/// on exact corner crossings) and returns the first blocked content found.
/// The start cell is assumed free.
fn segment_blockage(grid: &NailGrid, a: Vec2, b: Vec2) -> Option<CellContent> {
    let start = grid.cell_of(a);
    let end = grid.cell_of(b);
    if start == end {
        return None;
    }
    let d = b - a;
    let step_x: i32 = if d.x > 0.0 { 1 } else { -1 };
    let step_y: i32 = if d.y > 0.0 { 1 } else { -1 };
    let (mut t_max_x, t_delta_x) = if d.x != 0.0 {
        let next = if d.x > 0.0 { (start.col + 1) as f64 } else { start.col as f64 };
        ((next - a.x) / d.x, (1.0 / d.x).abs())
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    let (mut t_max_y, t_delta_y) = if d.y != 0.0 {
        let next = if d.y > 0.0 { (start.row + 1) as f64 } else { start.row as f64 };
        ((next - a.y) / d.y, (1.0 / d.y).abs())
    } else {
        (f64::INFINITY, f64::INFINITY)
    };

    let mut cell = start;
    let max_steps = ((end.col - start.col).abs() + (end.row - start.row).abs() + 2) as usize;
    for _ in 0..max_steps {
        if t_max_x < t_max_y {
            cell.col += step_x;
            t_max_x += t_delta_x;
        } else if t_max_y < t_max_x {
            cell.row += step_y;
            t_max_y += t_delta_y;
        } else {
            // Exact corner crossing: treat both side cells as on the path.
            for side in [
                Cell::new(cell.col + step_x, cell.row),
                Cell::new(cell.col, cell.row + step_y),
            ] {
                let content = grid.is_blocked(side);
                if content.is_blocked() {
                    return Some(content);
                }
            }
            cell.col += step_x;
            cell.row += step_y;
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        }
        let content = grid.is_blocked(cell);
        if content.is_blocked() {
            return Some(content);
        }
        if cell == end {
            return None;
        }
    }
    None
}

/// Phase 2 for particle `i`: advance toward `pos + vel*dt` in sub-steps of
/// at most `eps_move`, each checked against the grid. On a blocked cell the
/// particle halts at its current sub-step position with zero velocity; a
/// nail blockage additionally yields a [`ContactEvent`].
pub fn move_particle(
    band: &mut Band,
    i: usize,
    grid: &NailGrid,
    params: &SimParams,
    tick: u64,
) -> Option<ContactEvent> {
    let start = band.particles[i];
    let disp = start.vel * params.dt;
    let dist = disp.norm();
    if dist == 0.0 {
        return None;
    }
    let dir = disp * (1.0 / dist);
    let mut pos = start.pos;
    let mut travelled = 0.0;
    let mut blockage = None;
    while dist - travelled > 1e-12 {
        let step = params.eps_move.min(dist - travelled);
        let next = pos + dir * step;
        if let Some(content) = segment_blockage(grid, pos, next) {
            blockage = Some(content);
            break;
        }
        pos = next;
        travelled += step;
    }
    band.particles[i].pos = pos;
    match blockage {
        Some(CellContent::Nail(id)) => {
            band.particles[i].vel = Vec2::ZERO;
            Some(ContactEvent { particle: i, nail: id, tick })
        }
        Some(_) => {
            band.particles[i].vel = Vec2::ZERO;
            None
        }
        None => None,
    }
}
