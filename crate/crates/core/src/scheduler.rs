//! Two-phase synchronous time-stepper: every particle computes its next
//! state from the common tick-start snapshot, the results are committed,
//! then every particle moves. Runs until the band is fixed or the tick
//! budget is exhausted.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::band::{self, Band, BandError, ContactEvent};
use crate::geometry::perimeter;
use crate::grid::NailGrid;

#[derive(Debug, Error, PartialEq)]
pub enum RunError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Band(#[from] BandError),
}

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("{name} must be positive, got {value}")]
    NotPositive { name: &'static str, value: f64 },
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("unstable spring step: k*dt^2/m = {0} exceeds 0.5")]
    Unstable(f64),
    #[error("eps_move {eps_move} exceeds r_nail {r_nail}; the band could tunnel")]
    TunnelingRisk { eps_move: f64, r_nail: u32 },
    #[error("window must be at least 1")]
    ZeroWindow,
    #[error("max_ticks must be at least 1")]
    ZeroMaxTicks,
}

/// All physical and numerical constants of a run.
///
/// `eps_f` is the operative friction constant (`mu * m * g * dt^2` for the
/// physical reading); `mu` is kept alongside for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    /// tension constant
    pub k: f64,
    /// particle mass
    pub m: f64,
    /// gravity constant
    pub g: f64,
    /// friction coefficient; informs `eps_f`
    pub mu: f64,
    /// tick duration
    pub dt: f64,
    /// per-tick friction speed decrement, cells/tick
    pub eps_f: f64,
    /// movement sub-step length, cells
    pub eps_move: f64,
    /// nail disk radius, cells
    pub r_nail: u32,
    /// initial band offset from the nail bounding box, cells
    pub margin: f64,
    /// band size; `None` picks one particle per cell of initial perimeter
    pub particle_count: Option<usize>,
    /// convergence speed threshold, cells/tick
    pub eps_v: f64,
    /// consecutive quiet ticks required for convergence
    pub window: usize,
    /// hard stop
    pub max_ticks: u64,
}

pub const DEFAULT_EPS_F: f64 = 2e-4;

impl Default for SimParams {
    fn default() -> Self {
        let (m, g, dt) = (1.0, 9.8, 1.0);
        SimParams {
            k: 0.5,
            m,
            g,
            mu: DEFAULT_EPS_F / (m * g * dt * dt),
            dt,
            eps_f: DEFAULT_EPS_F,
            eps_move: 0.5,
            r_nail: 1,
            margin: 20.0,
            particle_count: None,
            eps_v: 1e-3,
            window: 50,
            max_ticks: 200_000,
        }
    }
}

impl SimParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, value) in [
            ("k", self.k),
            ("m", self.m),
            ("dt", self.dt),
            ("eps_move", self.eps_move),
            ("margin", self.margin),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ParamError::NotPositive { name, value });
            }
        }
        for (name, value) in [("eps_f", self.eps_f), ("eps_v", self.eps_v), ("mu", self.mu)] {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(ParamError::Negative { name, value });
            }
        }
        let stability = self.k * self.dt * self.dt / self.m;
        if stability > 0.5 {
            return Err(ParamError::Unstable(stability));
        }
        if self.eps_move > self.r_nail as f64 {
            return Err(ParamError::TunnelingRisk {
                eps_move: self.eps_move,
                r_nail: self.r_nail,
            });
        }
        if self.window == 0 {
            return Err(ParamError::ZeroWindow);
        }
        if self.max_ticks == 0 {
            return Err(ParamError::ZeroMaxTicks);
        }
        Ok(())
    }

    /// Band size for a given nail bounding box: one particle per cell of the
    /// initial (expanded) perimeter so adjacent particle paths cannot
    /// straddle a nail disk, floored at 64.
    pub fn resolve_particle_count(&self, grid: &NailGrid) -> usize {
        if let Some(p) = self.particle_count {
            return p;
        }
        let (min, max) = grid.nail_bbox();
        let expanded =
            2.0 * ((max.x - min.x + 2.0 * self.margin) + (max.y - min.y + 2.0 * self.margin));
        (expanded.ceil() as usize).max(64)
    }
}

/// Per-tick accounting: `contacts` is the cumulative count of distinct
/// nails touched so far.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TickMetrics {
    pub max_speed: f64,
    pub perimeter: f64,
    pub contacts: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub ticks: u64,
    pub converged: bool,
    pub band: Band,
    pub contact_log: Vec<ContactEvent>,
    pub metrics: Vec<TickMetrics>,
    /// Parameters the run actually used, with `particle_count` resolved.
    pub params: SimParams,
}

/// One synchronous tick: phase 1 stages every particle's next (acc, vel),
/// the staging is committed, phase 2 moves every particle. Returns this
/// tick's contact events in particle order.
pub fn step(band: &mut Band, grid: &NailGrid, params: &SimParams, tick: u64) -> Vec<ContactEvent> {
    let n = band.len();
    for i in 0..n {
        band::calculate_state(band, i, params);
    }
    band.commit_staged();
    let mut events = Vec::new();
    for i in 0..n {
        if let Some(ev) = band::move_particle(band, i, grid, params, tick) {
            events.push(ev);
        }
    }
    events
}

/// True iff the last `window` entries of the max-speed history all sit
/// below `eps_v`. Shorter histories are not enough evidence.
pub fn is_fixed(speed_history: &[f64], params: &SimParams) -> bool {
    if speed_history.len() < params.window {
        return false;
    }
    speed_history[speed_history.len() - params.window..]
        .iter()
        .all(|&s| s < params.eps_v)
}

pub fn run(grid: &NailGrid, params: &SimParams) -> Result<RunResult, RunError> {
    run_observed(grid, params, 0, &mut |_, _, _| {})
}

/// Like [`run`], but invokes `sink` with a read-only view of the band at
/// tick 0, every `stride` ticks (when `stride > 0`), and at the final tick.
pub fn run_observed(
    grid: &NailGrid,
    params: &SimParams,
    stride: u64,
    sink: &mut dyn FnMut(u64, &Band, &NailGrid),
) -> Result<RunResult, RunError> {
    params.validate()?;
    let count = params.resolve_particle_count(grid);
    let mut band = Band::init(grid, params.margin, count, params.m)?;
    let resolved = SimParams { particle_count: Some(count), ..params.clone() };

    sink(0, &band, grid);

    let mut contact_log = Vec::new();
    let mut metrics = Vec::with_capacity(1024);
    let mut speeds = Vec::with_capacity(1024);
    let mut touched = vec![false; grid.nails().len()];
    let mut distinct = 0usize;
    let mut ticks = 0;
    let mut converged = false;

    for tick in 1..=params.max_ticks {
        let events = step(&mut band, grid, &resolved, tick);
        for ev in &events {
            if !touched[ev.nail as usize] {
                touched[ev.nail as usize] = true;
                distinct += 1;
            }
        }
        contact_log.extend(events);
        let max_speed = band.max_speed();
        metrics.push(TickMetrics {
            max_speed,
            perimeter: perimeter(&band.ring()),
            contacts: distinct,
        });
        speeds.push(max_speed);
        ticks = tick;
        if stride > 0 && tick % stride == 0 {
            sink(tick, &band, grid);
        }
        if is_fixed(&speeds, &resolved) {
            converged = true;
            break;
        }
    }
    if stride == 0 || ticks % stride != 0 {
        sink(ticks, &band, grid);
    }

    Ok(RunResult {
        ticks,
        converged,
        band,
        contact_log,
        metrics,
        params: resolved,
    })
}
