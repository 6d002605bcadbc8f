//! TOML run configuration. Every field is optional and defaults to the
//! simulation defaults; unknown keys are rejected.

use serde::Deserialize;
use thiserror::Error;

use crate::scheduler::{ParamError, SimParams};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Params(#[from] ParamError),
}

#[derive(Debug, Clone, Deserialize, Default, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    // environment
    pub width: Option<u32>,
    pub height: Option<u32>,
    pub r_nail: Option<u32>,
    // physics
    pub k: Option<f64>,
    pub m: Option<f64>,
    pub g: Option<f64>,
    pub mu: Option<f64>,
    pub dt: Option<f64>,
    pub eps_f: Option<f64>,
    pub eps_move: Option<f64>,
    pub margin: Option<f64>,
    pub particle_count: Option<usize>,
    // convergence
    pub eps_v: Option<f64>,
    pub window: Option<usize>,
    pub max_ticks: Option<u64>,
    // harness
    pub seed: Option<u64>,
    pub frame_stride: Option<u64>,
    pub n_points: Option<usize>,
    pub instances: Option<usize>,
}

pub const DEFAULT_GRID: u32 = 200;
pub const DEFAULT_FRAME_STRIDE: u64 = 100;

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn width(&self) -> u32 {
        self.width.unwrap_or(DEFAULT_GRID)
    }

    pub fn height(&self) -> u32 {
        self.height.unwrap_or(DEFAULT_GRID)
    }

    pub fn frame_stride(&self) -> u64 {
        self.frame_stride.unwrap_or(DEFAULT_FRAME_STRIDE)
    }

    /// Builds validated [`SimParams`]. `eps_f` wins when both `eps_f` and
    /// `mu` are given; setting only `mu` derives `eps_f = mu*m*g*dt^2`.
    pub fn sim_params(&self) -> Result<SimParams, ConfigError> {
        let defaults = SimParams::default();
        let m = self.m.unwrap_or(defaults.m);
        let g = self.g.unwrap_or(defaults.g);
        let dt = self.dt.unwrap_or(defaults.dt);
        let r_nail = self.r_nail.unwrap_or(defaults.r_nail);
        let eps_f = match (self.eps_f, self.mu) {
            (Some(e), _) => e,
            (None, Some(mu)) => mu * m * g * dt * dt,
            (None, None) => defaults.eps_f,
        };
        let mu = if m * g * dt * dt > 0.0 { eps_f / (m * g * dt * dt) } else { 0.0 };
        let params = SimParams {
            k: self.k.unwrap_or(defaults.k),
            m,
            g,
            mu,
            dt,
            eps_f,
            eps_move: self.eps_move.unwrap_or(0.5 * r_nail as f64),
            r_nail,
            margin: self.margin.unwrap_or(defaults.margin),
            particle_count: self.particle_count,
            eps_v: self.eps_v.unwrap_or(defaults.eps_v),
            window: self.window.unwrap_or(defaults.window),
            max_ticks: self.max_ticks.unwrap_or(defaults.max_ticks),
        };
        params.validate()?;
        Ok(params)
    }
}
