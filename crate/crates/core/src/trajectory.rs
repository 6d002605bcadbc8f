//! Stored trajectories: JSON-lines, one metadata record followed by one
//! record per captured tick. Enough to re-render frames without re-running
//! the simulation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Vec2;
use crate::grid::{GridError, NailGrid};

#[derive(Debug, Error)]
pub enum TrajectoryError {
    #[error("trajectory line {0}: {1}")]
    Parse(usize, serde_json::Error),
    #[error("trajectory is empty")]
    Empty,
    #[error("first trajectory record must be the metadata header")]
    MissingHeader,
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TrajectoryMeta {
    pub width: u32,
    pub height: u32,
    pub r_nail: u32,
    pub points: Vec<Vec2>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TrajectoryFrame {
    pub tick: u64,
    pub positions: Vec<Vec2>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub meta: TrajectoryMeta,
    pub frames: Vec<TrajectoryFrame>,
}

impl Trajectory {
    pub fn new(meta: TrajectoryMeta) -> Self {
        Trajectory { meta, frames: Vec::new() }
    }

    pub fn push(&mut self, tick: u64, positions: Vec<Vec2>) {
        self.frames.push(TrajectoryFrame { tick, positions });
    }

    pub fn to_jsonl(&self) -> String {
        let mut s = serde_json::to_string(&self.meta).expect("serializable meta");
        s.push('\n');
        for f in &self.frames {
            s.push_str(&serde_json::to_string(f).expect("serializable frame"));
            s.push('\n');
        }
        s
    }

    pub fn from_jsonl(text: &str) -> Result<Trajectory, TrajectoryError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (idx, first) = lines.next().ok_or(TrajectoryError::Empty)?;
        let meta: TrajectoryMeta =
            serde_json::from_str(first).map_err(|e| TrajectoryError::Parse(idx + 1, e))?;
        let mut frames = Vec::new();
        for (idx, line) in lines {
            let frame: TrajectoryFrame =
                serde_json::from_str(line).map_err(|e| TrajectoryError::Parse(idx + 1, e))?;
            frames.push(frame);
        }
        Ok(Trajectory { meta, frames })
    }

    pub fn rebuild_grid(&self) -> Result<NailGrid, TrajectoryError> {
        Ok(NailGrid::build(
            &self.meta.points,
            self.meta.width,
            self.meta.height,
            self.meta.r_nail,
        )?)
    }
}
