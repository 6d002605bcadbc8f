//! Discrete environment: a bounded grid of cells with nails rasterized as
//! blocked disks. Occupancy queries are a single table access regardless of
//! nail count.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::geometry::Vec2;

pub type NailId = u32;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("no nails given")]
    EmptyInput,
    #[error("nail {index} at ({x}, {y}) is outside the {width}x{height} grid")]
    OutOfBounds {
        index: usize,
        x: f64,
        y: f64,
        width: u32,
        height: u32,
    },
    #[error("nail radius must be at least 1")]
    ZeroRadius,
}

/// Contents of one grid cell as seen by an occupancy query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellContent {
    Empty,
    Nail(NailId),
    /// Anything beyond the grid boundary. Blocked so the band cannot leave
    /// the world.
    Wall,
}

impl CellContent {
    pub fn is_blocked(self) -> bool {
        !matches!(self, CellContent::Empty)
    }
}

/// Grid index. May hold out-of-range coordinates, which query as [`CellContent::Wall`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub col: i32,
    pub row: i32,
}

impl Cell {
    pub fn new(col: i32, row: i32) -> Self {
        Cell { col, row }
    }

    /// Center of the cell in continuous coordinates.
    pub fn center(self) -> Vec2 {
        Vec2::new(self.col as f64 + 0.5, self.row as f64 + 0.5)
    }
}

/// Immutable occupancy map. Each cell holds at most one nail identifier.
#[derive(Debug)]
pub struct NailGrid {
    width: u32,
    height: u32,
    r_nail: u32,
    cells: Vec<Option<NailId>>,
    nails: Vec<Vec2>,
    lookups: AtomicU64,
}

impl Clone for NailGrid {
    fn clone(&self) -> Self {
        NailGrid {
            width: self.width,
            height: self.height,
            r_nail: self.r_nail,
            cells: self.cells.clone(),
            nails: self.nails.clone(),
            lookups: AtomicU64::new(0),
        }
    }
}

impl NailGrid {
    /// Rasterizes each nail as the set of cells whose centers lie within
    /// `r_nail` of the nail center. Overlapping disks assign a cell to the
    /// nearest center; exact ties go to the lower nail index.
    pub fn build(
        points: &[Vec2],
        width: u32,
        height: u32,
        r_nail: u32,
    ) -> Result<Self, GridError> {
        if points.is_empty() {
            return Err(GridError::EmptyInput);
        }
        if r_nail == 0 {
            return Err(GridError::ZeroRadius);
        }
        for (index, p) in points.iter().enumerate() {
            if !(p.is_finite()
                && p.x >= 0.0
                && p.x < width as f64
                && p.y >= 0.0
                && p.y < height as f64)
            {
                return Err(GridError::OutOfBounds {
                    index,
                    x: p.x,
                    y: p.y,
                    width,
                    height,
                });
            }
        }

        let mut best: Vec<Option<(f64, NailId)>> = vec![None; (width * height) as usize];
        let r = r_nail as f64;
        for (id, nail) in points.iter().enumerate() {
            let id = id as NailId;
            let col_lo = ((nail.x - r).floor().max(0.0)) as u32;
            let col_hi = ((nail.x + r).floor()).min(width as f64 - 1.0) as u32;
            let row_lo = ((nail.y - r).floor().max(0.0)) as u32;
            let row_hi = ((nail.y + r).floor()).min(height as f64 - 1.0) as u32;
            for row in row_lo..=row_hi {
                for col in col_lo..=col_hi {
                    let center = Cell::new(col as i32, row as i32).center();
                    let d = center.dist(*nail);
                    if d <= r {
                        let slot = &mut best[(row * width + col) as usize];
                        let replace = match *slot {
                            None => true,
                            Some((d_old, id_old)) => {
                                d < d_old || (d == d_old && id < id_old)
                            }
                        };
                        if replace {
                            *slot = Some((d, id));
                        }
                    }
                }
            }
        }

        Ok(NailGrid {
            width,
            height,
            r_nail,
            cells: best.into_iter().map(|s| s.map(|(_, id)| id)).collect(),
            nails: points.to_vec(),
            lookups: AtomicU64::new(0),
        })
    }

    /// Occupancy query: one table access, independent of nail count.
    /// Cells outside the grid report [`CellContent::Wall`].
    pub fn is_blocked(&self, cell: Cell) -> CellContent {
        self.lookups.fetch_add(1, Ordering::Relaxed);
        if cell.col < 0
            || cell.row < 0
            || cell.col as u32 >= self.width
            || cell.row as u32 >= self.height
        {
            return CellContent::Wall;
        }
        match self.cells[(cell.row as u32 * self.width + cell.col as u32) as usize] {
            Some(id) => CellContent::Nail(id),
            None => CellContent::Empty,
        }
    }

    /// Maps a continuous position to its cell by flooring each component.
    pub fn cell_of(&self, pos: Vec2) -> Cell {
        Cell::new(pos.x.floor() as i32, pos.y.floor() as i32)
    }

    pub fn nails(&self) -> &[Vec2] {
        &self.nails
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn r_nail(&self) -> u32 {
        self.r_nail
    }

    /// Number of `is_blocked` calls made so far (tests use this to pin the
    /// one-access-per-query contract).
    pub fn lookup_count(&self) -> u64 {
        self.lookups.load(Ordering::Relaxed)
    }

    pub fn blocked_cell_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Axis-aligned bounding box of the nail centers as (min, max).
    pub fn nail_bbox(&self) -> (Vec2, Vec2) {
        let mut min = self.nails[0];
        let mut max = self.nails[0];
        for n in &self.nails {
            min.x = min.x.min(n.x);
            min.y = min.y.min(n.y);
            max.x = max.x.max(n.x);
            max.y = max.y.max(n.y);
        }
        (min, max)
    }
}
