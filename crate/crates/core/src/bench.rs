//! Occupancy-lookup benchmark: the grid table versus a deliberately naive
//! linear scan over all nail disks.

use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::Vec2;
use crate::grid::{Cell, CellContent, NailGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Grid,
    Linear,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Grid => write!(f, "GRID"),
            Strategy::Linear => write!(f, "LINEAR"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub nail_count: usize,
    pub strategy: Strategy,
    pub mean_ns: f64,
    pub lookups: u64,
}

pub type BenchReport = Vec<BenchRow>;

/// The naive alternative: scan every nail disk for each query.
fn linear_lookup(nails: &[Vec2], r_nail: u32, cell: Cell) -> CellContent {
    let center = cell.center();
    let r = r_nail as f64;
    let mut best: Option<(f64, u32)> = None;
    for (id, nail) in nails.iter().enumerate() {
        let d = center.dist(*nail);
        if d <= r {
            let better = match best {
                None => true,
                Some((bd, _)) => d < bd,
            };
            if better {
                best = Some((d, id as u32));
            }
        }
    }
    match best {
        Some((_, id)) => CellContent::Nail(id),
        None => CellContent::Empty,
    }
}

/// Times `queries` random lookups per nail count and strategy. Two rows per
/// nail count.
pub fn bench_lookup(
    nail_counts: &[usize],
    queries: u64,
    seed: u64,
    width: u32,
    height: u32,
    r_nail: u32,
) -> BenchReport {
    assert!(queries >= 10_000, "too few queries for a stable mean");
    let mut report = Vec::new();
    for &n in nail_counts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let nails: Vec<Vec2> = (0..n)
            .map(|_| {
                Vec2::new(
                    rng.gen_range(0.0..width as f64),
                    rng.gen_range(0.0..height as f64),
                )
            })
            .collect();
        let grid = NailGrid::build(&nails, width, height, r_nail).unwrap();
        let cells: Vec<Cell> = (0..queries)
            .map(|_| {
                Cell::new(
                    rng.gen_range(0..width as i32),
                    rng.gen_range(0..height as i32),
                )
            })
            .collect();

        // warm up both paths once
        for c in cells.iter().take(100) {
            black_box(grid.is_blocked(black_box(*c)));
            black_box(linear_lookup(&nails, r_nail, black_box(*c)));
        }

        let start = Instant::now();
        for c in &cells {
            black_box(grid.is_blocked(black_box(*c)));
        }
        let grid_ns = start.elapsed().as_nanos() as f64 / queries as f64;

        let start = Instant::now();
        for c in &cells {
            black_box(linear_lookup(&nails, r_nail, black_box(*c)));
        }
        let linear_ns = start.elapsed().as_nanos() as f64 / queries as f64;

        report.push(BenchRow {
            nail_count: n,
            strategy: Strategy::Grid,
            mean_ns: grid_ns,
            lookups: queries,
        });
        report.push(BenchRow {
            nail_count: n,
            strategy: Strategy::Linear,
            mean_ns: linear_ns,
            lookups: queries,
        });
    }
    report
}

pub fn report_csv(report: &BenchReport) -> String {
    let mut s = String::from("nail_count,strategy,mean_ns_per_lookup,lookups\n");
    for row in report {
        s.push_str(&format!(
            "{},{},{},{}\n",
            row.nail_count, row.strategy, row.mean_ns, row.lookups
        ));
    }
    s
}
