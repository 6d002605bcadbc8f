//! Randomized verification campaigns: generate instances, run the physical
//! method, compare against the exact oracle, and report every failure with
//! its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::{perimeter, Vec2};
use crate::grid::NailGrid;
use crate::hull::{self, default_contact_delta};
use crate::oracle::{graham_scan, hull_equal};
use crate::scheduler::{run, SimParams};

/// Outcome of one campaign instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceReport {
    pub index: usize,
    pub seed: u64,
    pub n_points: usize,
    pub converged: bool,
    pub ticks: u64,
    /// `None` when the run never converged.
    pub hull_match: Option<bool>,
    pub initial_perimeter: f64,
    pub final_perimeter: f64,
    pub oracle_perimeter: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CampaignReport {
    pub instances: Vec<InstanceReport>,
}

impl CampaignReport {
    pub fn passes(&self) -> usize {
        self.instances
            .iter()
            .filter(|r| r.hull_match == Some(true))
            .count()
    }

    pub fn mismatches(&self) -> usize {
        self.instances
            .iter()
            .filter(|r| r.hull_match == Some(false))
            .count()
    }

    pub fn non_converged(&self) -> usize {
        self.instances.iter().filter(|r| !r.converged).count()
    }

    pub fn failed_seeds(&self) -> Vec<u64> {
        self.instances
            .iter()
            .filter(|r| r.hull_match != Some(true))
            .map(|r| r.seed)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "instance,seed,n_points,converged,ticks,hull_match,initial_perimeter,final_perimeter,oracle_perimeter\n",
        );
        for r in &self.instances {
            let hull_match = match r.hull_match {
                Some(true) => "true",
                Some(false) => "false",
                None => "",
            };
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.index,
                r.seed,
                r.n_points,
                r.converged,
                r.ticks,
                hull_match,
                r.initial_perimeter,
                r.final_perimeter,
                r.oracle_perimeter,
            ));
        }
        s
    }

    pub fn summary(&self) -> String {
        let total = self.instances.len();
        let mut s = format!(
            "{} instances: {} pass, {} mismatch, {} non-converged\n",
            total,
            self.passes(),
            self.mismatches(),
            self.non_converged()
        );
        for r in self.instances.iter().filter(|r| r.hull_match != Some(true)) {
            let kind = if r.converged { "mismatch" } else { "non-convergence" };
            s.push_str(&format!(
                "  FAIL instance {} seed {} n={}: {} after {} ticks\n",
                r.index, r.seed, r.n_points, kind, r.ticks
            ));
        }
        s
    }
}

fn instance_seed(base: u64, index: usize) -> u64 {
    base ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Uniform points over the central 50% of the grid, rejection-sampled to a
/// pairwise distance of at least `2*r_nail + 1` so distinct nails never
/// merge into one obstacle.
pub fn generate_points(
    rng: &mut impl Rng,
    n: usize,
    width: u32,
    height: u32,
    r_nail: u32,
) -> Vec<Vec2> {
    let min_dist = (2 * r_nail + 1) as f64;
    let (x_lo, x_hi) = (width as f64 * 0.25, width as f64 * 0.75);
    let (y_lo, y_hi) = (height as f64 * 0.25, height as f64 * 0.75);
    let mut pts: Vec<Vec2> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while pts.len() < n {
        attempts += 1;
        assert!(
            attempts < 100_000 * n.max(1),
            "cannot place {n} points at separation {min_dist} in the central region"
        );
        let cand = Vec2::new(rng.gen_range(x_lo..x_hi), rng.gen_range(y_lo..y_hi));
        if pts.iter().all(|p| p.dist(cand) >= min_dist) {
            pts.push(cand);
        }
    }
    pts
}

pub fn run_instance(
    index: usize,
    seed: u64,
    n_points: usize,
    params: &SimParams,
    width: u32,
    height: u32,
) -> InstanceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = generate_points(&mut rng, n_points, width, height, params.r_nail);
    let grid = NailGrid::build(&points, width, height, params.r_nail).expect("generated in bounds");
    let result = run(&grid, params).expect("valid params and placement");

    let initial_perimeter = result
        .metrics
        .first()
        .map(|m| m.perimeter)
        .unwrap_or(0.0);
    let final_perimeter = perimeter(&result.band.ring());
    let oracle = graham_scan(&points).expect("non-empty input");
    let oracle_perimeter = oracle.perimeter();

    let hull_match = if result.converged {
        let matched = hull::contacts(&result, &grid, default_contact_delta(params.r_nail))
            .ok()
            .and_then(|ids| hull::extract_hull(&ids, &grid).ok())
            .map(|h| hull_equal(&h, &oracle))
            .unwrap_or(false);
        Some(matched)
    } else {
        None
    };

    InstanceReport {
        index,
        seed,
        n_points,
        converged: result.converged,
        ticks: result.ticks,
        hull_match,
        initial_perimeter,
        final_perimeter,
        oracle_perimeter,
    }
}

/// Runs `instances` seeded instances of `n_points` points each and compares
/// the physical hull against the exact oracle. Failures are data, not
/// errors. Instances run in parallel; the report order is by index.
pub fn verify_campaign(
    seed: u64,
    instances: usize,
    n_points: usize,
    params: &SimParams,
    width: u32,
    height: u32,
) -> CampaignReport {
    let reports = (0..instances)
        .into_par_iter()
        .map(|index| {
            run_instance(index, instance_seed(seed, index), n_points, params, width, height)
        })
        .collect();
    CampaignReport { instances: reports }
}
