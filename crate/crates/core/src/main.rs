use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use elastic_hull::bench::{bench_lookup, report_csv};
use elastic_hull::campaign::verify_campaign;
use elastic_hull::config::Config;
use elastic_hull::hull::{self, default_contact_delta};
use elastic_hull::oracle::{graham_scan, jarvis_march};
use elastic_hull::points::parse_points;
use elastic_hull::render::{render_frame, FrameFormat};
use elastic_hull::scheduler::{run_observed, SimParams};
use elastic_hull::trajectory::{Trajectory, TrajectoryMeta};
use elastic_hull::{hull_equal, NailGrid, Vec2};

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_NON_CONVERGENCE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "elastic-hull",
    about = "Convex hulls via a simulated elastic band, with exact oracles and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// TOML config file; flags override config values
    #[arg(long)]
    config: Option<PathBuf>,
    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Hard tick limit
    #[arg(long)]
    max_ticks: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one instance: metrics CSV, optional frames, stored trajectory
    Simulate {
        #[command(flatten)]
        common: CommonOpts,
        /// Point file (one "x y" pair per line)
        #[arg(long)]
        points: PathBuf,
        /// Emit a frame every N ticks
        #[arg(long)]
        frames: Option<u64>,
        /// Frame format
        #[arg(long, default_value = "ppm")]
        format: FrameFormat,
    },
    /// Randomized verification campaign against the exact oracle
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Instances to run
        #[arg(long)]
        instances: Option<usize>,
        /// Points per instance
        #[arg(long)]
        n_points: Option<usize>,
    },
    /// Grid-vs-linear occupancy lookup benchmark
    Bench {
        #[command(flatten)]
        common: CommonOpts,
        /// Lookups per nail count
        #[arg(long, default_value_t = 100_000)]
        queries: u64,
        /// Nail counts to benchmark
        #[arg(long, value_delimiter = ',', default_values_t = vec![10, 100, 1000, 10_000])]
        nail_counts: Vec<usize>,
    },
    /// Re-render frames from a stored trajectory
    Render {
        /// Trajectory file written by `simulate`
        #[arg(long)]
        trajectory: PathBuf,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Frame format
        #[arg(long, default_value = "ppm")]
        format: FrameFormat,
    },
    /// Exact oracle hull of a point file, no physics
    Hull {
        /// Point file (one "x y" pair per line)
        #[arg(long)]
        points: PathBuf,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn dispatch() -> Result<u8> {
    match Cli::parse().command {
        Command::Simulate { common, points, frames, format } => {
            simulate(&common, &points, frames, format)
        }
        Command::Verify { common, instances, n_points } => verify(&common, instances, n_points),
        Command::Bench { common, queries, nail_counts } => bench(&common, queries, &nail_counts),
        Command::Render { trajectory, out, format } => render(&trajectory, &out, format),
        Command::Hull { points } => hull_only(&points),
    }
}

fn load_config(common: &CommonOpts) -> Result<Config> {
    match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            Ok(Config::from_toml(&text)?)
        }
        None => Ok(Config::default()),
    }
}

fn load_points(path: &Path) -> Result<Vec<Vec2>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading points {}", path.display()))?;
    Ok(parse_points(&text)?)
}

fn resolve_params(config: &Config, common: &CommonOpts) -> Result<SimParams> {
    let mut params = config.sim_params()?;
    if let Some(mt) = common.max_ticks {
        params.max_ticks = mt;
    }
    params.validate()?;
    Ok(params)
}

fn simulate(
    common: &CommonOpts,
    points_path: &Path,
    frames: Option<u64>,
    format: FrameFormat,
) -> Result<u8> {
    let config = load_config(common)?;
    let params = resolve_params(&config, common)?;
    let points = load_points(points_path)?;
    let grid = NailGrid::build(&points, config.width(), config.height(), params.r_nail)?;

    let stride = frames.unwrap_or(config.frame_stride());
    let out_dir = common.out.clone();
    if let Some(dir) = &out_dir {
        fs::create_dir_all(dir)?;
    }

    let mut trajectory = Trajectory::new(TrajectoryMeta {
        width: grid.width(),
        height: grid.height(),
        r_nail: grid.r_nail(),
        points: points.clone(),
    });
    let emit_frames = frames.is_some() && out_dir.is_some();
    let result = run_observed(&grid, &params, stride, &mut |tick, band, grid| {
        trajectory.push(tick, band.positions());
        if emit_frames {
            let dir = out_dir.as_ref().unwrap();
            let bytes = render_frame(&band.positions(), grid, format);
            let path = dir.join(format!("frame_{tick:08}.{}", format.extension()));
            let _ = fs::write(path, bytes);
        }
    })?;

    println!(
        "{} after {} ticks ({} particles, {} contact events, {} distinct nails touched)",
        if result.converged { "converged" } else { "did not converge" },
        result.ticks,
        result.band.len(),
        result.contact_log.len(),
        result.metrics.last().map(|m| m.contacts).unwrap_or(0),
    );

    if let Some(dir) = &out_dir {
        let mut csv = String::from("tick,max_speed,perimeter,contacts\n");
        for (i, m) in result.metrics.iter().enumerate() {
            csv.push_str(&format!("{},{},{},{}\n", i + 1, m.max_speed, m.perimeter, m.contacts));
        }
        fs::write(dir.join("metrics.csv"), csv)?;
        fs::write(dir.join("trajectory.jsonl"), trajectory.to_jsonl())?;
        println!("wrote metrics.csv and trajectory.jsonl to {}", dir.display());
    }

    if !result.converged {
        return Ok(EXIT_NON_CONVERGENCE);
    }

    let ids = hull::contacts(&result, &grid, default_contact_delta(params.r_nail))
        .expect("converged result");
    let physical = hull::extract_hull(&ids, &grid)?;
    let oracle = graham_scan(&points)?;
    println!(
        "physical hull ({}{} vertices): {}",
        physical.vertices().len(),
        if physical.is_degenerate() { ", degenerate" } else { "" },
        physical
            .vertices()
            .iter()
            .map(|v| format!("({}, {})", v.x, v.y))
            .collect::<Vec<_>>()
            .join(" "),
    );
    if hull_equal(&physical, &oracle) {
        println!("matches the exact oracle");
        Ok(EXIT_OK)
    } else {
        println!(
            "MISMATCH: oracle hull has {} vertices",
            oracle.vertices().len()
        );
        Ok(EXIT_MISMATCH)
    }
}

fn verify(common: &CommonOpts, instances: Option<usize>, n_points: Option<usize>) -> Result<u8> {
    let config = load_config(common)?;
    let params = resolve_params(&config, common)?;
    let seed = common.seed.or(config.seed).unwrap_or(0);
    let instances = instances.or(config.instances).unwrap_or(20);
    let n_points = n_points.or(config.n_points).unwrap_or(20);

    let report = verify_campaign(
        seed,
        instances,
        n_points,
        &params,
        config.width(),
        config.height(),
    );
    print!("{}", report.summary());
    if let Some(dir) = &common.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("campaign.csv"), report.to_csv())?;
        println!("wrote campaign.csv to {}", dir.display());
    }

    if report.mismatches() > 0 {
        Ok(EXIT_MISMATCH)
    } else if report.non_converged() > 0 {
        Ok(EXIT_NON_CONVERGENCE)
    } else {
        Ok(EXIT_OK)
    }
}

fn bench(common: &CommonOpts, queries: u64, nail_counts: &[usize]) -> Result<u8> {
    let config = load_config(common)?;
    let seed = common.seed.or(config.seed).unwrap_or(0);
    let report = bench_lookup(
        nail_counts,
        queries,
        seed,
        config.width(),
        config.height(),
        config.r_nail.unwrap_or(1),
    );
    println!("{:>10} {:>8} {:>14} {:>10}", "nails", "strategy", "ns/lookup", "lookups");
    for row in &report {
        println!(
            "{:>10} {:>8} {:>14.2} {:>10}",
            row.nail_count, row.strategy.to_string(), row.mean_ns, row.lookups
        );
    }
    if let Some(dir) = &common.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("bench.csv"), report_csv(&report))?;
        println!("wrote bench.csv to {}", dir.display());
    }
    Ok(EXIT_OK)
}

fn render(trajectory_path: &Path, out: &Path, format: FrameFormat) -> Result<u8> {
    let text = fs::read_to_string(trajectory_path)
        .with_context(|| format!("reading trajectory {}", trajectory_path.display()))?;
    let trajectory = Trajectory::from_jsonl(&text)?;
    let grid = trajectory.rebuild_grid()?;
    fs::create_dir_all(out)?;
    for frame in &trajectory.frames {
        let bytes = render_frame(&frame.positions, &grid, format);
        let path = out.join(format!("frame_{:08}.{}", frame.tick, format.extension()));
        fs::write(path, bytes)?;
    }
    println!("rendered {} frames to {}", trajectory.frames.len(), out.display());
    Ok(EXIT_OK)
}

fn hull_only(points_path: &Path) -> Result<u8> {
    let points = load_points(points_path)?;
    let g = graham_scan(&points)?;
    let j = jarvis_march(&points)?;
    if !hull_equal(&g, &j) {
        // both are exact; disagreement means a broken build
        anyhow::bail!("graham scan and jarvis march disagree");
    }
    if g.is_degenerate() {
        println!("degenerate (collinear input), extreme points:");
    } else {
        println!("{} hull vertices, counter-clockwise:", g.vertices().len());
    }
    for v in g.vertices() {
        println!("{} {}", v.x, v.y);
    }
    Ok(EXIT_OK)
}
