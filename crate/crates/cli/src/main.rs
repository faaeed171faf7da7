//! Command-line front end: load scene files, dispatch operations, write
//! CSV/JSON outputs.
//!
//! Exit codes are a stable contract for scripting: 0 on success, 2 for
//! input/parse errors (bad flags, unreadable or malformed scenes), 3 for
//! domain errors (invalid bodies or densities, measure preconditions,
//! unsupported measure kinds).

mod output;
mod scene;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conic2d::geometry::Point2;
use conic2d::measure::Axis;
use conic2d::rm::StepSchedule;
use conic2d::{diagnostics, oracle, rm};

use output::{fmt_point, fmt_sig, write_atomic};
use scene::{load_scene, Scene};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 2.
    Input(String),
    /// Violated invariant or precondition in the model; exit code 3.
    Domain(conic2d::Error),
}

impl From<conic2d::Error> for CliError {
    fn from(e: conic2d::Error) -> Self {
        CliError::Domain(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "conic2d",
    about = "Evaluate conic functions on planar bodies, minimize them, and check the identities behind them",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalMethod {
    Direct,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum MinimizeMode {
    Oracle,
    Rm,
}

#[derive(Args)]
struct ChainFlags {
    /// Start point "x,y"; defaults to the scene's run.x0, then the bounding-box center.
    #[arg(long, value_parser = parse_point)]
    x0: Option<(f64, f64)>,
    /// First step size of the schedule t_k = t1 / k^gamma.
    #[arg(long)]
    t1: Option<f64>,
    /// Schedule exponent, in (1/2, 1].
    #[arg(long)]
    gamma: Option<f64>,
    /// Number of iterations.
    #[arg(long)]
    iters: Option<usize>,
    /// Base seed for the ChaCha streams.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the conic function at a point.
    Eval {
        #[arg(long)]
        scene: PathBuf,
        /// Evaluation point "x,y".
        #[arg(long, value_parser = parse_point)]
        point: (f64, f64),
        #[arg(long, value_enum, default_value = "closed")]
        method: EvalMethod,
    },
    /// Find the global minimizer, deterministically or by the stochastic chain.
    Minimize {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "oracle")]
        mode: MinimizeMode,
        #[command(flatten)]
        chain: ChainFlags,
        /// Write the trajectory CSV here (rm mode).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replicate chains and write a convergence report.
    Diagnose {
        #[arg(long)]
        scene: PathBuf,
        #[command(flatten)]
        chain: ChainFlags,
        /// Number of replications.
        #[arg(long)]
        reps: Option<usize>,
        /// Checkpoint iterations, comma separated.
        #[arg(long, value_delimiter = ',')]
        checkpoints: Option<Vec<usize>>,
        /// Report JSON output path.
        #[arg(long)]
        out: PathBuf,
        /// Optional error-curve CSV output path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Tabulate an X-ray function of a product measure.
    Xray {
        #[arg(long)]
        scene: PathBuf,
        /// Axis: 1 for the vertical-slice X-ray, 2 for the horizontal one.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        axis: u8,
        /// Number of sample points.
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the X-ray functions of two scenes.
    CompareXray {
        #[arg(long)]
        scene_a: PathBuf,
        #[arg(long)]
        scene_b: PathBuf,
        /// Maximum allowed pointwise discrepancy.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Number of sample points per axis.
        #[arg(long, default_value_t = 2048)]
        grid: usize,
    },
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"x,y\", got {s:?}"));
    }
    let x = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let y = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    if !(x.is_finite() && y.is_finite()) {
        return Err("coordinates must be finite".into());
    }
    Ok((x, y))
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(match e {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        });
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Eval {
            scene,
            point,
            method,
        } => {
            let scene = load_scene(&scene)?;
            let p = Point2::new(point.0, point.1);
            let value = match method {
                EvalMethod::Direct => scene.conic.evaluate_direct(p),
                EvalMethod::Closed => scene.conic.evaluate_closed_form(p),
            };
            println!("{}", fmt_sig(value, 12));
            Ok(())
        }
        Command::Minimize {
            scene,
            mode,
            chain,
            out,
        } => {
            let scene = load_scene(&scene)?;
            match mode {
                MinimizeMode::Oracle => {
                    let res = oracle::find_minimizer(&scene.conic);
                    println!(
                        "minimizer: {}",
                        fmt_point(res.minimizer.x, res.minimizer.y, 12)
                    );
                    println!("unique: {}", res.unique);
                    println!(
                        "x_interval: [{}, {}]",
                        fmt_sig(res.x_interval.lo, 12),
                        fmt_sig(res.x_interval.hi, 12)
                    );
                    println!(
                        "y_interval: [{}, {}]",
                        fmt_sig(res.y_interval.lo, 12),
                        fmt_sig(res.y_interval.hi, 12)
                    );
                }
                MinimizeMode::Rm => {
                    let params = ChainParams::resolve(&chain, &scene)?;
                    let traj = rm::run_chain(
                        &scene.conic,
                        params.x0,
                        params.schedule,
                        params.iters,
                        params.seed,
                    )?;
                    let f = traj.final_state();
                    println!("final: {}", fmt_point(f.x, f.y, 12));
                    println!("iterations: {}", traj.iterations);
                    if let Some(path) = out {
                        write_atomic(&path, |w| {
                            rm::write_trajectory_csv(w, &traj, Some(&scene.hash))
                        })?;
                        println!("trajectory: {}", path.display());
                    }
                }
            }
            Ok(())
        }
        Command::Diagnose {
            scene,
            chain,
            reps,
            checkpoints,
            out,
            csv,
        } => {
            let scene = load_scene(&scene)?;
            let params = ChainParams::resolve(&chain, &scene)?;
            let m = reps.or(scene.run.reps).unwrap_or(200);
            let cps = checkpoints
                .or_else(|| scene.run.checkpoints.clone())
                .unwrap_or_else(|| default_checkpoints(params.iters));
            let mut report = diagnostics::replicate(
                &scene.conic,
                params.x0,
                params.schedule,
                params.iters,
                m,
                params.seed,
                &cps,
            )?;
            report.fixture_hash = Some(scene.hash.clone());
            write_atomic(&out, |w| diagnostics::write_report_json(w, &report))?;
            println!(
                "minimizer: {} unique={}",
                fmt_point(
                    report.minimizer.minimizer.x,
                    report.minimizer.minimizer.y,
                    12
                ),
                report.minimizer.unique
            );
            let last = report.l1_errors.last().unwrap();
            println!(
                "final mean error: {} (se {})",
                fmt_sig(last.mean, 6),
                fmt_sig(last.std_error, 6)
            );
            println!("report: {}", out.display());
            if let Some(path) = csv {
                write_atomic(&path, |w| diagnostics::write_error_curves_csv(w, &report))?;
                println!("curves: {}", path.display());
            }
            Ok(())
        }
        Command::Xray {
            scene,
            axis,
            grid,
            out,
        } => {
            let scene = load_scene(&scene)?;
            let axis = if axis == 1 { Axis::X } else { Axis::Y };
            let bb = scene.conic.body().bounding_box();
            let (lo, hi) = match axis {
                Axis::X => (bb.xmin, bb.xmax),
                Axis::Y => (bb.ymin, bb.ymax),
            };
            let step = (hi - lo) / grid as f64;
            let mut rows = String::from("t,value\n");
            for k in 0..grid {
                let t = lo + (k as f64 + 0.5) * step;
                let v = scene.conic.measure().xray(axis, t)?;
                rows.push_str(&format!("{t},{v}\n"));
            }
            match out {
                Some(path) => {
                    write_atomic(&path, |w| w.write_all(rows.as_bytes()))?;
                    println!("xray: {}", path.display());
                }
                None => print!("{rows}"),
            }
            Ok(())
        }
        Command::CompareXray {
            scene_a,
            scene_b,
            tol,
            grid,
        } => {
            let a = load_scene(&scene_a)?;
            let b = load_scene(&scene_b)?;
            let (gap1, gap2) = oracle::xray_max_discrepancy(&a.conic, &b.conic, grid)?;
            let verdict = if gap1 <= tol && gap2 <= tol {
                "equivalent"
            } else {
                "distinct"
            };
            println!("verdict: {verdict}");
            println!("max_discrepancy_axis1: {}", fmt_sig(gap1, 12));
            println!("max_discrepancy_axis2: {}", fmt_sig(gap2, 12));
            Ok(())
        }
    }
}

struct ChainParams {
    x0: Point2,
    schedule: StepSchedule,
    iters: usize,
    seed: u64,
}

impl ChainParams {
    /// Merge command-line flags over scene run parameters over defaults.
    fn resolve(flags: &ChainFlags, scene: &Scene) -> Result<Self, CliError> {
        let x0 = flags
            .x0
            .map(|(x, y)| Point2::new(x, y))
            .or_else(|| scene.run.x0.map(|v| Point2::new(v[0], v[1])))
            .unwrap_or_else(|| scene.conic.body().bounding_box().center());
        let t1 = flags.t1.or(scene.run.t1).unwrap_or(1.0);
        let gamma = flags.gamma.or(scene.run.gamma).unwrap_or(1.0);
        let iters = flags.iters.or(scene.run.iters).unwrap_or(100_000);
        let seed = flags.seed.or(scene.run.seed).unwrap_or(0);
        Ok(Self {
            x0,
            schedule: StepSchedule::power(t1, gamma)?,
            iters,
            seed,
        })
    }
}

/// Logarithmically spaced checkpoints {100, 1000, 10000, n}, clamped to n.
fn default_checkpoints(n: usize) -> Vec<usize> {
    let mut cps: Vec<usize> = [100usize, 1000, 10_000]
        .into_iter()
        .filter(|&c| c < n)
        .collect();
    cps.push(n);
    cps
}
