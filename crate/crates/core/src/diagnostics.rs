//! Replicated chain runs and convergence diagnostics.
//!
//! Replications run concurrently on disjoint ChaCha streams of the base seed
//! and reduce in replication order, so a report is a pure function of its
//! inputs, bit for bit.
//!
//! Almost-sure convergence is not finitely testable; the report carries the
//! standard falsifiable surrogates instead: error moments at checkpoints, the
//! share of runs ending inside a fixed radius, and a per-run tail comparison.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conic::ConicFunction;
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::oracle::{self, BisectionResult};
use crate::rm::{self, StepSchedule};

/// Report schema version written to exports.
pub const SCHEMA_VERSION: u32 = 1;

/// A Monte Carlo mean with its standard error over the replications.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorStat {
    pub mean: f64,
    pub std_error: f64,
}

/// Replicated-run summary: error moments per checkpoint plus the raw final
/// states needed for radius checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplicationReport {
    pub schema_version: u32,
    pub fixture_hash: Option<String>,
    pub base_seed: u64,
    pub replications: usize,
    pub iterations: usize,
    pub x0: Point2,
    pub schedule: StepSchedule,
    pub checkpoints: Vec<usize>,
    pub minimizer: BisectionResult,
    /// True when the minimizer is non-unique; all error metrics then measure
    /// the Euclidean distance to the minimizer rectangle instead of to the
    /// representative point.
    pub distance_to_set: bool,
    /// Mean of `|X_k - X*|` per checkpoint.
    pub l1_errors: Vec<ErrorStat>,
    /// Mean of `|X_k - X*|^2` per checkpoint.
    pub l2_errors: Vec<ErrorStat>,
    /// Mean of `F(X_k) - F(X*)` per checkpoint.
    pub f_gap: Vec<ErrorStat>,
    /// Smallest `F(X_k) - F(X*)` seen at any checkpoint of any run; bounded
    /// below by the quadrature slack.
    pub min_f_gap_sample: f64,
    /// States outside the inflated rectangle, over all steps of all runs.
    pub rectangle_violations: usize,
    /// Share of runs whose error at the last checkpoint does not exceed the
    /// error at the previous one.
    pub tail_non_increase_fraction: f64,
    pub final_states: Vec<Point2>,
}

struct RunStats {
    dist: Vec<f64>,
    f_gap: Vec<f64>,
    final_state: Point2,
    violations: usize,
}

/// Run `m` independent chains and summarize errors at the checkpoints.
///
/// Replication `r` uses stream `r` of `base_seed`, so replication 0 matches
/// `run_chain` with the same seed.
pub fn replicate(
    f: &ConicFunction,
    x0: Point2,
    schedule: StepSchedule,
    n: usize,
    m: usize,
    base_seed: u64,
    checkpoints: &[usize],
) -> Result<ReplicationReport> {
    if n == 0 {
        return Err(Error::NoIterations);
    }
    if m < 2 {
        return Err(Error::TooFewReplications);
    }
    if !f.body().contains(x0) {
        return Err(Error::StartNotInBody { x: x0.x, y: x0.y });
    }
    let mut cps: Vec<usize> = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    if cps.is_empty() {
        return Err(Error::InvalidParameter("no checkpoints given".into()));
    }
    for &c in &cps {
        if c == 0 || c > n {
            return Err(Error::InvalidCheckpoint {
                checkpoint: c,
                iterations: n,
            });
        }
    }

    let minimizer = oracle::find_minimizer(f);
    let distance_to_set = !minimizer.unique;
    let f_star = f.evaluate_closed_form(minimizer.minimizer);
    let rect = rm::inflated_rectangle(f.body(), &schedule);
    let err_of = |p: Point2| {
        if distance_to_set {
            minimizer.distance_to_set(p)
        } else {
            minimizer.distance_to_minimizer(p)
        }
    };

    let runs: Vec<Result<RunStats>> = (0..m)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
            rng.set_stream(r as u64);
            let mut stats = RunStats {
                dist: Vec::with_capacity(cps.len()),
                f_gap: Vec::with_capacity(cps.len()),
                final_state: x0,
                violations: 0,
            };
            let mut next_cp = 0;
            rm::drive_chain(f, x0, schedule, n, &mut rng, |k, x| {
                if !rect.contains(x) {
                    stats.violations += 1;
                }
                if next_cp < cps.len() && k == cps[next_cp] {
                    stats.dist.push(err_of(x));
                    stats.f_gap.push(f.evaluate_closed_form(x) - f_star);
                    next_cp += 1;
                }
                if k == n {
                    stats.final_state = x;
                }
            })?;
            Ok(stats)
        })
        .collect();
    let runs: Vec<RunStats> = runs.into_iter().collect::<Result<_>>()?;

    let stat_over = |values: Vec<f64>| -> ErrorStat {
        let mean = values.iter().sum::<f64>() / m as f64;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1) as f64;
        ErrorStat {
            mean,
            std_error: (var / m as f64).sqrt(),
        }
    };

    let mut l1_errors = Vec::with_capacity(cps.len());
    let mut l2_errors = Vec::with_capacity(cps.len());
    let mut f_gap = Vec::with_capacity(cps.len());
    let mut min_f_gap_sample = f64::INFINITY;
    for j in 0..cps.len() {
        l1_errors.push(stat_over(runs.iter().map(|r| r.dist[j]).collect()));
        l2_errors.push(stat_over(
            runs.iter().map(|r| r.dist[j] * r.dist[j]).collect(),
        ));
        f_gap.push(stat_over(runs.iter().map(|r| r.f_gap[j]).collect()));
        for r in &runs {
            min_f_gap_sample = min_f_gap_sample.min(r.f_gap[j]);
        }
    }

    let tail_non_increase_fraction = if cps.len() >= 2 {
        let last = cps.len() - 1;
        runs.iter()
            .filter(|r| r.dist[last] <= r.dist[last - 1])
            .count() as f64
            / m as f64
    } else {
        1.0
    };

    Ok(ReplicationReport {
        schema_version: SCHEMA_VERSION,
        fixture_hash: None,
        base_seed,
        replications: m,
        iterations: n,
        x0,
        schedule,
        checkpoints: cps,
        minimizer,
        distance_to_set,
        l1_errors,
        l2_errors,
        f_gap,
        min_f_gap_sample,
        rectangle_violations: runs.iter().map(|r| r.violations).sum(),
        tail_non_increase_fraction,
        final_states: runs.iter().map(|r| r.final_state).collect(),
    })
}

/// Finite-sample surrogate for almost-sure convergence: true when at least
/// `fraction` of the replications end within `final_radius` of the minimizer
/// (or of the minimizer set when it is non-unique).
pub fn as_convergence_check(report: &ReplicationReport, final_radius: f64, fraction: f64) -> bool {
    let err_of = |p: Point2| {
        if report.distance_to_set {
            report.minimizer.distance_to_set(p)
        } else {
            report.minimizer.distance_to_minimizer(p)
        }
    };
    let within = report
        .final_states
        .iter()
        .filter(|&&p| err_of(p) <= final_radius)
        .count();
    within as f64 / report.replications as f64 >= fraction
}

/// JSON export of the full report (schema documented in `docs/`).
pub fn write_report_json<W: std::io::Write>(
    mut w: W,
    report: &ReplicationReport,
) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, report)?;
    writeln!(w)
}

/// CSV export of the error curves, one row per checkpoint.
pub fn write_error_curves_csv<W: std::io::Write>(
    mut w: W,
    report: &ReplicationReport,
) -> std::io::Result<()> {
    writeln!(
        w,
        "checkpoint,l1_mean,l1_se,l2_mean,l2_se,f_gap_mean,f_gap_se"
    )?;
    for (j, &cp) in report.checkpoints.iter().enumerate() {
        let (l1, l2, fg) = (report.l1_errors[j], report.l2_errors[j], report.f_gap[j]);
        writeln!(
            w,
            "{cp},{},{},{},{},{},{}",
            l1.mean, l1.std_error, l2.mean, l2.std_error, fg.mean, fg.std_error
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn replicate_preconditions() {
        let f = fixtures::square_uniform();
        let s = StepSchedule::harmonic();
        let x0 = Point2::new(0.0, 0.0);
        assert!(matches!(
            replicate(&f, x0, s, 100, 1, 7, &[10]),
            Err(Error::TooFewReplications)
        ));
        assert!(matches!(
            replicate(&f, x0, s, 100, 4, 7, &[0]),
            Err(Error::InvalidCheckpoint { .. })
        ));
        assert!(matches!(
            replicate(&f, x0, s, 100, 4, 7, &[101]),
            Err(Error::InvalidCheckpoint { .. })
        ));
        assert!(matches!(
            replicate(&f, Point2::new(5.0, 5.0), s, 100, 4, 7, &[10]),
            Err(Error::StartNotInBody { .. })
        ));
    }

    #[test]
    fn errors_shrink_on_the_square() {
        let f = fixtures::square_uniform();
        let report = replicate(
            &f,
            Point2::new(0.0, 0.0),
            StepSchedule::harmonic(),
            10_000,
            60,
            42,
            &[100, 1000, 10_000],
        )
        .unwrap();
        assert_eq!(report.rectangle_violations, 0);
        assert!(report.min_f_gap_sample >= -2e-3);
        for j in 1..report.checkpoints.len() {
            let (prev, cur) = (report.l1_errors[j - 1], report.l1_errors[j]);
            let slack = 2.0 * (prev.std_error.powi(2) + cur.std_error.powi(2)).sqrt();
            assert!(cur.mean <= prev.mean + slack, "L1 not shrinking at {j}");
            let (prev, cur) = (report.l2_errors[j - 1], report.l2_errors[j]);
            let slack = 2.0 * (prev.std_error.powi(2) + cur.std_error.powi(2)).sqrt();
            assert!(cur.mean <= prev.mean + slack, "L2 not shrinking at {j}");
            let (prev, cur) = (report.f_gap[j - 1], report.f_gap[j]);
            let slack = 2.0 * (prev.std_error.powi(2) + cur.std_error.powi(2)).sqrt();
            assert!(cur.mean <= prev.mean + slack, "F gap not shrinking at {j}");
        }
        assert!(as_convergence_check(&report, 0.2, 0.9));
        assert!(!as_convergence_check(&report, 0.0, 0.01));
        assert!(as_convergence_check(&report, 10.0, 1.0));
    }

    #[test]
    fn reports_are_bitwise_deterministic() {
        let f = fixtures::triangle_uniform();
        let run = || {
            replicate(
                &f,
                Point2::new(0.1, 0.1),
                StepSchedule::harmonic(),
                2000,
                24,
                9,
                &[100, 2000],
            )
            .unwrap()
        };
        let (a, b) = (run(), run());
        assert_eq!(a, b);
        let mut ja = Vec::new();
        let mut jb = Vec::new();
        write_report_json(&mut ja, &a).unwrap();
        write_report_json(&mut jb, &b).unwrap();
        assert_eq!(ja, jb, "JSON bytes must be identical");
    }

    #[test]
    fn non_unique_minimizer_uses_distance_to_set() {
        let f = fixtures::two_squares_uniform();
        let report = replicate(
            &f,
            Point2::new(0.5, 0.5),
            StepSchedule::harmonic(),
            5000,
            30,
            3,
            &[500, 5000],
        )
        .unwrap();
        assert!(report.distance_to_set);
        assert!(!report.minimizer.unique);
        // Distance to the flat rectangle shrinks even though the x coordinate
        // wanders inside [1, 2].
        let last = report.l1_errors.last().unwrap();
        assert!(last.mean < 0.1, "mean set distance {}", last.mean);
        assert_eq!(report.rectangle_violations, 0);
    }

    #[test]
    fn report_serialization_round_trip() {
        let f = fixtures::square_uniform();
        let report = replicate(
            &f,
            Point2::new(0.5, 0.5),
            StepSchedule::harmonic(),
            100,
            4,
            1,
            &[10, 100],
        )
        .unwrap();
        let mut json = Vec::new();
        write_report_json(&mut json, &report).unwrap();
        let parsed: ReplicationReport = serde_json::from_slice(&json).unwrap();
        assert_eq!(parsed, report);

        let mut csv = Vec::new();
        write_error_curves_csv(&mut csv, &report).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().count(), 1 + report.checkpoints.len());
        assert!(text.starts_with("checkpoint,"));
    }
}
