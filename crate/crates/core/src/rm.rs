//! Robbins-Monro minimization of the conic function.
//!
//! The chain moves by `X_{k+1} = X_k - t_{k+1} Q_{k+1}` where `Q` compares the
//! current state to a fresh sample from the measure, componentwise, with ties
//! going to +1. The conditional mean of `Q` given the state is exactly the
//! gradient of the conic function, so the recursion is a stochastic gradient
//! step with unit-magnitude component noise.
//!
//! Randomness comes from ChaCha8 streams seeded with 64-bit seeds: bitwise
//! reproducible across platforms, and replications take disjoint streams of
//! the same seed.

use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conic::ConicFunction;
use crate::error::{Error, Result};
use crate::geometry::{BoundingBox, CompactBody, Point2};

/// Decreasing step sizes `t_k = t1 / k^gamma` with divergent sum and
/// square-summable tail (`gamma` in (1/2, 1]).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepSchedule {
    t1: f64,
    gamma: f64,
}

impl StepSchedule {
    pub fn power(t1: f64, gamma: f64) -> Result<Self> {
        if !(t1.is_finite() && t1 > 0.0) {
            return Err(Error::InvalidSchedule(format!(
                "t1 must be positive, got {t1}"
            )));
        }
        if !(gamma > 0.5 && gamma <= 1.0) {
            return Err(Error::InvalidSchedule(format!(
                "gamma must lie in (1/2, 1], got {gamma}"
            )));
        }
        Ok(Self { t1, gamma })
    }

    /// The schedule `t_k = 1/k` used throughout the worked examples.
    pub fn harmonic() -> Self {
        Self {
            t1: 1.0,
            gamma: 1.0,
        }
    }

    /// Step size for iteration `k >= 1`.
    pub fn step(&self, k: usize) -> f64 {
        if self.gamma == 1.0 {
            // Exact division keeps the documented first steps bit-exact.
            self.t1 / k as f64
        } else {
            self.t1 / (k as f64).powf(self.gamma)
        }
    }

    /// The largest step, `t_1`.
    pub fn max_step(&self) -> f64 {
        self.t1
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Componentwise comparison sign vector; components are exactly +-1 and the
/// Euclidean norm is always sqrt(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignVector {
    s1: i8,
    s2: i8,
}

impl SignVector {
    pub fn s1(&self) -> i8 {
        self.s1
    }

    pub fn s2(&self) -> i8 {
        self.s2
    }

    pub fn as_floats(&self) -> (f64, f64) {
        (f64::from(self.s1), f64::from(self.s2))
    }
}

/// Sign vector of the state `x` against the sample `p`: +1 on a coordinate
/// where `x` is at least `p` (ties go to +1), else -1.
pub fn q_vector(x: Point2, p: Point2) -> SignVector {
    SignVector {
        s1: if x.x >= p.x { 1 } else { -1 },
        s2: if x.y >= p.y { 1 } else { -1 },
    }
}

/// The rectangle the chain can never leave: the bounding box of the body
/// inflated by `t1 * sqrt(2)` on every side.
pub fn inflated_rectangle(body: &CompactBody, schedule: &StepSchedule) -> BoundingBox {
    body.bounding_box()
        .inflate(schedule.max_step() * std::f64::consts::SQRT_2)
}

/// Trajectories longer than this are thinned when recorded.
pub const THINNING_THRESHOLD: usize = 1_000_000;

const THINNED_STATES: usize = 10_000;

/// Recorded chain states with seed and schedule metadata. Long runs are
/// thinned but always keep `X_0`, `X_1`, `X_2`, and the final state.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    states: Vec<(usize, Point2)>,
    pub seed: u64,
    pub schedule: StepSchedule,
    pub iterations: usize,
}

impl Trajectory {
    /// The recorded `(k, X_k)` pairs in increasing `k`.
    pub fn states(&self) -> &[(usize, Point2)] {
        &self.states
    }

    pub fn state_at(&self, k: usize) -> Option<Point2> {
        self.states
            .binary_search_by_key(&k, |&(i, _)| i)
            .ok()
            .map(|idx| self.states[idx].1)
    }

    pub fn final_state(&self) -> Point2 {
        self.states.last().expect("trajectory stores X_0").1
    }

    pub fn is_thinned(&self) -> bool {
        self.iterations > THINNING_THRESHOLD
    }
}

/// Run the recursion for `n` steps from `x0` (which must lie in the body).
/// Deterministic given the seed.
pub fn run_chain(
    f: &ConicFunction,
    x0: Point2,
    schedule: StepSchedule,
    n: usize,
    seed: u64,
) -> Result<Trajectory> {
    if n == 0 {
        return Err(Error::NoIterations);
    }
    if !f.body().contains(x0) {
        return Err(Error::StartNotInBody { x: x0.x, y: x0.y });
    }
    let stride = if n > THINNING_THRESHOLD {
        n.div_ceil(THINNED_STATES)
    } else {
        1
    };
    let mut states = Vec::with_capacity(n.min(THINNED_STATES + 4) + 1);
    states.push((0, x0));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    drive_chain(f, x0, schedule, n, &mut rng, |k, x| {
        if k <= 2 || k % stride == 0 || k == n {
            states.push((k, x));
        }
    })?;
    Ok(Trajectory {
        states,
        seed,
        schedule,
        iterations: n,
    })
}

/// Step the chain, calling `observe(k, X_k)` for k = 1..=n.
pub(crate) fn drive_chain(
    f: &ConicFunction,
    x0: Point2,
    schedule: StepSchedule,
    n: usize,
    rng: &mut ChaCha8Rng,
    mut observe: impl FnMut(usize, Point2),
) -> Result<()> {
    let measure = f.measure();
    if !measure.is_probability() {
        return Err(Error::NotProbabilityMeasure {
            actual: measure.total_mass(),
        });
    }
    let mut state = x0;
    for k in 1..=n {
        let t = schedule.step(k);
        let p = measure.sample(rng)?;
        let (q1, q2) = q_vector(state, p).as_floats();
        state = Point2::new(state.x - t * q1, state.y - t * q2);
        observe(k, state);
    }
    Ok(())
}

/// Monte Carlo estimate of `E(Q | X = x)` from fresh samples; converges to
/// the gradient of the conic function at `x`.
pub fn conditional_mean_q(
    f: &ConicFunction,
    x: Point2,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::InvalidParameter(
            "conditional_mean_q needs at least one sample".into(),
        ));
    }
    let measure = f.measure();
    if !measure.is_probability() {
        return Err(Error::NotProbabilityMeasure {
            actual: measure.total_mass(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum1, mut sum2) = (0.0, 0.0);
    for _ in 0..samples {
        let p = measure.sample(&mut rng)?;
        let (q1, q2) = q_vector(x, p).as_floats();
        sum1 += q1;
        sum2 += q2;
    }
    Ok((sum1 / samples as f64, sum2 / samples as f64))
}

/// Write a trajectory as CSV with metadata header rows.
pub fn write_trajectory_csv<W: Write>(
    mut w: W,
    traj: &Trajectory,
    fixture_hash: Option<&str>,
) -> io::Result<()> {
    writeln!(w, "# seed={}", traj.seed)?;
    writeln!(
        w,
        "# schedule=power,t1={},gamma={}",
        traj.schedule.t1(),
        traj.schedule.gamma()
    )?;
    if let Some(hash) = fixture_hash {
        writeln!(w, "# fixture_hash={hash}")?;
    }
    writeln!(w, "k,t_k,x1,x2")?;
    for &(k, p) in traj.states() {
        let t = if k == 0 { 0.0 } else { traj.schedule.step(k) };
        writeln!(w, "{k},{t},{},{}", p.x, p.y)?;
    }
    Ok(())
}
