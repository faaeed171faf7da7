//! Finite measures on compact bodies: mass, moment, X-ray, and sampling queries.
//!
//! Every supported measure is absolutely continuous with respect to Lebesgue
//! measure, so vertical and horizontal lines carry no mass and the open/closed
//! distinction in half-plane queries vanishes. Discrete measures are
//! deliberately not representable.
//!
//! The uniform measure answers mass and moment queries from exact shape
//! geometry; density measures answer them from the midpoint quadrature grid.
//! X-ray queries go through exact slices in all cases.

mod analytic;
mod density;
mod grid;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use density::{Density1, GeneralDensity};

use crate::error::{Error, Result};
use crate::geometry::{CompactBody, Point2};
use grid::QuadratureGrid;

/// Coordinate axis: `X` is the first coordinate (alpha), `Y` the second (beta).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// Which open half-plane a threshold query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Below,
    Above,
}

/// An axis-aligned open half-plane `{ coord < t }` or `{ coord > t }`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlaneQuery {
    pub axis: Axis,
    pub side: Side,
    pub threshold: f64,
}

impl HalfPlaneQuery {
    pub fn below(axis: Axis, threshold: f64) -> Self {
        Self {
            axis,
            side: Side::Below,
            threshold,
        }
    }

    pub fn above(axis: Axis, threshold: f64) -> Self {
        Self {
            axis,
            side: Side::Above,
            threshold,
        }
    }
}

/// The measure variants supported on a body.
#[derive(Clone, Debug)]
pub enum MeasureKind {
    /// Density `1/A(K)` on the body: the normalized Lebesgue measure.
    UniformOnBody,
    /// An arbitrary non-negative density with a declared supremum bound.
    GeneralDensity(GeneralDensity),
    /// Product measure `(f1 dx) x (f2 dy)` restricted to the body.
    ProductDensity { f1: Density1, f2: Density1 },
}

/// Masses of the four quadrants around a point, named by the sign vector the
/// quadrant induces: `pp` is the mass of samples dominated by the point in
/// both coordinates.
#[derive(Clone, Copy, Debug, Default)]
pub struct QuadrantMasses {
    pub pp: f64,
    pub pm: f64,
    pub mp: f64,
    pub mm: f64,
}

impl QuadrantMasses {
    pub fn sum(&self) -> f64 {
        self.pp + self.pm + self.mp + self.mm
    }
}

pub const DEFAULT_RESOLUTION: usize = 1024;

/// Total mass must match 1 within this tolerance for sampling and chain runs.
pub const PROBABILITY_TOLERANCE: f64 = 1e-6;

const MAX_REJECTIONS: u64 = 1_000_000;

/// A finite measure `mu` supported on a compact body `K`.
#[derive(Clone, Debug)]
pub struct BodyMeasure {
    body: CompactBody,
    kind: MeasureKind,
    resolution: usize,
    grid: std::sync::Arc<QuadratureGrid>,
    total: f64,
    positivity_proxy: bool,
}

impl BodyMeasure {
    /// Build a measure, its quadrature grid, and run the construction checks:
    /// densities must be non-negative and within their declared bounds on the
    /// grid, and the total mass must be strictly positive.
    pub fn new(body: CompactBody, kind: MeasureKind, resolution: usize) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::InvalidParameter(
                "quadrature resolution must be positive".into(),
            ));
        }
        let (mut grid, info) = match &kind {
            MeasureKind::UniformOnBody => QuadratureGrid::build(&body, resolution, |_, _| 1.0),
            MeasureKind::GeneralDensity(d) => {
                d.sup_bound(); // validated at construction of GeneralDensity
                QuadratureGrid::build(&body, resolution, |x, y| d.eval(x, y))
            }
            MeasureKind::ProductDensity { f1, f2 } => {
                f1.validate()?;
                f2.validate()?;
                QuadratureGrid::build(&body, resolution, |x, y| f1.eval(x) * f2.eval(y))
            }
        };
        if info.inside_cells > 0 && info.min_density_inside < 0.0 {
            return Err(Error::InvalidDensity(format!(
                "density is negative on the quadrature grid (min {})",
                info.min_density_inside
            )));
        }
        if info.inside_cells == 0 || grid.total <= 0.0 {
            return Err(Error::DegenerateMeasure(grid.total));
        }
        if let MeasureKind::GeneralDensity(d) = &kind {
            // Spot check of the declared supremum on the grid.
            if info.max_density_inside > d.sup_bound() * (1.0 + 1e-12) {
                return Err(Error::InvalidDensity(format!(
                    "density reaches {} on the grid, above the declared bound {}",
                    info.max_density_inside,
                    d.sup_bound()
                )));
            }
        }

        let total = match &kind {
            MeasureKind::UniformOnBody => {
                // Normalized analytically; the grid is rescaled to match so
                // that grid-backed queries share the same total.
                grid.scale(1.0 / grid.total);
                1.0
            }
            _ => grid.total,
        };

        Ok(Self {
            body,
            kind,
            resolution,
            grid: std::sync::Arc::new(grid),
            total,
            positivity_proxy: info.positivity_proxy,
        })
    }

    /// Uniform measure at the default resolution.
    pub fn uniform(body: CompactBody) -> Result<Self> {
        Self::new(body, MeasureKind::UniformOnBody, DEFAULT_RESOLUTION)
    }

    pub fn body(&self) -> &CompactBody {
        &self.body
    }

    pub fn kind(&self) -> &MeasureKind {
        &self.kind
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn is_product(&self) -> bool {
        matches!(self.kind, MeasureKind::ProductDensity { .. })
    }

    /// `mu(K)`. Exactly 1 for the uniform measure; the quadrature total for
    /// density measures.
    pub fn total_mass(&self) -> f64 {
        self.total
    }

    pub fn is_probability(&self) -> bool {
        (self.total - 1.0).abs() <= PROBABILITY_TOLERANCE
    }

    /// Sufficient proxy for "every neighbourhood of every body point carries
    /// positive mass": strictly positive density on all grid-interior cells
    /// of K. Reported, not asserted; the real property is not decidable for
    /// arbitrary densities.
    pub fn positivity_proxy(&self) -> bool {
        self.positivity_proxy
    }

    /// Mass of the open half-plane `{coord < t}` or `{coord > t}` intersected
    /// with `K`. Monotone in the threshold; below + above equals the total.
    pub fn half_plane_mass(&self, q: HalfPlaneQuery) -> f64 {
        let below = match &self.kind {
            MeasureKind::UniformOnBody => {
                analytic::mass_below(self.body.shape(), q.axis, q.threshold) / self.body.area()
            }
            _ => self.grid.mass_below(q.axis, q.threshold),
        };
        match q.side {
            Side::Below => below,
            Side::Above => self.total - below,
        }
    }

    /// `∫ coord · 1{half-plane} dmu` for the query's axis coordinate.
    pub fn truncated_first_moment(&self, q: HalfPlaneQuery) -> f64 {
        let (below, total) = match &self.kind {
            MeasureKind::UniformOnBody => {
                let area = self.body.area();
                let bb = self.body.bounding_box();
                let hi = match q.axis {
                    Axis::X => bb.xmax,
                    Axis::Y => bb.ymax,
                };
                (
                    analytic::moment_below(self.body.shape(), q.axis, q.threshold) / area,
                    analytic::moment_below(self.body.shape(), q.axis, hi) / area,
                )
            }
            _ => (
                self.grid.moment_below(q.axis, q.threshold),
                self.grid.moment_total(q.axis),
            ),
        };
        match q.side {
            Side::Below => below,
            Side::Above => total - below,
        }
    }

    /// Taxicab-distance integral over the quadrature grid: the direct
    /// evaluation path of the conic function.
    pub(crate) fn grid_taxicab_integral(&self, p: Point2) -> f64 {
        self.grid.taxicab_integral(p)
    }

    /// The four quadrant masses around `p`, evaluated on the quadrature grid.
    /// They sum to the grid total exactly up to floating-point rounding.
    pub fn quadrant_masses(&self, p: Point2) -> QuadrantMasses {
        let [pp, pm, mp, mm] = self.grid.quadrant_masses(p);
        QuadrantMasses { pp, pm, mp, mm }
    }

    /// Generalized X-ray function of a product measure: for `Axis::X` the
    /// integral of `f2` over the vertical slice at `t`, for `Axis::Y` the
    /// integral of `f1` over the horizontal slice at `t`. Exact per slice.
    pub fn xray(&self, axis: Axis, t: f64) -> Result<f64> {
        let MeasureKind::ProductDensity { f1, f2 } = &self.kind else {
            return Err(Error::UnsupportedMeasureKind);
        };
        Ok(match axis {
            Axis::X => self
                .body
                .vertical_slice(t)
                .iter()
                .map(|&(lo, hi)| f2.integral(lo, hi))
                .sum(),
            Axis::Y => self
                .body
                .horizontal_slice(t)
                .iter()
                .map(|&(lo, hi)| f1.integral(lo, hi))
                .sum(),
        })
    }

    /// Supremum of the X-ray function over the quadrature grid midpoints.
    pub fn xray_sup(&self, axis: Axis) -> Result<f64> {
        if !self.is_product() {
            return Err(Error::UnsupportedMeasureKind);
        }
        let bb = self.body.bounding_box();
        let (lo, step) = match axis {
            Axis::X => (bb.xmin, bb.width() / self.resolution as f64),
            Axis::Y => (bb.ymin, bb.height() / self.resolution as f64),
        };
        let mut sup: f64 = 0.0;
        for k in 0..self.resolution {
            let t = lo + (k as f64 + 0.5) * step;
            sup = sup.max(self.xray(axis, t)?);
        }
        Ok(sup)
    }

    /// Both sides of the Cavalieri identity for a half-plane: the half-plane
    /// mass (quadrature grid route) and the iterated X-ray integral
    /// (exact-slice route). The two routes share no intermediate values, so
    /// their agreement is a genuine consistency check.
    pub fn verify_cavalieri(&self, q: HalfPlaneQuery) -> Result<(f64, f64)> {
        let MeasureKind::ProductDensity { f1, f2 } = &self.kind else {
            return Err(Error::UnsupportedMeasureKind);
        };
        let lhs = self.half_plane_mass(q);
        let bb = self.body.bounding_box();
        let (lo_bb, hi_bb) = match q.axis {
            Axis::X => (bb.xmin, bb.xmax),
            Axis::Y => (bb.ymin, bb.ymax),
        };
        let (a, b) = match q.side {
            Side::Below => (lo_bb, q.threshold.min(hi_bb)),
            Side::Above => (q.threshold.max(lo_bb), hi_bb),
        };
        let mut rhs = 0.0;
        if b > a {
            let m = self.resolution;
            let h = (b - a) / m as f64;
            for k in 0..m {
                let s = a + (k as f64 + 0.5) * h;
                let marginal = match q.axis {
                    Axis::X => f1.eval(s),
                    Axis::Y => f2.eval(s),
                };
                rhs += self.xray(q.axis, s)? * marginal * h;
            }
        }
        Ok((lhs, rhs))
    }

    /// Draw one point distributed according to the measure by rejection
    /// sampling from the bounding box. Deterministic given the generator
    /// state.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point2> {
        if !self.is_probability() {
            return Err(Error::NotProbabilityMeasure { actual: self.total });
        }
        let bb = self.body.bounding_box();
        for _ in 0..MAX_REJECTIONS {
            let p = Point2::new(
                rng.random_range(bb.xmin..bb.xmax),
                rng.random_range(bb.ymin..bb.ymax),
            );
            let accept = match &self.kind {
                MeasureKind::UniformOnBody => self.body.contains(p),
                MeasureKind::GeneralDensity(d) => {
                    let u: f64 = rng.random();
                    self.body.contains(p) && u * d.sup_bound() < d.eval(p.x, p.y)
                }
                MeasureKind::ProductDensity { f1, f2 } => {
                    let u: f64 = rng.random();
                    self.body.contains(p)
                        && u * f1.sup_bound() * f2.sup_bound() < f1.eval(p.x) * f2.eval(p.y)
                }
            };
            if accept {
                return Ok(p);
            }
        }
        Err(Error::RejectionStall(MAX_REJECTIONS))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CompactBody;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_square() -> CompactBody {
        CompactBody::rectangle(0.0, 0.0, 1.0, 1.0).unwrap()
    }

    fn right_triangle() -> CompactBody {
        CompactBody::simple_polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn square_uniform() -> BodyMeasure {
        BodyMeasure::uniform(unit_square()).unwrap()
    }

    /// Brute-force half-plane mass by counting a dense membership grid,
    /// independent of the production mass path.
    fn brute_force_below(body: &CompactBody, axis: Axis, t: f64, n: usize) -> f64 {
        let bb = body.bounding_box();
        let dx = bb.width() / n as f64;
        let dy = bb.height() / n as f64;
        let mut inside = 0u64;
        let mut below = 0u64;
        for j in 0..n {
            let y = bb.ymin + (j as f64 + 0.5) * dy;
            for i in 0..n {
                let x = bb.xmin + (i as f64 + 0.5) * dx;
                if body.contains(Point2::new(x, y)) {
                    inside += 1;
                    let c = match axis {
                        Axis::X => x,
                        Axis::Y => y,
                    };
                    if c < t {
                        below += 1;
                    }
                }
            }
        }
        below as f64 / inside as f64
    }

    #[test]
    fn total_mass_examples() {
        assert_eq!(square_uniform().total_mass(), 1.0);

        let h1 = MeasureKind::GeneralDensity(GeneralDensity::constant(1.0).unwrap());
        let m = BodyMeasure::new(unit_square(), h1, 1024).unwrap();
        assert!((m.total_mass() - 1.0).abs() < 1e-6);

        let h2 = MeasureKind::GeneralDensity(GeneralDensity::constant(2.0).unwrap());
        let m = BodyMeasure::new(right_triangle(), h2, 1024).unwrap();
        assert!((m.total_mass() - 1.0).abs() < 2e-3);
    }

    #[test]
    fn half_plane_mass_examples() {
        let m = square_uniform();
        assert!((m.half_plane_mass(HalfPlaneQuery::below(Axis::X, 0.25)) - 0.25).abs() < 1e-12);
        assert!((m.half_plane_mass(HalfPlaneQuery::above(Axis::X, 0.25)) - 0.75).abs() < 1e-12);

        let tri = BodyMeasure::uniform(right_triangle()).unwrap();
        let got = tri.half_plane_mass(HalfPlaneQuery::below(Axis::X, 0.5));
        assert!((got - 0.75).abs() < 1e-12, "1 - (1-x)^2 at x = 0.5");
        let brute = brute_force_below(&right_triangle(), Axis::X, 0.5, 2000);
        assert!((got - brute).abs() < 2e-3, "analytic vs brute-force count");
    }

    #[test]
    fn truncated_first_moment_examples() {
        let m = square_uniform();
        assert!((m.truncated_first_moment(HalfPlaneQuery::below(Axis::X, 1.0)) - 0.5).abs() < 1e-6);
        assert_eq!(
            m.truncated_first_moment(HalfPlaneQuery::below(Axis::X, 0.0)),
            0.0
        );
        assert!(
            (m.truncated_first_moment(HalfPlaneQuery::below(Axis::X, 0.5)) - 0.125).abs() < 1e-6
        );
    }

    #[test]
    fn additivity_and_monotonicity() {
        let measures = vec![
            square_uniform(),
            BodyMeasure::uniform(right_triangle()).unwrap(),
            BodyMeasure::new(
                right_triangle(),
                MeasureKind::GeneralDensity(GeneralDensity::constant(2.0).unwrap()),
                512,
            )
            .unwrap(),
            BodyMeasure::new(
                unit_square(),
                MeasureKind::ProductDensity {
                    f1: Density1::Const {
                        lo: 0.0,
                        hi: 1.0,
                        value: 1.0,
                    },
                    f2: Density1::Const {
                        lo: 0.0,
                        hi: 1.0,
                        value: 1.0,
                    },
                },
                512,
            )
            .unwrap(),
        ];
        for m in &measures {
            let mut last = -1.0;
            for k in 0..=40 {
                let t = -0.2 + 1.4 * k as f64 / 40.0;
                for axis in [Axis::X, Axis::Y] {
                    let below = m.half_plane_mass(HalfPlaneQuery::below(axis, t));
                    let above = m.half_plane_mass(HalfPlaneQuery::above(axis, t));
                    let rel = (below + above - m.total_mass()).abs() / m.total_mass();
                    assert!(rel < 1e-9, "additivity at t = {t}");
                }
                let below = m.half_plane_mass(HalfPlaneQuery::below(Axis::X, t));
                assert!(below >= last - 1e-15, "monotone at t = {t}");
                last = below;
            }
        }
    }

    #[test]
    fn xray_examples() {
        let prod = MeasureKind::ProductDensity {
            f1: Density1::Const {
                lo: 0.0,
                hi: 1.0,
                value: 1.0,
            },
            f2: Density1::Const {
                lo: 0.0,
                hi: 1.0,
                value: 1.0,
            },
        };
        let m = BodyMeasure::new(unit_square(), prod.clone(), 256).unwrap();
        assert_eq!(m.xray(Axis::X, 0.5).unwrap(), 1.0);
        assert_eq!(m.xray(Axis::X, 2.0).unwrap(), 0.0);

        let tri = BodyMeasure::new(right_triangle(), prod, 256).unwrap();
        assert!((tri.xray(Axis::X, 0.25).unwrap() - 0.75).abs() < 1e-8);

        assert!(matches!(
            square_uniform().xray(Axis::X, 0.5),
            Err(Error::UnsupportedMeasureKind)
        ));
    }

    #[test]
    fn cavalieri_examples() {
        let prod = |body| {
            BodyMeasure::new(
                body,
                MeasureKind::ProductDensity {
                    f1: Density1::Const {
                        lo: -2.0,
                        hi: 2.0,
                        value: 1.0,
                    },
                    f2: Density1::Const {
                        lo: -2.0,
                        hi: 2.0,
                        value: 1.0,
                    },
                },
                1024,
            )
            .unwrap()
        };
        let sq = prod(unit_square());
        let (lhs, rhs) = sq
            .verify_cavalieri(HalfPlaneQuery::below(Axis::X, 0.4))
            .unwrap();
        assert!((lhs - 0.4).abs() < 1e-6);
        assert!((rhs - 0.4).abs() < 1e-6);

        let (lhs, rhs) = sq
            .verify_cavalieri(HalfPlaneQuery::below(Axis::X, 0.0))
            .unwrap();
        assert_eq!((lhs, rhs), (0.0, 0.0));

        let tri = prod(right_triangle());
        let (lhs, rhs) = tri
            .verify_cavalieri(HalfPlaneQuery::below(Axis::X, 0.5))
            .unwrap();
        assert!((lhs - rhs).abs() < 1e-3, "lhs {lhs} rhs {rhs}");
        // Normalized by the total, this is the 0.75 of the uniform triangle.
        assert!((lhs / tri.total_mass() - 0.75).abs() < 2e-3);
    }

    #[test]
    fn cavalieri_random_thresholds() {
        use rand::Rng;
        let m = BodyMeasure::new(
            right_triangle(),
            MeasureKind::ProductDensity {
                f1: Density1::Linear {
                    lo: 0.0,
                    hi: 1.0,
                    v_lo: 2.0,
                    v_hi: 0.0,
                },
                f2: Density1::Const {
                    lo: 0.0,
                    hi: 1.0,
                    value: 1.0,
                },
            },
            1024,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..20 {
            let t = rng.random_range(-0.2..1.2);
            for axis in [Axis::X, Axis::Y] {
                for side in [Side::Below, Side::Above] {
                    let (lhs, rhs) = m
                        .verify_cavalieri(HalfPlaneQuery {
                            axis,
                            side,
                            threshold: t,
                        })
                        .unwrap();
                    assert!(
                        (lhs - rhs).abs() < 1e-3,
                        "axis {axis:?} side {side:?} t {t}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn sampling_support_and_frequencies() {
        let m = square_uniform();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 100_000;
        let mut sum = (0.0, 0.0);
        let mut below_half = 0u32;
        for _ in 0..n {
            let p = m.sample(&mut rng).unwrap();
            assert!(m.body().contains(p));
            sum.0 += p.x;
            sum.1 += p.y;
            if p.x < 0.5 {
                below_half += 1;
            }
        }
        let mean = (sum.0 / n as f64, sum.1 / n as f64);
        // CLT bound: 3 standard errors of the uniform mean.
        let se = (1.0f64 / 12.0 / n as f64).sqrt();
        assert!((mean.0 - 0.5).abs() < 3.0 * se, "mean x {}", mean.0);
        assert!((mean.1 - 0.5).abs() < 3.0 * se, "mean y {}", mean.1);
        let se_freq = (0.25f64 / n as f64).sqrt();
        assert!((below_half as f64 / n as f64 - 0.5).abs() < 4.0 * se_freq);
    }

    #[test]
    fn triangle_sampling_half_plane_frequency() {
        let m = BodyMeasure::uniform(right_triangle()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000;
        let mut below = 0u32;
        for _ in 0..n {
            let p = m.sample(&mut rng).unwrap();
            if p.x < 0.5 {
                below += 1;
            }
        }
        let freq = below as f64 / n as f64;
        let se = (0.75f64 * 0.25 / n as f64).sqrt();
        assert!((freq - 0.75).abs() < 3.0 * se, "freq {freq}");
    }

    #[test]
    fn quadrant_masses_sum_to_total() {
        for m in [
            square_uniform(),
            BodyMeasure::new(
                right_triangle(),
                MeasureKind::GeneralDensity(GeneralDensity::constant(2.0).unwrap()),
                512,
            )
            .unwrap(),
        ] {
            let q = m.quadrant_masses(Point2::new(0.3, 0.4));
            assert!((q.sum() - m.grid.total).abs() < 1e-12 * m.total_mass().max(1.0));
            // The grid total tracks the reported total mass.
            assert!((m.grid.total - m.total_mass()).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_requires_probability_measure() {
        let m = BodyMeasure::new(
            unit_square(),
            MeasureKind::GeneralDensity(GeneralDensity::constant(2.0).unwrap()),
            256,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            m.sample(&mut rng),
            Err(Error::NotProbabilityMeasure { .. })
        ));
    }

    #[test]
    fn rejection_stall_on_wildly_loose_bound() {
        // One grid cell of mass one, declared sup bound a factor 1e6 too big:
        // acceptance probability ~1e-12 per proposal.
        let n = 256.0;
        let spike = GeneralDensity::from_fn(
            move |x, y| {
                if (0.0..1.0 / n).contains(&x) && (0.0..1.0 / n).contains(&y) {
                    n * n
                } else {
                    0.0
                }
            },
            n * n * 1e6,
        )
        .unwrap();
        let m = BodyMeasure::new(unit_square(), MeasureKind::GeneralDensity(spike), 256).unwrap();
        assert!(m.is_probability());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(matches!(m.sample(&mut rng), Err(Error::RejectionStall(_))));
    }

    #[test]
    fn degenerate_and_invalid_densities() {
        // Density vanishing on the body: degenerate.
        let off = GeneralDensity::from_fn(|x, _| if x > 10.0 { 1.0 } else { 0.0 }, 1.0).unwrap();
        assert!(matches!(
            BodyMeasure::new(unit_square(), MeasureKind::GeneralDensity(off), 128),
            Err(Error::DegenerateMeasure(_))
        ));
        // Density exceeding its declared bound: rejected by the spot check.
        let over = GeneralDensity::from_fn(|_, _| 2.0, 1.0).unwrap();
        assert!(matches!(
            BodyMeasure::new(unit_square(), MeasureKind::GeneralDensity(over), 128),
            Err(Error::InvalidDensity(_))
        ));
        // Negative density: rejected.
        let neg = GeneralDensity::from_fn(|x, _| x - 0.5, 1.0).unwrap();
        assert!(matches!(
            BodyMeasure::new(unit_square(), MeasureKind::GeneralDensity(neg), 128),
            Err(Error::InvalidDensity(_))
        ));
    }

    #[test]
    fn positivity_proxy_detects_interior_holes() {
        assert!(square_uniform().positivity_proxy());
        let holed = GeneralDensity::from_fn(
            |x, y| {
                if (0.4..0.6).contains(&x) && (0.4..0.6).contains(&y) {
                    0.0
                } else {
                    1.0
                }
            },
            1.0,
        )
        .unwrap();
        let m = BodyMeasure::new(unit_square(), MeasureKind::GeneralDensity(holed), 128).unwrap();
        assert!(!m.positivity_proxy());
    }
}
