//! Midpoint quadrature grid over the bounding box.
//!
//! Cell masses are density-at-center times cell area, with the membership
//! indicator applied. Threshold queries split the cell containing the
//! threshold proportionally, which keeps below/above additivity and
//! monotonicity exact on the shared partition.

use crate::geometry::{CompactBody, Point2};
use crate::measure::Axis;

#[derive(Debug)]
pub(crate) struct QuadratureGrid {
    pub xmin: f64,
    pub ymin: f64,
    pub dx: f64,
    pub dy: f64,
    pub n: usize,
    cell: Vec<f64>,
    col_mass: Vec<f64>,
    row_mass: Vec<f64>,
    col_prefix: Vec<f64>,
    row_prefix: Vec<f64>,
    col_moment_prefix: Vec<f64>,
    row_moment_prefix: Vec<f64>,
    pub total: f64,
    total_moment_x: f64,
    total_moment_y: f64,
}

pub(crate) struct GridBuildInfo {
    pub inside_cells: usize,
    /// True when every grid-interior cell of K (all four neighbours inside)
    /// carries strictly positive density.
    pub positivity_proxy: bool,
    pub min_density_inside: f64,
    pub max_density_inside: f64,
}

impl QuadratureGrid {
    pub fn build(
        body: &CompactBody,
        n: usize,
        density: impl Fn(f64, f64) -> f64,
    ) -> (Self, GridBuildInfo) {
        let bb = body.bounding_box();
        let dx = bb.width() / n as f64;
        let dy = bb.height() / n as f64;
        let cell_area = dx * dy;

        let mut cell = vec![0.0; n * n];
        let mut inside = vec![false; n * n];
        let mut dens = vec![0.0; n * n];
        let mut inside_cells = 0;
        let mut min_density = f64::INFINITY;
        let mut max_density = f64::NEG_INFINITY;
        for j in 0..n {
            let cy = bb.ymin + (j as f64 + 0.5) * dy;
            for i in 0..n {
                let cx = bb.xmin + (i as f64 + 0.5) * dx;
                if body.contains(Point2::new(cx, cy)) {
                    let d = density(cx, cy);
                    let k = j * n + i;
                    inside[k] = true;
                    dens[k] = d;
                    cell[k] = d * cell_area;
                    inside_cells += 1;
                    min_density = min_density.min(d);
                    max_density = max_density.max(d);
                }
            }
        }

        // Positivity proxy: strictly positive density on every interior cell.
        let mut positivity_proxy = true;
        'proxy: for j in 1..n.saturating_sub(1) {
            for i in 1..n - 1 {
                let k = j * n + i;
                if inside[k]
                    && inside[k - 1]
                    && inside[k + 1]
                    && inside[k - n]
                    && inside[k + n]
                    && dens[k] <= 0.0
                {
                    positivity_proxy = false;
                    break 'proxy;
                }
            }
        }

        let info = GridBuildInfo {
            inside_cells,
            positivity_proxy,
            min_density_inside: min_density,
            max_density_inside: max_density,
        };

        let mut grid = Self {
            xmin: bb.xmin,
            ymin: bb.ymin,
            dx,
            dy,
            n,
            cell,
            col_mass: vec![0.0; n],
            row_mass: vec![0.0; n],
            col_prefix: vec![0.0; n + 1],
            row_prefix: vec![0.0; n + 1],
            col_moment_prefix: vec![0.0; n + 1],
            row_moment_prefix: vec![0.0; n + 1],
            total: 0.0,
            total_moment_x: 0.0,
            total_moment_y: 0.0,
        };
        grid.rebuild_aggregates();
        (grid, info)
    }

    /// Rescale all masses, e.g. to normalize a uniform measure to mass one.
    pub fn scale(&mut self, factor: f64) {
        for m in &mut self.cell {
            *m *= factor;
        }
        self.rebuild_aggregates();
    }

    fn rebuild_aggregates(&mut self) {
        let n = self.n;
        for v in self.col_mass.iter_mut().chain(self.row_mass.iter_mut()) {
            *v = 0.0;
        }
        for j in 0..n {
            for i in 0..n {
                let m = self.cell[j * n + i];
                self.col_mass[i] += m;
                self.row_mass[j] += m;
            }
        }
        let mut acc = 0.0;
        let mut macc = 0.0;
        for i in 0..n {
            self.col_prefix[i] = acc;
            self.col_moment_prefix[i] = macc;
            acc += self.col_mass[i];
            macc += self.center(Axis::X, i) * self.col_mass[i];
        }
        self.col_prefix[n] = acc;
        self.col_moment_prefix[n] = macc;
        self.total = acc;
        self.total_moment_x = macc;

        let mut acc = 0.0;
        let mut macc = 0.0;
        for j in 0..n {
            self.row_prefix[j] = acc;
            self.row_moment_prefix[j] = macc;
            acc += self.row_mass[j];
            macc += self.center(Axis::Y, j) * self.row_mass[j];
        }
        self.row_prefix[n] = acc;
        self.row_moment_prefix[n] = macc;
        self.total_moment_y = macc;
    }

    fn center(&self, axis: Axis, k: usize) -> f64 {
        match axis {
            Axis::X => self.xmin + (k as f64 + 0.5) * self.dx,
            Axis::Y => self.ymin + (k as f64 + 0.5) * self.dy,
        }
    }

    fn axis_parts(&self, axis: Axis) -> (f64, f64, &[f64], &[f64], &[f64]) {
        match axis {
            Axis::X => (
                self.xmin,
                self.dx,
                &self.col_mass,
                &self.col_prefix,
                &self.col_moment_prefix,
            ),
            Axis::Y => (
                self.ymin,
                self.dy,
                &self.row_mass,
                &self.row_prefix,
                &self.row_moment_prefix,
            ),
        }
    }

    /// Index of the lane containing `t` plus the fraction of that lane below
    /// `t`, or the saturated end values.
    fn locate(&self, axis: Axis, t: f64) -> LaneSplit {
        let (min, d, ..) = self.axis_parts(axis);
        let u = (t - min) / d;
        if u <= 0.0 {
            LaneSplit::Before
        } else if u >= self.n as f64 {
            LaneSplit::After
        } else {
            let lane = (u.floor() as usize).min(self.n - 1);
            LaneSplit::Inside {
                lane,
                frac: (u - lane as f64).clamp(0.0, 1.0),
            }
        }
    }

    pub fn mass_below(&self, axis: Axis, t: f64) -> f64 {
        let (_, _, mass, prefix, _) = self.axis_parts(axis);
        match self.locate(axis, t) {
            LaneSplit::Before => 0.0,
            LaneSplit::After => self.total,
            LaneSplit::Inside { lane, frac } => prefix[lane] + frac * mass[lane],
        }
    }

    pub fn moment_below(&self, axis: Axis, t: f64) -> f64 {
        let (min, d, mass, _, moment_prefix) = self.axis_parts(axis);
        match self.locate(axis, t) {
            LaneSplit::Before => 0.0,
            LaneSplit::After => self.moment_total(axis),
            LaneSplit::Inside { lane, frac } => {
                // The split lane's mass is spread uniformly over its extent,
                // so the kept piece has mean coordinate halfway to t.
                let lo = min + lane as f64 * d;
                moment_prefix[lane] + frac * mass[lane] * 0.5 * (lo + t)
            }
        }
    }

    pub fn moment_total(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.total_moment_x,
            Axis::Y => self.total_moment_y,
        }
    }

    /// Masses of the four quadrants around `p`, ordered
    /// `[below-below, below-above, above-below, above-above]` in (x, y).
    /// All four come from one pass over the shared cells, so they sum to the
    /// grid total exactly up to rounding.
    pub fn quadrant_masses(&self, p: Point2) -> [f64; 4] {
        let n = self.n;
        let fx: Vec<f64> = (0..n)
            .map(|i| ((p.x - self.xmin) / self.dx - i as f64).clamp(0.0, 1.0))
            .collect();
        let fy: Vec<f64> = (0..n)
            .map(|j| ((p.y - self.ymin) / self.dy - j as f64).clamp(0.0, 1.0))
            .collect();
        let mut out = [0.0; 4];
        for (j, &gy) in fy.iter().enumerate() {
            let row = &self.cell[j * n..(j + 1) * n];
            for (&gx, &m) in fx.iter().zip(row) {
                if m == 0.0 {
                    continue;
                }
                out[0] += gx * gy * m;
                out[1] += gx * (1.0 - gy) * m;
                out[2] += (1.0 - gx) * gy * m;
                out[3] += (1.0 - gx) * (1.0 - gy) * m;
            }
        }
        out
    }

    /// Sum of taxicab distances from `p` to the cell centers, weighted by
    /// cell mass. Equals the full 2-D midpoint sum because the taxicab
    /// distance separates into the two grid marginals.
    pub fn taxicab_integral(&self, p: Point2) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            acc += (p.x - self.center(Axis::X, i)).abs() * self.col_mass[i];
        }
        for j in 0..self.n {
            acc += (p.y - self.center(Axis::Y, j)).abs() * self.row_mass[j];
        }
        acc
    }
}

enum LaneSplit {
    Before,
    After,
    Inside { lane: usize, frac: f64 },
}
