//! One- and two-dimensional density families with exact supremum bounds.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::Point2;

/// One-dimensional density with compact support and a known exact supremum.
///
/// These are the marginal factors of product measures. Integrals over
/// intervals are evaluated in closed form, which keeps X-ray values exact
/// per slice.
#[derive(Clone, Debug, PartialEq)]
pub enum Density1 {
    /// Constant `value` on `[lo, hi]`, zero outside.
    Const { lo: f64, hi: f64, value: f64 },
    /// Linear interpolation from `v_lo` at `lo` to `v_hi` at `hi`, zero outside.
    Linear {
        lo: f64,
        hi: f64,
        v_lo: f64,
        v_hi: f64,
    },
    /// Piecewise constant table: `values[i]` on `[breaks[i], breaks[i+1]]`.
    PiecewiseConst { breaks: Vec<f64>, values: Vec<f64> },
}

impl Density1 {
    pub fn validate(&self) -> Result<()> {
        match self {
            Density1::Const { lo, hi, value } => {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(Error::InvalidDensity(format!(
                        "constant density needs lo < hi, got [{lo}, {hi}]"
                    )));
                }
                if !(value.is_finite() && *value >= 0.0) {
                    return Err(Error::InvalidDensity(format!(
                        "density value must be non-negative, got {value}"
                    )));
                }
            }
            Density1::Linear { lo, hi, v_lo, v_hi } => {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(Error::InvalidDensity(format!(
                        "linear density needs lo < hi, got [{lo}, {hi}]"
                    )));
                }
                if !(v_lo.is_finite() && v_hi.is_finite() && *v_lo >= 0.0 && *v_hi >= 0.0) {
                    return Err(Error::InvalidDensity(
                        "linear density values must be non-negative".into(),
                    ));
                }
            }
            Density1::PiecewiseConst { breaks, values } => {
                if breaks.len() != values.len() + 1 || values.is_empty() {
                    return Err(Error::InvalidDensity(
                        "piecewise table needs breaks.len() == values.len() + 1".into(),
                    ));
                }
                if breaks.iter().any(|b| !b.is_finite()) || breaks.windows(2).any(|w| w[0] >= w[1])
                {
                    return Err(Error::InvalidDensity(
                        "piecewise breaks must be finite and strictly increasing".into(),
                    ));
                }
                if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
                    return Err(Error::InvalidDensity(
                        "piecewise values must be non-negative".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Support interval (smallest closed interval outside which the density is zero).
    pub fn support(&self) -> (f64, f64) {
        match self {
            Density1::Const { lo, hi, .. } | Density1::Linear { lo, hi, .. } => (*lo, *hi),
            Density1::PiecewiseConst { breaks, .. } => (breaks[0], *breaks.last().unwrap()),
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Density1::Const { lo, hi, value } => {
                if *lo <= s && s <= *hi {
                    *value
                } else {
                    0.0
                }
            }
            Density1::Linear { lo, hi, v_lo, v_hi } => {
                if *lo <= s && s <= *hi {
                    v_lo + (v_hi - v_lo) * (s - lo) / (hi - lo)
                } else {
                    0.0
                }
            }
            Density1::PiecewiseConst { breaks, values } => {
                if s < breaks[0] || s > *breaks.last().unwrap() {
                    return 0.0;
                }
                // partition_point: first break strictly greater than s.
                let k = breaks.partition_point(|b| *b <= s);
                values[(k.max(1) - 1).min(values.len() - 1)]
            }
        }
    }

    /// Exact supremum of the density.
    pub fn sup_bound(&self) -> f64 {
        match self {
            Density1::Const { value, .. } => *value,
            Density1::Linear { v_lo, v_hi, .. } => v_lo.max(*v_hi),
            Density1::PiecewiseConst { values, .. } => values.iter().cloned().fold(0.0, f64::max),
        }
    }

    /// Exact integral over `[a, b]`.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        match self {
            Density1::Const { lo, hi, value } => {
                let l = a.max(*lo);
                let r = b.min(*hi);
                value * (r - l).max(0.0)
            }
            Density1::Linear { lo, hi, .. } => {
                let l = a.max(*lo);
                let r = b.min(*hi);
                if r <= l {
                    return 0.0;
                }
                0.5 * (self.eval(l) + self.eval(r)) * (r - l)
            }
            Density1::PiecewiseConst { breaks, values } => {
                let mut acc = 0.0;
                for (k, v) in values.iter().enumerate() {
                    let l = a.max(breaks[k]);
                    let r = b.min(breaks[k + 1]);
                    if r > l {
                        acc += v * (r - l);
                    }
                }
                acc
            }
        }
    }
}

/// General density on the plane, supplied as a function plus a finite upper
/// bound for its supremum over the body.
#[derive(Clone)]
pub struct GeneralDensity {
    func: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    sup_bound: f64,
}

impl GeneralDensity {
    pub fn from_fn(
        func: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        sup_bound: f64,
    ) -> Result<Self> {
        if !(sup_bound.is_finite() && sup_bound > 0.0) {
            return Err(Error::InvalidDensity(format!(
                "sup_bound must be finite and positive, got {sup_bound}"
            )));
        }
        Ok(Self {
            func: Arc::new(func),
            sup_bound,
        })
    }

    pub fn constant(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidDensity(format!(
                "constant density must be positive, got {value}"
            )));
        }
        Self::from_fn(move |_, _| value, value)
    }

    /// Piecewise-constant table on a regular grid anchored at `origin`;
    /// zero outside the table.
    pub fn table(origin: Point2, cell_w: f64, cell_h: f64, values: Vec<Vec<f64>>) -> Result<Self> {
        if !(cell_w > 0.0 && cell_h > 0.0 && cell_w.is_finite() && cell_h.is_finite()) {
            return Err(Error::InvalidDensity(
                "table cell sizes must be positive".into(),
            ));
        }
        let cols = values.first().map_or(0, Vec::len);
        if cols == 0 || values.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidDensity(
                "table rows must be non-empty and of equal length".into(),
            ));
        }
        let mut sup: f64 = 0.0;
        for v in values.iter().flatten() {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::InvalidDensity(
                    "table values must be non-negative".into(),
                ));
            }
            sup = sup.max(*v);
        }
        if sup <= 0.0 {
            return Err(Error::InvalidDensity("table has no positive values".into()));
        }
        let rows = values.len();
        Ok(Self {
            func: Arc::new(move |x, y| {
                let i = ((x - origin.x) / cell_w).floor();
                let j = ((y - origin.y) / cell_h).floor();
                if i < 0.0 || j < 0.0 {
                    return 0.0;
                }
                let (i, j) = (i as usize, j as usize);
                if j >= rows || i >= cols {
                    return 0.0;
                }
                values[j][i]
            }),
            sup_bound: sup,
        })
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.func)(x, y)
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }
}

impl fmt::Debug for GeneralDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralDensity")
            .field("sup_bound", &self.sup_bound)
            .finish_non_exhaustive()
    }
}
