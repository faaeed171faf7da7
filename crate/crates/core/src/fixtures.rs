//! Ready-made bodies and conic functions used across tests, benches, and docs.

use crate::conic::ConicFunction;
use crate::geometry::{CompactBody, Point2};
use crate::measure::{BodyMeasure, Density1, MeasureKind, DEFAULT_RESOLUTION};

pub fn unit_square() -> CompactBody {
    CompactBody::rectangle(0.0, 0.0, 1.0, 1.0).unwrap()
}

/// Right triangle with vertices (0,0), (1,0), (0,1).
pub fn right_triangle() -> CompactBody {
    CompactBody::simple_polygon(vec![
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(0.0, 1.0),
    ])
    .unwrap()
}

/// Unit disk centered at the origin.
pub fn unit_disk() -> CompactBody {
    CompactBody::disk(Point2::new(0.0, 0.0), 1.0).unwrap()
}

/// Two unit squares `[0,1]^2` and `[2,3] x [0,1]`: disconnected, with a flat
/// bisection interval `[1, 2]` on the x axis.
pub fn two_squares() -> CompactBody {
    CompactBody::grid_mask(
        Point2::new(0.0, 0.0),
        1.0,
        vec![vec![true, false, true]],
        false,
    )
    .unwrap()
}

pub fn square_uniform() -> ConicFunction {
    ConicFunction::new(BodyMeasure::uniform(unit_square()).unwrap())
}

pub fn triangle_uniform() -> ConicFunction {
    ConicFunction::new(BodyMeasure::uniform(right_triangle()).unwrap())
}

pub fn disk_uniform() -> ConicFunction {
    ConicFunction::new(BodyMeasure::uniform(unit_disk()).unwrap())
}

pub fn two_squares_uniform() -> ConicFunction {
    ConicFunction::new(BodyMeasure::uniform(two_squares()).unwrap())
}

fn lebesgue_on(lo: f64, hi: f64) -> Density1 {
    Density1::Const { lo, hi, value: 1.0 }
}

/// Unit square with the product Lebesgue measure (f1 = f2 = 1 on [0, 1]).
pub fn square_product() -> ConicFunction {
    let kind = MeasureKind::ProductDensity {
        f1: lebesgue_on(0.0, 1.0),
        f2: lebesgue_on(0.0, 1.0),
    };
    ConicFunction::new(BodyMeasure::new(unit_square(), kind, DEFAULT_RESOLUTION).unwrap())
}

/// Right triangle with the product Lebesgue measure.
pub fn triangle_product() -> ConicFunction {
    let kind = MeasureKind::ProductDensity {
        f1: lebesgue_on(0.0, 1.0),
        f2: lebesgue_on(0.0, 1.0),
    };
    ConicFunction::new(BodyMeasure::new(right_triangle(), kind, DEFAULT_RESOLUTION).unwrap())
}

/// Unit disk with the product Lebesgue measure.
pub fn disk_product() -> ConicFunction {
    let kind = MeasureKind::ProductDensity {
        f1: lebesgue_on(-1.0, 1.0),
        f2: lebesgue_on(-1.0, 1.0),
    };
    ConicFunction::new(BodyMeasure::new(unit_disk(), kind, DEFAULT_RESOLUTION).unwrap())
}

/// Two grid-mask bodies with swapped diagonal cells. They differ as sets but
/// share every row and column slice length, hence have identical X-rays and
/// identical conic functions under the product Lebesgue measure.
pub fn switch_pair() -> (ConicFunction, ConicFunction) {
    let kind = || MeasureKind::ProductDensity {
        f1: lebesgue_on(0.0, 2.0),
        f2: lebesgue_on(0.0, 2.0),
    };
    let a = CompactBody::grid_mask(
        Point2::new(0.0, 0.0),
        1.0,
        vec![vec![true, false], vec![false, true]],
        false,
    )
    .unwrap();
    let b = CompactBody::grid_mask(
        Point2::new(0.0, 0.0),
        1.0,
        vec![vec![false, true], vec![true, false]],
        false,
    )
    .unwrap();
    (
        ConicFunction::new(BodyMeasure::new(a, kind(), DEFAULT_RESOLUTION).unwrap()),
        ConicFunction::new(BodyMeasure::new(b, kind(), DEFAULT_RESOLUTION).unwrap()),
    )
}
