//! Benchmark-only crate; see `benches/conic.rs`.
//!
//! Shared setup helpers live here so the bench targets stay small.

use conic2d::fixtures;
use conic2d::ConicFunction;

/// Fixtures benchmarked throughout, with stable labels.
pub fn labeled_fixtures() -> Vec<(&'static str, ConicFunction)> {
    vec![
        ("square_uniform", fixtures::square_uniform()),
        ("triangle_uniform", fixtures::triangle_uniform()),
        ("disk_uniform", fixtures::disk_uniform()),
        ("square_product", fixtures::square_product()),
    ]
}
