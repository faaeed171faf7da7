/// Errors raised by body construction, measure queries, and chain runs.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    /// The measure has no effective support: its computed total mass is not
    /// strictly positive.
    #[error("degenerate measure: total mass {0} is not positive")]
    DegenerateMeasure(f64),

    /// The operation is only defined for product measures.
    #[error("operation requires a product measure")]
    UnsupportedMeasureKind,

    /// Sampling and chain runs require a probability measure (total mass 1
    /// within 1e-6).
    #[error("measure is not a probability measure: total mass {actual}")]
    NotProbabilityMeasure { actual: f64 },

    /// The rejection sampler exhausted its proposal budget, which signals a
    /// wildly loose supremum bound on the density.
    #[error("rejection sampler stalled after {0} consecutive rejected proposals")]
    RejectionStall(u64),

    #[error("start point ({x}, {y}) lies outside the body")]
    StartNotInBody { x: f64, y: f64 },

    #[error("invalid step schedule: {0}")]
    InvalidSchedule(String),

    #[error("iteration count must be at least 1")]
    NoIterations,

    #[error("replication count must be at least 2 to form standard errors")]
    TooFewReplications,

    #[error("checkpoint {checkpoint} outside the valid range 1..={iterations}")]
    InvalidCheckpoint {
        checkpoint: usize,
        iterations: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
