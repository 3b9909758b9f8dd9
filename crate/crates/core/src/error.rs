//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid extent must be positive and finite, got lx={lx}, ly={ly}")]
    NonPositiveExtent { lx: f64, ly: f64 },
    #[error("grid needs at least {min} cells per direction for the stencils, got {nx}x{ny}")]
    TooFewCells { nx: usize, ny: usize, min: usize },
    #[error("field shape {got:?} does not match grid shape {expected:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("weight function requires y >= 0, got y={y}")]
    NegativeY { y: f64 },
    #[error("time-derivative order {order} needs {needed} snapshots, history has {got}")]
    InsufficientHistory {
        order: usize,
        needed: usize,
        got: usize,
    },
    #[error("snapshot times are not uniformly spaced: spacing {got} vs {expected} (rel tol 1e-12)")]
    NonUniformSpacing { expected: f64, got: f64 },
    #[error("snapshot times must be strictly increasing, got {prev} then {next}")]
    NonIncreasingTimes { prev: f64, next: f64 },
}

#[derive(Debug, Error)]
pub enum StateError {
    #[error("density must stay positive: rho={value} at node (j={j}, i={i})")]
    NonPositiveDensity { j: usize, i: usize, value: f64 },
    #[error("deformation regime violated: 1+f4={value} at node (j={j}, i={i})")]
    DegenerateDeformation { j: usize, i: usize, value: f64 },
    #[error("physical parameters invalid: {0}")]
    BadParams(String),
}

#[derive(Debug, Error)]
pub enum InitError {
    #[error("displacement spec invalid: {0}")]
    BadSpec(String),
    #[error("displacement Jacobian degenerate (det={det}) at node (j={j}, i={i})")]
    DegenerateJacobian { j: usize, i: usize, det: f64 },
    #[error("amplitude leaves the admissible regime: {field}={value} at node (j={j}, i={i}) outside (1/2, 3/2)")]
    RegimeViolation {
        field: &'static str,
        j: usize,
        i: usize,
        value: f64,
    },
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("nonfinite value in field {field} at t={t} (stage {stage})")]
    NonFinite {
        field: &'static str,
        t: f64,
        stage: usize,
    },
    #[error("time step {dt} violates the CFL bound {limit} by more than 2x at t={t}")]
    CflViolation { dt: f64, limit: f64, t: f64 },
    #[error("invalid run setup: {0}")]
    BadRun(String),
    #[error("recovery identity degenerate: {field} too close to zero (min |{field}|={min})")]
    Degenerate { field: &'static str, min: f64 },
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("eps list must be nonempty, strictly decreasing and inside (0,1): {0}")]
    BadEpsList(String),
    #[error("rate fit needs at least two positive pairs: {0}")]
    BadFitInput(String),
    #[error("ns comparison requires a nonzero initial tangential shear")]
    NoShear,
    #[error(transparent)]
    Init(#[from] InitError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config key {key}: {rule}")]
    Constraint { key: &'static str, rule: String },
}

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad magic bytes: expected \"VELS\"")]
    BadMagic,
    #[error("unsupported format version {0}")]
    BadVersion(u32),
    #[error("corrupt header: {0}")]
    CorruptHeader(String),
    #[error("truncated body: expected {expected} bytes, found {got}")]
    TruncatedBody { expected: usize, got: usize },
    #[error("trailing garbage: {0} extra bytes after body")]
    TrailingBytes(usize),
}

/// Top-level error for library entry points and the CLI.
#[derive(Debug, Error)]
pub enum VelsError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Init(#[from] InitError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Snapshot(#[from] SnapshotError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl VelsError {
    /// Process exit code: 2 for validation problems, 3 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            VelsError::Grid(_)
            | VelsError::State(StateError::BadParams(_))
            | VelsError::Init(InitError::BadSpec(_))
            | VelsError::Config(_)
            | VelsError::Sweep(SweepError::BadEpsList(_))
            | VelsError::Sweep(SweepError::BadFitInput(_))
            | VelsError::Sweep(SweepError::NoShear) => 2,
            _ => 3,
        }
    }
}
