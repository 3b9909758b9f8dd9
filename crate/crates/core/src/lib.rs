//! Numerical laboratory for 2D compressible viscoelastic flow on a
//! half-plane strip under no-slip, its ideal (zero-viscosity) limit, and the
//! conormal diagnostics used to study the vanishing-viscosity process.

pub mod boundary;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod scalar;
pub mod state;

pub use error::VelsError;
pub use scalar::Scalar;

/// Concrete f64 aliases for the main types.
pub type Grid64 = grid::Grid<f64>;
pub type Field64 = grid::Field<f64>;
pub type State64 = state::StateSnapshot<f64>;
pub type Params64 = state::PhysParams<f64>;

/// Concrete f32 aliases.
pub type Grid32 = grid::Grid<f32>;
pub type Field32 = grid::Field<f32>;
pub type State32 = state::StateSnapshot<f32>;
pub type Params32 = state::PhysParams<f32>;
