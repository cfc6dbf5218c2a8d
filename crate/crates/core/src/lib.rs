//! Function approximation with a two-qubit parameterized circuit.
//!
//! The circuit prepares `|ψ⟩ = (R(x - θ₂) ⊗ R(x - θ₁)) (H ⊗ H) |00⟩` and its
//! output is the expectation of a diagonal observable `G = diag(g₀..g₃)`.
//! Near `x = 0` that output is a cubic in `x` whose coefficients depend on
//! `(θ₁, θ₂, G)`; training tunes them against a least-squares index with a
//! chemotaxis random walk.

pub mod analytic;
pub mod chemotaxis;
pub mod circuit;
mod error;
pub mod objective;
pub mod params_file;
pub mod plot;
pub mod record;
pub mod reproduce;
pub mod verify;

pub use analytic::{
    closed_form_expectation, cubic_coefficients, cubic_remainder_check, trig_form, CubicPoly,
    TrigForm,
};
pub use chemotaxis::{
    optimize, optimize_restarts, random_init, FitResult, Init, MultiStartResult, OptimizerConfig,
};
pub use circuit::{
    expectation, fhat, prepare_state, rotation_matrix, CircuitParams, DiagonalObservable,
    StateVector,
};
pub use error::{Error, Result};
pub use objective::{
    make_grid, max_pointwise_error, performance_index, SampleGrid, TargetFunction,
};
