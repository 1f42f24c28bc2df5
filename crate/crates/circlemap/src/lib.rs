//! Computational topology of continuous self-maps of the unit circle.
//!
//! The crate turns the classical covering-space picture into numerics:
//!
//! * [`circle`] — points on S¹, the parametrization α(t) = (cos 2πt, sin 2πt),
//!   the covering projection p: ℝ → S¹, and circle-map representations
//!   (powers, rotations, explicit phase functions, dense samples).
//! * [`lift`] — the unique normalized lift of f∘α with start value in
//!   [0, 1), computed by nearest-branch phase unwrapping, and the winding
//!   number as the lift's integer endpoint gap.
//! * [`metric`] — the metric d0(f, g) = 2π·sup |f̃ − g̃| on circle maps, the
//!   sup metric d1 on lifts, and the conjugating bijection φ / φ⁻¹.
//! * [`approx`] — constructive density: piecewise-linear interpolation,
//!   Bernstein polynomials, endpoint corrections, and class-preserving
//!   approximation at fixed base value and winding number.
//! * [`sw`] — interpolatory constraint corrections (two-point ratio,
//!   equal-values Urysohn split, k-point Lagrange) and constrained
//!   class-preserving approximation.
//!
//! Everything is a pure function over immutable data; all operations are
//! safe for unrestricted concurrent use.
//!
//! Phases and lift values are measured in revolutions (angle / 2π), so
//! branch arithmetic is plain integer arithmetic and the winding number of
//! `power(n)` is literally `n`.

pub mod approx;
mod chebyshev;
pub mod circle;
pub mod error;
pub mod lift;
pub mod metric;
pub mod poly;
pub mod sw;

pub use approx::{
    approximate_in_class, bernstein, endpoint_correct_0a, pl_interpolate,
    shift_conjugate_correct, ApproxMethod, CircleClassSpec, EndpointSpec, PLFunction,
};
pub use circle::{
    alpha, alpha_inv, cover_p, CircleMap, CirclePoint, GridFunction, LiftExpr, PhaseValue,
    SampledGrid,
};
pub use error::{Error, Result};
pub use lift::{
    lift, unwrap_phases, winding_number, LiftedMap, WindingNumber, DEFAULT_GRID_N,
    WINDING_RESIDUAL_TOL,
};
pub use metric::{d0, d1, phi, phi_inv, MetricValue};
pub use poly::{Polynomial, DEGREE_CAP};
pub use sw::{
    constrained_circle_approx, equal_value_correct, equal_value_split, k_point_correct,
    two_point_correct, urysohn_g, AlgebraBackend, ConstraintSpec, UrysohnFunction,
};
