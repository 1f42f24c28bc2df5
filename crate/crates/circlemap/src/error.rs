use thiserror::Error;

/// Errors surfaced by the library. Each variant names the violated
/// precondition or invariant so callers (and the CLI) can report it verbatim.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A scalar argument fell outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Circle point construction rejected the input (zero vector or non-finite).
    #[error("invalid circle point: {0}")]
    InvalidPoint(String),

    /// Adjacent samples are farther apart than a quarter revolution, so the
    /// grid is too coarse to witness continuity.
    #[error("continuity witness failed at sample {index}: adjacent phase gap {gap} rev (limit 0.25); increase the grid size")]
    Continuity { index: usize, gap: f64 },

    /// Two branch candidates were equidistant while unwrapping; the sequence
    /// is undersampled.
    #[error("aliasing at sample {index}: nearest unwrap branches are equidistant (gap within {tol} of 1/2)")]
    Aliasing { index: usize, tol: f64 },

    /// The lift's endpoint gap is not an integer within tolerance.
    #[error("endpoint gap {gap} is not an integer: residual {residual} exceeds {tol}")]
    NonIntegerGap { gap: f64, residual: f64, tol: f64 },

    /// Two grids cannot be compared because neither refines the other.
    #[error("grids with {n1} and {n2} intervals are not commensurable")]
    GridMismatch { n1: usize, n2: usize },

    /// PL knot count does not align with the sample grid.
    #[error("knot alignment: k-1 = {segments} must divide the grid interval count {n_intervals}")]
    KnotAlignment { segments: usize, n_intervals: usize },

    /// Bernstein degree does not align with the sample grid.
    #[error("degree alignment: degree {degree} must divide the grid interval count {n_intervals}")]
    DegreeAlignment { degree: usize, n_intervals: usize },

    /// Requested polynomial degree exceeds the supported cap.
    #[error("degree {degree} exceeds the polynomial degree cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    /// The input map is not in the stated class C_m^q.
    #[error("class mismatch: {0}")]
    ClassMismatch(String),

    /// The two-point correction denominator f(v) - f(u) vanished.
    #[error("degenerate denominator: |f(v) - f(u)| = {spread} < 1e-12; re-approximate at a larger size")]
    DegenerateDenominator { spread: f64 },

    /// Constraint set too large or too clustered for a stable Lagrange basis.
    #[error("ill-conditioned constraints: {0}")]
    IllConditioned(String),

    /// A lifted map violated one of its invariants.
    #[error("invalid lift: {0}")]
    InvalidLift(String),

    /// A sample grid violated one of its invariants.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// An interpolation constraint set violated one of its invariants.
    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),
}

pub type Result<T> = std::result::Result<T, Error>;
