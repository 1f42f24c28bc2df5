//! Foundational geometry: points on the unit circle, the parametrization
//! `alpha(t) = (cos 2πt, sin 2πt)` and the covering projection `cover_p`,
//! plus the circle-map representations and their evaluation/sampling.
//!
//! Phases are measured in revolutions (angle / 2π) throughout, so one full
//! turn is exactly `1.0` and branch arithmetic is integer arithmetic.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Closed curves must return to their start within this chord distance.
pub const CLOSURE_TOL: f64 = 1e-9;

/// Adjacent samples must stay strictly below this phase gap (in revolutions).
/// A quarter revolution leaves a factor-2 margin over the half revolution
/// that unambiguous unwrapping needs.
pub const CONTINUITY_GAP: f64 = 0.25;

/// A point (x, y) on the unit circle x² + y² = 1.
///
/// Construction normalizes the input vector; only the zero vector (and
/// non-finite coordinates) are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    x: f64,
    y: f64,
}

impl CirclePoint {
    /// Normalizes (x, y) onto the circle. Rejects the zero vector and
    /// non-finite coordinates.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidPoint(format!(
                "coordinates must be finite, got ({x}, {y})"
            )));
        }
        let r = x.hypot(y);
        if r == 0.0 {
            return Err(Error::InvalidPoint(
                "the zero vector has no direction".into(),
            ));
        }
        Ok(Self { x: x / r, y: y / r })
    }

    /// Internal constructor for coordinates already on the circle
    /// (e.g. fresh cos/sin pairs).
    pub(crate) fn from_trig(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// The phase of this point in [0, 1) revolutions; same as [`alpha_inv`].
    pub fn phase(&self) -> PhaseValue {
        alpha_inv(*self)
    }

    /// Euclidean (chord) distance to another point.
    pub fn chord_to(&self, other: &CirclePoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// An angle measured in revolutions (angle / 2π). When used as a normalized
/// base phase it lies in [0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseValue(pub f64);

/// The parametrization α(t) = (cos 2πt, sin 2πt) of the circle over [0, 1].
///
/// `alpha(0)` and `alpha(1)` are both exactly (1, 0).
pub fn alpha(t: f64) -> Result<CirclePoint> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!(
            "alpha requires t in [0, 1], got {t}"
        )));
    }
    cover_p(t)
}

/// The covering projection p(t) = (cos 2πt, sin 2πt) from ℝ onto the circle,
/// periodic with period 1.
pub fn cover_p(t: f64) -> Result<CirclePoint> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("cover_p requires finite t, got {t}")));
    }
    let mut r = t.rem_euclid(1.0);
    // rem_euclid rounds up to 1.0 for tiny negative inputs.
    if r >= 1.0 {
        r -= 1.0;
    }
    let angle = TAU * r;
    Ok(CirclePoint::from_trig(angle.cos(), angle.sin()))
}

/// The inverse parametrization: the unique t in [0, 1) with alpha(t) = x.
/// The branch point (1, 0) maps to 0.
pub fn alpha_inv(p: CirclePoint) -> PhaseValue {
    let mut t = p.y.atan2(p.x) / TAU;
    if t < 0.0 {
        t += 1.0;
    }
    // Tiny negative angles can round up to a full revolution.
    if t >= 1.0 {
        t = 0.0;
    }
    PhaseValue(t)
}

/// Circular distance between two phases, in revolutions (range [0, 1/2]).
pub(crate) fn phase_gap(a: f64, b: f64) -> f64 {
    let d = b - a;
    (d - d.round()).abs()
}

/// A phase function ℓ: [0, 1] → ℝ given by a polynomial in t plus a finite
/// sine/cosine series; defines the circle map t ↦ p(ℓ(t)). The drift
/// ℓ(1) − ℓ(0) must be an integer (it is the winding number).
#[derive(Debug, Clone, PartialEq)]
pub struct LiftExpr {
    poly: Vec<f64>,
    sin: Vec<f64>,
    cos: Vec<f64>,
}

impl LiftExpr {
    /// `poly` holds monomial coefficients of the polynomial part (ascending),
    /// `sin[k-1]` / `cos[k-1]` the amplitudes of sin(2πkt) / cos(2πkt).
    pub fn new(poly: Vec<f64>, sin: Vec<f64>, cos: Vec<f64>) -> Result<Self> {
        for (name, coeffs) in [("poly", &poly), ("sin", &sin), ("cos", &cos)] {
            if coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::Domain(format!(
                    "lift_expr {name} coefficients must be finite"
                )));
            }
        }
        let expr = Self { poly, sin, cos };
        let drift = expr.drift();
        let residual = (drift - drift.round()).abs();
        if residual > 1e-9 {
            return Err(Error::NonIntegerGap {
                gap: drift,
                residual,
                tol: 1e-9,
            });
        }
        Ok(expr)
    }

    /// Evaluates the phase function ℓ at t.
    pub fn eval_lift(&self, t: f64) -> f64 {
        let mut value = 0.0;
        for &c in self.poly.iter().rev() {
            value = value * t + c;
        }
        for (k, &a) in self.sin.iter().enumerate() {
            value += a * (TAU * (k + 1) as f64 * t).sin();
        }
        for (k, &b) in self.cos.iter().enumerate() {
            value += b * (TAU * (k + 1) as f64 * t).cos();
        }
        value
    }

    /// ℓ(1) − ℓ(0); the sine/cosine series drops out, so this is the sum of
    /// the non-constant polynomial coefficients up to rounding.
    pub fn drift(&self) -> f64 {
        self.eval_lift(1.0) - self.eval_lift(0.0)
    }

    /// Upper bound on |ℓ′| over [0, 1]; useful for choosing grid sizes.
    pub fn slope_bound(&self) -> f64 {
        let poly: f64 = self
            .poly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| i as f64 * c.abs())
            .sum();
        let sin_part: f64 = self
            .sin
            .iter()
            .enumerate()
            .map(|(k, a)| TAU * (k + 1) as f64 * a.abs())
            .sum();
        let cos_part: f64 = self
            .cos
            .iter()
            .enumerate()
            .map(|(k, b)| TAU * (k + 1) as f64 * b.abs())
            .sum();
        poly + sin_part + cos_part
    }
}

/// A closed chain of circle points at t_j = j/N with adjacent phase gaps
/// below a quarter revolution (the continuity witness).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGrid {
    points: Vec<CirclePoint>,
    phases: Vec<f64>,
}

impl SampledGrid {
    pub fn new(points: Vec<CirclePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 samples, got {}",
                points.len()
            )));
        }
        let first = points[0];
        let last = points[points.len() - 1];
        let closure = first.chord_to(&last);
        if closure > CLOSURE_TOL {
            return Err(Error::InvalidGrid(format!(
                "curve is not closed: |grid[0] - grid[N]| = {closure} exceeds {CLOSURE_TOL}"
            )));
        }
        let phases: Vec<f64> = points.iter().map(|p| alpha_inv(*p).0).collect();
        for (j, w) in phases.windows(2).enumerate() {
            let gap = phase_gap(w[0], w[1]);
            if gap >= CONTINUITY_GAP {
                return Err(Error::Continuity { index: j + 1, gap });
            }
        }
        Ok(Self { points, phases })
    }

    pub fn n_intervals(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    /// Evaluates at t in [0, 1]: exact at grid nodes, shorter-arc
    /// phase-linear interpolation in between (well defined because gaps are
    /// below a quarter revolution).
    fn eval(&self, t: f64) -> Result<CirclePoint> {
        let n = self.n_intervals() as f64;
        let scaled = t * n;
        let nearest = scaled.round();
        if nearest / n == t {
            return Ok(self.points[nearest as usize]);
        }
        let j = (scaled.floor() as usize).min(self.n_intervals() - 1);
        let s = scaled - j as f64;
        let p0 = self.phases[j];
        let d = self.phases[j + 1] - p0;
        let step = d - d.round();
        cover_p(p0 + s * step)
    }
}

/// A continuous map of the circle to itself.
///
/// Analytic kinds (`Power`, `Rotation`, `LiftExpr`) evaluate exactly;
/// `Sampled` interpolates a dense closed chain of points.
#[derive(Debug, Clone, PartialEq)]
pub enum CircleMap {
    /// z ↦ zⁿ, i.e. t ↦ p(n t); winding number n.
    Power(i64),
    /// Rotation by `theta` radians; winding number 1.
    Rotation(f64),
    /// t ↦ p(ℓ(t)) for a phase function ℓ; winding number ℓ(1) − ℓ(0).
    LiftExpr(LiftExpr),
    /// Dense closed sample chain at t_j = j/N.
    Sampled(SampledGrid),
}

impl CircleMap {
    pub fn power(n: i64) -> Self {
        CircleMap::Power(n)
    }

    /// Rotation by `theta` radians.
    pub fn rotation(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::Domain(format!(
                "rotation angle must be finite, got {theta}"
            )));
        }
        Ok(CircleMap::Rotation(theta))
    }

    pub fn lift_expr(expr: LiftExpr) -> Self {
        CircleMap::LiftExpr(expr)
    }

    pub fn sampled(grid: SampledGrid) -> Self {
        CircleMap::Sampled(grid)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CircleMap::Power(_) => "power",
            CircleMap::Rotation(_) => "rotation",
            CircleMap::LiftExpr(_) => "lift_expr",
            CircleMap::Sampled(_) => "sampled",
        }
    }

    /// Evaluates f∘α at t in [0, 1].
    pub fn eval(&self, t: f64) -> Result<CirclePoint> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!(
                "map evaluation requires t in [0, 1], got {t}"
            )));
        }
        match self {
            CircleMap::Power(n) => cover_p(*n as f64 * t),
            CircleMap::Rotation(theta) => cover_p(t + theta / TAU),
            CircleMap::LiftExpr(expr) => cover_p(expr.eval_lift(t)),
            CircleMap::Sampled(grid) => grid.eval(t),
        }
    }

    /// Samples the map at t_j = j/N into a `Sampled` map, validating the
    /// closed-curve and continuity-witness invariants.
    pub fn sample(&self, n: usize) -> Result<CircleMap> {
        if n < 8 {
            return Err(Error::Domain(format!(
                "sample size must be at least 8, got {n}"
            )));
        }
        let nf = n as f64;
        let points: Vec<CirclePoint> = (0..=n)
            .map(|j| self.eval(j as f64 / nf))
            .collect::<Result<_>>()?;
        Ok(CircleMap::Sampled(SampledGrid::new(points)?))
    }
}

/// A sampled real-valued function on [0, 1]: values g(j/N) for j = 0..N.
/// The discretization carrier for every I → ℝ function in the crate.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "a grid function needs at least 2 values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("values must be finite".into()));
        }
        Ok(Self { values })
    }

    /// Builds the grid by evaluating `f` at the nodes j/N.
    pub fn from_fn(n_intervals: usize, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        if n_intervals == 0 {
            return Err(Error::InvalidGrid("need at least one interval".into()));
        }
        let nf = n_intervals as f64;
        Self::new((0..=n_intervals).map(|j| f(j as f64 / nf)).collect())
    }

    pub fn n_intervals(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The node t_j = j/N.
    pub fn node(&self, j: usize) -> f64 {
        j as f64 / self.n_intervals() as f64
    }

    /// Max-norm difference against another grid on the same nodes.
    pub fn sup_diff(&self, other: &GridFunction) -> Result<f64> {
        if self.n_intervals() != other.n_intervals() {
            return Err(Error::GridMismatch {
                n1: self.n_intervals(),
                n2: other.n_intervals(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}
