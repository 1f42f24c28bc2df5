//! Interpolatory constraint corrections for polynomial approximants on
//! I = [0, 1]: the two-point ratio correction, the equal-values split
//! through an explicit Urysohn-type function, a k-point Lagrange correction,
//! and the resulting constrained class-preserving circle-map approximation.

use crate::approx::{bernstein, map_from_lift_values, validate_in_class, CircleClassSpec};
use crate::circle::{CircleMap, GridFunction};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

const DEGENERATE_TOL: f64 = 1e-12;
const MAX_POINTS: usize = 12;
const MIN_POINT_GAP: f64 = 1e-3;

/// Interpolation constraints: distinct points x_1..x_k in [0, 1] with
/// target values v_1..v_k.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSpec {
    points: Vec<f64>,
    targets: Vec<f64>,
}

impl ConstraintSpec {
    pub fn new(points: Vec<f64>, targets: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConstraints(
                "need at least one constraint".into(),
            ));
        }
        if points.len() != targets.len() {
            return Err(Error::InvalidConstraints(format!(
                "{} points but {} targets",
                points.len(),
                targets.len()
            )));
        }
        if points.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::InvalidConstraints(
                "points must lie in [0, 1]".into(),
            ));
        }
        if targets.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConstraints("targets must be finite".into()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if (points[i] - points[j]).abs() <= 1e-9 {
                    return Err(Error::InvalidConstraints(format!(
                        "points {} and {} coincide within 1e-9",
                        points[i], points[j]
                    )));
                }
            }
        }
        Ok(Self { points, targets })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    fn min_gap(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                gap = gap.min((self.points[i] - self.points[j]).abs());
            }
        }
        gap
    }
}

/// The approximation algebra behind the constraint machinery. Backends are
/// unital point-separating subalgebras of C(I, ℝ); the only one instantiated
/// is the polynomials on I, realized by the Bernstein operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[non_exhaustive]
pub enum AlgebraBackend {
    PolynomialsOnI,
}

impl AlgebraBackend {
    /// Approximates the grid function by an element of the algebra of the
    /// given size (polynomial degree).
    pub fn approximate(&self, g: &GridFunction, size: usize) -> Result<Polynomial> {
        match self {
            AlgebraBackend::PolynomialsOnI => bernstein(g, size),
        }
    }
}

/// The ratio correction onto {f(u) = a, f(v) = b} with a ≠ b:
/// f̃ = a + (b - a)(f(x) - f(u)) / (f(v) - f(u)).
///
/// Fails with [`Error::DegenerateDenominator`] when f(v) - f(u) nearly
/// vanishes; the caller should re-approximate at a larger size, which is how
/// a usable approximant is always reachable.
pub fn two_point_correct(p: &Polynomial, u: f64, v: f64, a: f64, b: f64) -> Result<Polynomial> {
    if u == v {
        return Err(Error::Domain("base points u and v must differ".into()));
    }
    if a == b {
        return Err(Error::Domain(
            "two-point targets must differ; use the equal-values correction".into(),
        ));
    }
    let pu = p.eval(u);
    let pv = p.eval(v);
    let spread = pv - pu;
    if spread.abs() < DEGENERATE_TOL {
        return Err(Error::DegenerateDenominator { spread });
    }
    let s = (b - a) / spread;
    let mut out = p.scale(s)?;
    out.set_coeff(0, a + s * (p.coeffs()[0] - pu));
    Polynomial::new(out.coeffs().to_vec())
}

/// An explicit Urysohn-type function on [0, 1]:
/// g(x) = (a/4) · (|x-u| - |x-v|) / (|x-u| + |x-v|),
/// continuous with g(u) = -a/4 and g(v) = a/4 exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UrysohnFunction {
    u: f64,
    v: f64,
    quarter: f64,
}

impl UrysohnFunction {
    pub fn eval(&self, x: f64) -> f64 {
        let du = (x - self.u).abs();
        let dv = (x - self.v).abs();
        self.quarter * (du - dv) / (du + dv)
    }
}

/// Builds the Urysohn-type function for base points u ≠ v and level a ≠ 0.
pub fn urysohn_g(u: f64, v: f64, a: f64) -> Result<UrysohnFunction> {
    if u == v {
        return Err(Error::Domain("base points u and v must differ".into()));
    }
    if a == 0.0 {
        return Err(Error::Domain(
            "the equal-values level must be nonzero".into(),
        ));
    }
    if !u.is_finite() || !v.is_finite() || !a.is_finite() {
        return Err(Error::Domain("u, v, a must be finite".into()));
    }
    Ok(UrysohnFunction {
        u,
        v,
        quarter: a / 4.0,
    })
}

/// Splits a grid function with f(u) = f(v) = a ≠ 0 into the two halves
/// f₁ = ½f + g and f₂ = ½f - g built from the Urysohn function g, with the
/// endpoints f₁ ∈ C^{a/4, 3a/4} and f₂ ∈ C^{3a/4, a/4}. At each node the
/// smaller half is derived by subtraction from the larger, so f₁ + f₂ = f
/// holds exactly in floating point.
pub fn equal_value_split(
    f: &GridFunction,
    u: f64,
    v: f64,
    a: f64,
) -> Result<(GridFunction, GridFunction)> {
    if a == 0.0 {
        return Err(Error::Domain(
            "the equal-values level must be nonzero; use a k-point correction for a = 0".into(),
        ));
    }
    let n = f.n_intervals();
    let grid_index = |name: &str, x: f64| -> Result<usize> {
        let scaled = x * n as f64;
        let j = scaled.round();
        if (scaled - j).abs() > 1e-9 || !(0.0..=n as f64).contains(&j) {
            return Err(Error::Domain(format!(
                "{name} = {x} does not lie on the grid of {n} intervals"
            )));
        }
        Ok(j as usize)
    };
    let ju = grid_index("u", u)?;
    let jv = grid_index("v", v)?;
    for (name, j) in [("u", ju), ("v", jv)] {
        let fv = f.values()[j];
        if (fv - a).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "f({name}) = {fv} differs from the stated level {a}"
            )));
        }
    }
    let g = urysohn_g(u, v, a)?;
    let mut f1 = Vec::with_capacity(n + 1);
    let mut f2 = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let fj = f.values()[j];
        let gj = g.eval(f.node(j));
        let half = 0.5 * fj;
        // The half that g pushes away from zero stays within a factor of
        // two of f, so deriving the other one by subtraction is exact
        // (Sterbenz) as long as |g| <= 3|f|/2 at the node.
        if (gj >= 0.0) == (half >= 0.0) {
            let big = half + gj;
            f1.push(big);
            f2.push(fj - big);
        } else {
            let big = half - gj;
            f2.push(big);
            f1.push(fj - big);
        }
    }
    Ok((GridFunction::new(f1)?, GridFunction::new(f2)?))
}

/// Correction onto equal values {f(u) = f(v) = a} with a ≠ 0: splits f via
/// [`equal_value_split`], corrects backend approximants of the halves onto
/// (a/4, 3a/4) and (3a/4, a/4), and returns their sum. A degenerate
/// two-point denominator is retried with the approximation size doubled, up
/// to three bumps.
pub fn equal_value_correct(
    f: &GridFunction,
    u: f64,
    v: f64,
    a: f64,
    backend: &AlgebraBackend,
    size: usize,
) -> Result<Polynomial> {
    let (f1, f2) = equal_value_split(f, u, v, a)?;

    let quarter = a / 4.0;
    let three_quarter = 3.0 * quarter;
    let mut sz = size;
    let mut last_err = None;
    for _ in 0..=3 {
        let attempt = (|| -> Result<Polynomial> {
            let p1 = backend.approximate(&f1, sz)?;
            let p2 = backend.approximate(&f2, sz)?;
            let c1 = two_point_correct(&p1, u, v, quarter, three_quarter)?;
            let c2 = two_point_correct(&p2, u, v, three_quarter, quarter)?;
            Ok(c1.add(&c2))
        })();
        match attempt {
            Ok(out) => return Ok(out),
            Err(e @ Error::DegenerateDenominator { .. }) => {
                last_err = Some(e);
                sz *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("loop ran at least once"))
}

/// The k-point correction f̃ = f + Σᵢ (vᵢ - f(xᵢ))·ℓᵢ with ℓᵢ the Lagrange
/// basis on the constraint points. All constraints are met to rounding and
/// deg f̃ ≤ max(deg f, k-1).
///
/// Guarded to k ≤ 12 and point gaps ≥ 1e-3; beyond that the Lagrange basis
/// amplifies the correction beyond usefulness.
pub fn k_point_correct(p: &Polynomial, spec: &ConstraintSpec) -> Result<Polynomial> {
    let k = spec.len();
    if k > MAX_POINTS {
        return Err(Error::IllConditioned(format!(
            "{k} constraint points exceed the supported maximum {MAX_POINTS}"
        )));
    }
    if k > 1 {
        let gap = spec.min_gap();
        if gap < MIN_POINT_GAP {
            return Err(Error::IllConditioned(format!(
                "minimum point gap {gap} is below {MIN_POINT_GAP}"
            )));
        }
    }
    let mut out = p.clone();
    for (i, (&xi, &vi)) in spec.points().iter().zip(spec.targets()).enumerate() {
        let weight = vi - p.eval(xi);
        let mut basis = Polynomial::constant(1.0)?;
        let mut denom = 1.0;
        for (j, &xj) in spec.points().iter().enumerate() {
            if j == i {
                continue;
            }
            basis = basis.mul(&Polynomial::new(vec![-xj, 1.0])?)?;
            denom *= xi - xj;
        }
        out = out.add(&basis.scale(weight / denom)?);
    }
    Ok(out)
}

/// Constrained class-preserving approximation: lifts f, approximates the
/// lift with the backend, pins the lift endpoints {0, 1} ↦ {q̃, q̃ + m} by a
/// k-point correction, and maps back to a circle map. Output winding is
/// exactly m and the base value matches q.
pub fn constrained_circle_approx(
    f: &CircleMap,
    spec: &CircleClassSpec,
    backend: &AlgebraBackend,
    size: usize,
    n: usize,
) -> Result<CircleMap> {
    let lifted = validate_in_class(f, spec, n)?;
    let p = backend.approximate(lifted.grid(), size)?;
    let (a, b) = spec.lift_endpoints();
    let constraints = ConstraintSpec::new(vec![0.0, 1.0], vec![a, b])?;
    let corrected = k_point_correct(&p, &constraints)?;
    let nf = n as f64;
    let mut values: Vec<f64> = (0..=n).map(|j| corrected.eval(j as f64 / nf)).collect();
    // The correction hits the endpoints to rounding; pin the grid values so
    // the endpoint gap is the exact integer m.
    values[0] = a;
    values[n] = b;
    map_from_lift_values(values)
}
