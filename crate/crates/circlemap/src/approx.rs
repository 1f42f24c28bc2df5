//! Constructive density operators: piecewise-linear interpolation with
//! pinned endpoints, Bernstein polynomial approximation, the endpoint
//! correction formulas, and class-preserving approximation of circle maps
//! (fixed base value and winding number) through the lift conjugation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::chebyshev::bernstein_monomial_proxy;
use crate::circle::{alpha_inv, cover_p, CircleMap, CirclePoint, GridFunction, PhaseValue};
use crate::error::{Error, Result};
use crate::lift::{lift, LiftedMap};
use crate::metric::phi_inv;
use crate::poly::{Polynomial, DEGREE_CAP};

/// Largest degree at which the monomial expansion of the Bernstein form is
/// synthesized exactly (in rational arithmetic). Beyond this the noise
/// component of the samples makes the exact monomial coefficients too large
/// for f64 storage, so a stable re-expansion is used instead.
const EXACT_EXPANSION_MAX: usize = 32;

/// A continuous function on [0, 1] that is affine between consecutive knots.
#[derive(Debug, Clone, PartialEq)]
pub struct PLFunction {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl PLFunction {
    /// Knots must start at 0, end at 1, and increase strictly.
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.len() != values.len() {
            return Err(Error::Domain(format!(
                "knot/value length mismatch: {} vs {}",
                knots.len(),
                values.len()
            )));
        }
        if knots.len() < 2 {
            return Err(Error::Domain("need at least 2 knots".into()));
        }
        if knots[0] != 0.0 || *knots.last().unwrap() != 1.0 {
            return Err(Error::Domain(format!(
                "knots must span [0, 1], got [{}, {}]",
                knots[0],
                knots.last().unwrap()
            )));
        }
        if knots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("knots must increase strictly".into()));
        }
        if values.iter().any(|v| !v.is_finite()) || knots.iter().any(|k| !k.is_finite()) {
            return Err(Error::Domain("knots and values must be finite".into()));
        }
        Ok(Self { knots, values })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Affine interpolation between the bracketing knots; exact at knots.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!(
                "PL evaluation requires t in [0, 1], got {t}"
            )));
        }
        // Index of the last knot <= t.
        let i = match self.knots.binary_search_by(|k| k.partial_cmp(&t).unwrap()) {
            Ok(i) => return Ok(self.values[i]),
            Err(i) => i - 1,
        };
        let (p0, p1) = (self.knots[i], self.knots[i + 1]);
        let (q0, q1) = (self.values[i], self.values[i + 1]);
        Ok(q0 + (q1 - q0) * (t - p0) / (p1 - p0))
    }
}

/// Interpolates the grid function at k uniform knots (which must land on
/// grid nodes, i.e. k-1 divides N). Endpoint values are copied, so the
/// output lies in PL with the same endpoints as the input.
pub fn pl_interpolate(g: &GridFunction, k: usize) -> Result<PLFunction> {
    if k < 2 {
        return Err(Error::Domain(format!("need at least 2 knots, got {k}")));
    }
    let n = g.n_intervals();
    let segments = k - 1;
    if !n.is_multiple_of(segments) {
        return Err(Error::KnotAlignment {
            segments,
            n_intervals: n,
        });
    }
    let stride = n / segments;
    let knots: Vec<f64> = (0..k).map(|i| g.node(i * stride)).collect();
    let values: Vec<f64> = (0..k).map(|i| g.values()[i * stride]).collect();
    PLFunction::new(knots, values)
}

/// The Bernstein polynomial of the samples g(k/n), expanded to monomial
/// coefficients:  B_n(g)(x) = sum_k g(k/n) C(n,k) x^k (1-x)^(n-k).
///
/// Up to degree 32 the expansion is synthesized exactly in rational
/// arithmetic (so e.g. affine grids reproduce exactly). Above that the
/// exact monomial coefficients are no longer representable meaningfully in
/// f64 and a stable Chebyshev re-expansion within ~1e-12 of the operator is
/// returned instead; see `chebyshev`. Endpoints are reproduced: p(0) equals
/// g(0) exactly and p(1) equals g(1) to rounding.
pub fn bernstein(g: &GridFunction, n: usize) -> Result<Polynomial> {
    if n < 1 {
        return Err(Error::Domain("Bernstein degree must be positive".into()));
    }
    if n > DEGREE_CAP {
        return Err(Error::DegreeCap {
            degree: n,
            cap: DEGREE_CAP,
        });
    }
    let grid_n = g.n_intervals();
    if !grid_n.is_multiple_of(n) {
        return Err(Error::DegreeAlignment {
            degree: n,
            n_intervals: grid_n,
        });
    }
    let stride = grid_n / n;
    let samples: Vec<f64> = (0..=n).map(|k| g.values()[k * stride]).collect();
    let coeffs = if n <= EXACT_EXPANSION_MAX {
        bernstein_monomial_exact(&samples)
    } else {
        bernstein_monomial_proxy(&samples)
    };
    Polynomial::new(coeffs)
}

/// Exact expansion via the forward-difference identity
/// B_n(g)(x) = sum_m C(n,m) (Δ^m g)(0) x^m with step 1/n, computed in
/// rational arithmetic and rounded once per coefficient.
fn bernstein_monomial_exact(samples: &[f64]) -> Vec<f64> {
    let n = samples.len() - 1;
    let mut table: Vec<BigRational> = samples
        .iter()
        .map(|&s| BigRational::from_float(s).expect("samples are finite"))
        .collect();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut binom = BigInt::from(1);
    for m in 0..=n {
        let c = BigRational::from_integer(binom.clone()) * table[0].clone();
        coeffs.push(c.to_f64().expect("coefficient fits in f64"));
        for j in 0..n - m {
            table[j] = table[j + 1].clone() - table[j].clone();
        }
        binom = binom * BigInt::from(n - m) / BigInt::from(m + 1);
    }
    coeffs
}

/// The endpoint correction onto {p(0) = 0, p(1) = f1}:
/// p̃(x) = p(x) - p(0) + x·(f1 - p(1) + p(0)).
///
/// p̃(0) vanishes exactly; p̃(1) hits f1 to rounding (1e-12 scale). The sup
/// distance to p is at most |p(0)| + |f1 - p(1) + p(0)|.
pub fn endpoint_correct_0a(p: &Polynomial, f1: f64) -> Result<Polynomial> {
    if !f1.is_finite() {
        return Err(Error::Domain(format!("target value must be finite, got {f1}")));
    }
    let p0 = p.eval(0.0);
    let p1 = p.eval(1.0);
    let mut out = p.clone();
    out.set_coeff(0, 0.0);
    out.add_to_coeff(1, (f1 - p1) + p0);
    Polynomial::new(out.coeffs().to_vec())
}

/// Endpoints at 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointSpec {
    pub a: f64,
    pub b: f64,
}

impl EndpointSpec {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!(
                "endpoint targets must be finite, got ({a}, {b})"
            )));
        }
        Ok(Self { a, b })
    }
}

/// Conjugates the 0-based correction by the shift f ↦ f - a, pinning
/// q(0) = a exactly and q(1) = b to rounding:
/// q = a + correct_0a(p - a, b - a).
pub fn shift_conjugate_correct(p: &Polynomial, spec: &EndpointSpec) -> Result<Polynomial> {
    let mut shifted = p.clone();
    shifted.add_to_coeff(0, -spec.a);
    let mut corrected = endpoint_correct_0a(&shifted, spec.b - spec.a)?;
    corrected.set_coeff(0, spec.a);
    Polynomial::new(corrected.coeffs().to_vec())
}

/// The class of circle maps with base value q at (1, 0) and winding number
/// m; q̃ is the unique lift of q in [0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct CircleClassSpec {
    q: CirclePoint,
    m: i64,
    q_tilde: PhaseValue,
}

impl CircleClassSpec {
    pub fn new(q: CirclePoint, m: i64) -> Self {
        let q_tilde = alpha_inv(q);
        debug_assert!(
            cover_p(q_tilde.0).unwrap().chord_to(&q) <= 1e-12,
            "lift of the base value must project back onto it"
        );
        Self { q, m, q_tilde }
    }

    pub fn q(&self) -> CirclePoint {
        self.q
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn q_tilde(&self) -> PhaseValue {
        self.q_tilde
    }

    /// The lift endpoints (q̃, q̃ + m) the class prescribes.
    pub fn lift_endpoints(&self) -> (f64, f64) {
        (self.q_tilde.0, self.q_tilde.0 + self.m as f64)
    }
}

/// Approximation backend selector for [`approximate_in_class`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxMethod {
    /// Piecewise-linear interpolation at `knots` uniform knots.
    Pl { knots: usize },
    /// Endpoint-corrected Bernstein polynomial of the given degree.
    Poly { degree: usize },
}

/// Validates that f lies in the class (winding m, base value q) and returns
/// its lift at grid size n.
pub(crate) fn validate_in_class(
    f: &CircleMap,
    spec: &CircleClassSpec,
    n: usize,
) -> Result<LiftedMap> {
    let base = f.eval(0.0)?;
    let base_dist = base.chord_to(&spec.q());
    if base_dist > 1e-9 {
        return Err(Error::ClassMismatch(format!(
            "map value at (1,0) is ({}, {}) but the class requires ({}, {}) (distance {base_dist})",
            base.x(),
            base.y(),
            spec.q().x(),
            spec.q().y()
        )));
    }
    let lifted = lift(f, n)?;
    let winding = lifted.gap_integer()?;
    if winding != spec.m() {
        return Err(Error::ClassMismatch(format!(
            "map has winding number {winding} but the class requires {}",
            spec.m()
        )));
    }
    Ok(lifted)
}

/// Builds the sampled circle map whose lift is the given real function, by
/// evaluating it on the grid and projecting through the covering map.
pub(crate) fn map_from_lift_values(values: Vec<f64>) -> Result<CircleMap> {
    phi_inv(&LiftedMap::new(GridFunction::new(values)?)?)
}

/// Class-preserving approximation: lifts f, approximates the lift by a PL
/// function or an endpoint-corrected Bernstein polynomial with endpoints
/// (q̃, q̃ + m) pinned, and maps the approximant back to a circle map. The
/// output winding is exactly m and the base value matches q.
pub fn approximate_in_class(
    f: &CircleMap,
    spec: &CircleClassSpec,
    method: ApproxMethod,
    n: usize,
) -> Result<CircleMap> {
    let lifted = validate_in_class(f, spec, n)?;
    let (a, b) = spec.lift_endpoints();
    let nf = n as f64;
    let mut values = match method {
        ApproxMethod::Pl { knots } => {
            let pl = pl_interpolate(lifted.grid(), knots)?;
            let mut knot_values = pl.values().to_vec();
            // The sampled endpoints equal (q̃, q̃+m) up to lift noise; pin
            // them so the approximant lies in PL_{q̃, q̃+m} exactly.
            knot_values[0] = a;
            *knot_values.last_mut().unwrap() = b;
            let pinned = PLFunction::new(pl.knots().to_vec(), knot_values)?;
            (0..=n)
                .map(|j| pinned.eval(j as f64 / nf))
                .collect::<Result<Vec<f64>>>()?
        }
        ApproxMethod::Poly { degree } => {
            let p = bernstein(lifted.grid(), degree)?;
            let corrected = shift_conjugate_correct(&p, &EndpointSpec::new(a, b)?)?;
            (0..=n).map(|j| corrected.eval(j as f64 / nf)).collect()
        }
    };
    // The corrected approximant hits the class endpoints to rounding; the
    // grid values are pinned so the endpoint gap is the exact integer m.
    values[0] = a;
    values[n] = b;
    map_from_lift_values(values)
}
