//! The sup metric on normalized lifts and the induced metric on circle maps:
//! d0(f, g) = 2π · sup |f̃ − g̃| over the parameter grid, together with the
//! conjugating bijection `phi` / `phi_inv` between circle maps and lifts.

use std::f64::consts::TAU;

use crate::circle::{cover_p, CircleMap, CirclePoint, SampledGrid};
use crate::error::{Error, Result};
use crate::lift::{lift, LiftedMap};

/// A non-negative metric value: radians for `d0`, a dimensionless sup
/// difference for `d1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MetricValue(f64);

impl MetricValue {
    pub(crate) fn new(value: f64) -> Self {
        debug_assert!(value.is_finite() && value >= 0.0);
        Self(value)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Sup-norm distance between two lifts. Grids must be commensurable (one
/// interval count divides the other); the comparison runs over the shared
/// nodes, so no interpolation error hides inside the metric.
pub fn d1(a: &LiftedMap, b: &LiftedMap) -> Result<MetricValue> {
    let (na, nb) = (a.n_intervals(), b.n_intervals());
    let (coarse, fine) = if na <= nb { (a, b) } else { (b, a) };
    let (nc, nf) = (coarse.n_intervals(), fine.n_intervals());
    if nf % nc != 0 {
        return Err(Error::GridMismatch { n1: na, n2: nb });
    }
    let stride = nf / nc;
    let max = coarse
        .values()
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (j, v)| m.max((v - fine.values()[j * stride]).abs()));
    Ok(MetricValue::new(max))
}

/// The metric on circle maps: 2π times the sup distance of the normalized
/// lifts computed at grid size N. Equals 2π·d1(phi(f), phi(g)) by
/// construction.
pub fn d0(f: &CircleMap, g: &CircleMap, n: usize) -> Result<MetricValue> {
    let lf = lift(f, n)?;
    let lg = lift(g, n)?;
    Ok(MetricValue::new(TAU * d1(&lf, &lg)?.value()))
}

/// The conjugating map f ↦ f̃: identical contract to [`lift`], kept as a
/// named operation so the identity d0 = 2π·d1∘(phi × phi) is directly
/// testable.
pub fn phi(f: &CircleMap, n: usize) -> Result<LiftedMap> {
    lift(f, n)
}

/// The inverse conjugation: turns a lift back into a sampled circle map via
/// `grid[j] = p(g(j/N))`. At the branch point the two endpoint values agree
/// because the endpoint gap is an integer.
///
/// The sampled-map continuity witness requires adjacent lift values within a
/// quarter revolution; coarser (but still valid) lifts are rejected when the
/// output grid is constructed.
pub fn phi_inv(g: &LiftedMap) -> Result<CircleMap> {
    let points: Vec<CirclePoint> = g
        .values()
        .iter()
        .map(|&v| cover_p(v))
        .collect::<Result<_>>()?;
    Ok(CircleMap::sampled(SampledGrid::new(points)?))
}
