//! Numerical path lifting: the unique normalized lift of f∘α with start in
//! [0, 1), realized by nearest-branch phase unwrapping, and the winding
//! number read off the lift's endpoint gap.

use crate::circle::{alpha_inv, phase_gap, CircleMap, GridFunction, CONTINUITY_GAP};
use crate::error::{Error, Result};

/// Grid size used by the CLI when the caller does not specify one. Passes
/// the continuity witness for every power map with |n| ≤ 255 and keeps the
/// grid sup error of smooth lifts around Lip/1024.
pub const DEFAULT_GRID_N: usize = 1024;

/// Residual tolerance separating float noise from a genuinely non-integer
/// endpoint gap. Noise stays below ~1e-9 for smooth maps at N ≥ 64, so three
/// orders of magnitude of margin remain.
pub const WINDING_RESIDUAL_TOL: f64 = 1e-6;

const ALIAS_TOL: f64 = 1e-9;
const GAP_INT_TOL: f64 = 1e-9;

/// The normalized lift f̃ of a circle map sampled on j/N:
/// `values[0]` ∈ [0, 1), `values[N] − values[0]` is an integer, and adjacent
/// values differ by less than 1/2 (the branch-consistency witness).
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedMap {
    grid: GridFunction,
}

impl LiftedMap {
    pub fn new(grid: GridFunction) -> Result<Self> {
        let values = grid.values();
        let start = values[0];
        if !(0.0..1.0).contains(&start) {
            return Err(Error::InvalidLift(format!(
                "start value {start} must lie in [0, 1)"
            )));
        }
        let gap = values[values.len() - 1] - start;
        let residual = (gap - gap.round()).abs();
        if residual > GAP_INT_TOL {
            return Err(Error::NonIntegerGap {
                gap,
                residual,
                tol: GAP_INT_TOL,
            });
        }
        for (j, w) in values.windows(2).enumerate() {
            let d = (w[1] - w[0]).abs();
            if d >= 0.5 {
                return Err(Error::InvalidLift(format!(
                    "adjacent values at {j} differ by {d} >= 1/2"
                )));
            }
        }
        Ok(Self { grid })
    }

    pub fn grid(&self) -> &GridFunction {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        self.grid.values()
    }

    pub fn n_intervals(&self) -> usize {
        self.grid.n_intervals()
    }

    /// The normalized start value f̃(0) ∈ [0, 1).
    pub fn start(&self) -> f64 {
        self.values()[0]
    }

    /// The raw endpoint gap f̃(1) − f̃(0).
    pub fn endpoint_gap(&self) -> f64 {
        let v = self.values();
        v[v.len() - 1] - v[0]
    }

    /// The endpoint gap as an exact integer; errors if the residual exceeds
    /// the winding tolerance (corrupt input).
    pub fn gap_integer(&self) -> Result<i64> {
        let gap = self.endpoint_gap();
        let m = gap.round();
        let residual = (gap - m).abs();
        if residual >= WINDING_RESIDUAL_TOL {
            return Err(Error::NonIntegerGap {
                gap,
                residual,
                tol: WINDING_RESIDUAL_TOL,
            });
        }
        Ok(m as i64)
    }
}

/// The winding number of a circle map: the integer f̃(1) − f̃(0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindingNumber(pub i64);

/// Unwraps a sequence of raw phases in [0, 1) into a continuous real
/// sequence: `output[0] = phases[0]` and each successive output is the branch
/// representative nearest its predecessor.
///
/// Errors with [`Error::Aliasing`] when the two nearest branches are
/// equidistant within 1e-9 (the sequence is undersampled). Gaps above half a
/// revolution are indistinguishable from their complement and cannot be
/// detected here; the quarter-revolution continuity witness upstream is what
/// rules them out.
pub fn unwrap_phases(phases: &[f64]) -> Result<Vec<f64>> {
    if phases.len() < 2 {
        return Err(Error::Domain(format!(
            "unwrap needs at least 2 phases, got {}",
            phases.len()
        )));
    }
    if let Some(bad) = phases.iter().find(|p| !(0.0..1.0).contains(*p)) {
        return Err(Error::Domain(format!(
            "raw phases must lie in [0, 1), got {bad}"
        )));
    }
    let mut out = Vec::with_capacity(phases.len());
    out.push(phases[0]);
    for (j, &phase) in phases.iter().enumerate().skip(1) {
        let prev = out[j - 1];
        let diff = phase - prev;
        let wrapped = diff - diff.round();
        if (wrapped.abs() - 0.5).abs() <= ALIAS_TOL {
            return Err(Error::Aliasing {
                index: j,
                tol: ALIAS_TOL,
            });
        }
        // Tie each output to its own raw phase so branch errors cannot
        // accumulate across the walk.
        out.push(phase - diff.round());
    }
    Ok(out)
}

/// Computes the normalized lift of f∘α on the grid j/N: raw phases from
/// `alpha_inv`, unwrapped, then shifted by the single integer that puts the
/// start value into [0, 1).
pub fn lift(f: &CircleMap, n: usize) -> Result<LiftedMap> {
    if n < 8 {
        return Err(Error::Domain(format!(
            "lift grid size must be at least 8, got {n}"
        )));
    }
    let nf = n as f64;
    let mut phases = Vec::with_capacity(n + 1);
    for j in 0..=n {
        phases.push(alpha_inv(f.eval(j as f64 / nf)?).0);
    }
    // Continuity witness: the same quarter-revolution bound sample() checks.
    for (j, w) in phases.windows(2).enumerate() {
        let gap = phase_gap(w[0], w[1]);
        if gap >= CONTINUITY_GAP {
            return Err(Error::Continuity { index: j + 1, gap });
        }
    }
    let mut values = unwrap_phases(&phases)?;
    let shift = values[0].floor();
    if shift != 0.0 {
        for v in &mut values {
            *v -= shift;
        }
    }
    LiftedMap::new(GridFunction::new(values)?)
}

/// The winding number of f, read from the lift's endpoint gap at grid size N.
pub fn winding_number(f: &CircleMap, n: usize) -> Result<WindingNumber> {
    Ok(WindingNumber(lift(f, n)?.gap_integer()?))
}
