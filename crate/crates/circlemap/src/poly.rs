//! Dense univariate polynomials in the monomial basis, evaluated by Horner's
//! scheme. Degrees are capped at [`DEGREE_CAP`]; monomial conditioning on
//! [0, 1] is the documented limitation of this representation.

use crate::error::{Error, Result};

/// Hard cap on stored polynomial degree.
pub const DEGREE_CAP: usize = 512;

/// A real polynomial stored as monomial coefficients in ascending degree.
/// Trailing zero coefficients are trimmed on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain(
                "polynomial coefficients must be finite".into(),
            ));
        }
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        if coeffs.len() > DEGREE_CAP + 1 {
            return Err(Error::DegreeCap {
                degree: coeffs.len() - 1,
                cap: DEGREE_CAP,
            });
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree after trailing-zero trim; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut coeffs = vec![0.0; self.coeffs.len().max(other.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Polynomial::new(coeffs).expect("sum of finite coefficients is finite")
    }

    pub fn scale(&self, s: f64) -> Result<Polynomial> {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Adds `delta` to the coefficient of x^power, growing the vector if
    /// needed.
    pub(crate) fn add_to_coeff(&mut self, power: usize, delta: f64) {
        if self.coeffs.len() <= power {
            self.coeffs.resize(power + 1, 0.0);
        }
        self.coeffs[power] += delta;
    }

    pub(crate) fn set_coeff(&mut self, power: usize, value: f64) {
        if self.coeffs.len() <= power {
            self.coeffs.resize(power + 1, 0.0);
        }
        self.coeffs[power] = value;
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    /// Max of |p| over a uniform grid of `n` intervals on [0, 1]; a lower
    /// bound of the true sup norm used in convergence measurements.
    pub fn sup_on_grid(&self, n: usize) -> f64 {
        let nf = n as f64;
        (0..=n).fold(0.0f64, |m, j| m.max(self.eval(j as f64 / nf).abs()))
    }
}
