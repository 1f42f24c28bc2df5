//! Internal numerics for high-degree Bernstein synthesis.
//!
//! A degree-n Bernstein form over machine samples has monomial coefficients
//! that grow like C(n,k)·2^k times the sample noise, so expanding it
//! directly is hopeless in f64 beyond degree ~40: the coefficients of the
//! noise component reach astronomical size and must cancel at evaluation
//! time, which fixed-precision storage cannot do. This module provides the
//! stable route: an O(n) backward-stable evaluator for the Bernstein form,
//! plus a Chebyshev re-expansion that produces an equivalent low-degree
//! monomial polynomial within ~1e-12 of it.

use std::f64::consts::PI;

/// Coefficient growth of shifted Chebyshev polynomials on [0, 1]:
/// max monomial coefficient of T_k(2x-1) is of order (3 + 2*sqrt(2))^k.
const GROWTH: f64 = 5.83;

/// Terms beyond this order are dropped unconditionally: at k ~ 22 the
/// conversion noise of a term (eps times its GROWTH^k coefficient blowup)
/// reaches the size of the term itself, so keeping it cannot improve the
/// converted polynomial no matter how large the term is.
const MAX_TERMS: usize = 23;

/// Additional magnitude guard for strongly oscillatory data: cut once
/// |b_k|·GROWTH^k exceeds this multiple of the data scale, keeping the
/// converted coefficients evaluable.
const COEFF_SAFETY: f64 = 1e6;

/// Target fit residual (times the data scale).
const FIT_TOL: f64 = 1e-12;

/// Drop trailing Chebyshev terms below this multiple of the data scale.
const TINY_TAIL: f64 = 1e-15;

/// Evaluates the Bernstein form  sum_k s_k C(n,k) x^k (1-x)^(n-k)  in O(n)
/// per point via the u = x/(1-x) substitution, mirrored for x > 1/2 so the
/// substitution stays bounded. Exact at the endpoints.
pub(crate) struct BernsteinEvaluator {
    /// C(n,k) * s_k
    weighted: Vec<f64>,
}

impl BernsteinEvaluator {
    pub(crate) fn new(samples: &[f64]) -> Self {
        let n = samples.len() - 1;
        // Build the binomial row symmetrically so C(n,0) and C(n,n) are
        // exactly 1 (endpoint exactness) and rounding only accumulates to
        // the middle.
        let mut binom = vec![0.0f64; n + 1];
        let mut c = 1.0f64;
        for k in 0..=n / 2 {
            binom[k] = c;
            binom[n - k] = c;
            c = c * (n - k) as f64 / (k + 1) as f64;
        }
        let weighted = samples
            .iter()
            .zip(&binom)
            .map(|(&s, &b)| b * s)
            .collect();
        Self { weighted }
    }

    pub(crate) fn degree(&self) -> usize {
        self.weighted.len() - 1
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        let n = self.degree();
        if x <= 0.5 {
            let u = x / (1.0 - x);
            let mut acc = 0.0;
            for &w in self.weighted.iter().rev() {
                acc = acc * u + w;
            }
            acc * (1.0 - x).powi(n as i32)
        } else {
            let u = (1.0 - x) / x;
            let mut acc = 0.0;
            for &w in self.weighted.iter() {
                acc = acc * u + w;
            }
            acc * x.powi(n as i32)
        }
    }
}

/// Chebyshev-Lobatto interpolation coefficients of degree d for `ev` on
/// [0, 1]: returns b with  p(x) = sum_k b_k T_k(2x - 1)  interpolating at
/// the d+1 extreme nodes.
fn lobatto_coeffs(ev: &BernsteinEvaluator, d: usize) -> Vec<f64> {
    let df = d as f64;
    let values: Vec<f64> = (0..=d)
        .map(|j| ev.eval(0.5 * (1.0 + (PI * j as f64 / df).cos())))
        .collect();
    let mut coeffs = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut s = 0.5 * (values[0] + values[d] * if k % 2 == 0 { 1.0 } else { -1.0 });
        for (j, &fj) in values.iter().enumerate().take(d).skip(1) {
            s += fj * (PI * (j * k) as f64 / df).cos();
        }
        let ak = 2.0 * s / df;
        coeffs.push(if k == 0 || k == d { ak / 2.0 } else { ak });
    }
    coeffs
}

/// Clenshaw evaluation of  sum_k b_k T_k(2x - 1).
pub(crate) fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let u = 2.0 * x - 1.0;
    let mut y1 = 0.0;
    let mut y2 = 0.0;
    for &b in coeffs.iter().skip(1).rev() {
        let y = 2.0 * u * y1 - y2 + b;
        y2 = y1;
        y1 = y;
    }
    u * y1 - y2 + coeffs[0]
}

/// Truncates a Chebyshev series so its monomial conversion stays stable:
/// hard order cap, magnitude guard against oscillatory blowup, then drop a
/// numerically irrelevant tail.
fn truncate_series(mut coeffs: Vec<f64>, scale: f64) -> Vec<f64> {
    coeffs.truncate(MAX_TERMS);
    let mut growth = 1.0f64;
    let mut cut = coeffs.len();
    for (k, &b) in coeffs.iter().enumerate() {
        if b.abs() * growth > COEFF_SAFETY * scale {
            cut = k;
            break;
        }
        growth *= GROWTH;
    }
    coeffs.truncate(cut.max(1));
    while coeffs.len() > 1 && coeffs.last().unwrap().abs() <= TINY_TAIL * scale {
        coeffs.pop();
    }
    coeffs
}

/// Converts  sum_k b_k T_k(2x - 1)  to monomial coefficients on [0, 1].
pub(crate) fn chebyshev_to_monomial(coeffs: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; coeffs.len()];
    let mut t_prev = vec![1.0];
    let mut t_cur = vec![-1.0, 2.0];
    out[0] += coeffs[0];
    if coeffs.len() > 1 {
        for (i, &c) in t_cur.iter().enumerate() {
            out[i] += coeffs[1] * c;
        }
    }
    for &b in coeffs.iter().skip(2) {
        // T_{k+1}(2x-1) = 2(2x-1) T_k(2x-1) - T_{k-1}(2x-1)
        let mut t_next = vec![0.0; t_cur.len() + 1];
        for (i, &c) in t_cur.iter().enumerate() {
            t_next[i + 1] += 4.0 * c;
            t_next[i] -= 2.0 * c;
        }
        for (i, &c) in t_prev.iter().enumerate() {
            t_next[i] -= c;
        }
        for (i, &c) in t_next.iter().enumerate() {
            out[i] += b * c;
        }
        t_prev = t_cur;
        t_cur = t_next;
    }
    out
}

/// Monomial coefficients of (a re-expansion of) the Bernstein form over the
/// given samples. The result agrees with the exact operator to roughly
/// 1e-12 times the data scale for smooth data; for rough data the degree is
/// limited by the conditioning guard and the result degrades gracefully to
/// a same-quality Chebyshev approximant. Endpoints are patched so that
/// p(0) equals samples[0] exactly and p(1) matches the last sample to
/// rounding.
pub(crate) fn bernstein_monomial_proxy(samples: &[f64]) -> Vec<f64> {
    let n = samples.len() - 1;
    let ev = BernsteinEvaluator::new(samples);
    let scale = 1.0 + samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));

    let probes: Vec<(f64, f64)> = (0..=512)
        .map(|i| {
            let x = i as f64 / 512.0;
            (x, ev.eval(x))
        })
        .collect();

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut tried = Vec::new();
    for d in [8usize, 16, 24, 32] {
        let d = d.min(n);
        if tried.contains(&d) {
            continue;
        }
        tried.push(d);
        let series = truncate_series(lobatto_coeffs(&ev, d), scale);
        let residual = probes.iter().fold(0.0f64, |m, &(x, e)| {
            m.max((clenshaw(&series, x) - e).abs())
        });
        let better = best.as_ref().is_none_or(|(r, _)| residual < *r);
        if better {
            best = Some((residual, series));
        }
        if residual <= FIT_TOL * scale {
            break;
        }
    }

    let (_, series) = best.expect("ladder is non-empty");
    let mut coeffs = chebyshev_to_monomial(&series);
    // Endpoint patches: the constant shift pins p(0); the linear term then
    // pins p(1) without disturbing p(0).
    coeffs[0] += samples[0] - horner(&coeffs, 0.0);
    if coeffs.len() < 2 {
        coeffs.push(0.0);
    }
    coeffs[1] += samples[n] - horner(&coeffs, 1.0);
    coeffs
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct summation oracle for small degrees.
    fn naive_bernstein(samples: &[f64], x: f64) -> f64 {
        let n = samples.len() - 1;
        let mut binom = 1.0f64;
        let mut total = 0.0;
        for (k, &s) in samples.iter().enumerate() {
            total += s * binom * x.powi(k as i32) * (1.0 - x).powi((n - k) as i32);
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        total
    }

    fn samples_of(n: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..=n).map(|k| f(k as f64 / n as f64)).collect()
    }

    #[test]
    fn stable_eval_matches_naive_at_small_degree() {
        let g = |t: f64| 0.4 + 1.3 * t + 0.2 * (std::f64::consts::TAU * t).sin();
        for n in [1usize, 2, 5, 12, 20] {
            let samples = samples_of(n, g);
            let ev = BernsteinEvaluator::new(&samples);
            for j in 0..=100 {
                let x = j as f64 / 100.0;
                assert!(
                    (ev.eval(x) - naive_bernstein(&samples, x)).abs() <= 1e-12,
                    "n = {n}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn stable_eval_endpoints_exact() {
        let samples = samples_of(256, |t| 0.3 + t + 0.1 * (std::f64::consts::TAU * t).sin());
        let ev = BernsteinEvaluator::new(&samples);
        assert_eq!(ev.eval(0.0), samples[0]);
        assert_eq!(ev.eval(1.0), samples[256]);
    }

    #[test]
    fn stable_eval_stays_in_hull_at_high_degree() {
        // Values of the Bernstein form lie in the convex hull of the samples.
        let samples = samples_of(512, |t| (std::f64::consts::TAU * t).cos());
        let ev = BernsteinEvaluator::new(&samples);
        for j in 0..=200 {
            let x = j as f64 / 200.0;
            let v = ev.eval(x);
            assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&v), "x = {x}, v = {v}");
        }
    }

    #[test]
    fn lobatto_interpolant_hits_nodes() {
        let samples = samples_of(64, |t| t + 0.1 * (std::f64::consts::TAU * t).sin());
        let ev = BernsteinEvaluator::new(&samples);
        let d = 16;
        let series = lobatto_coeffs(&ev, d);
        for j in 0..=d {
            let x = 0.5 * (1.0 + (PI * j as f64 / d as f64).cos());
            assert!(
                (clenshaw(&series, x) - ev.eval(x)).abs() <= 1e-12,
                "node {j}"
            );
        }
    }

    #[test]
    fn conversion_agrees_with_clenshaw() {
        let series = vec![0.3, -1.2, 0.5, 0.01, -0.003];
        let mono = chebyshev_to_monomial(&series);
        for j in 0..=100 {
            let x = j as f64 / 100.0;
            assert!((horner(&mono, x) - clenshaw(&series, x)).abs() <= 1e-13);
        }
    }

    #[test]
    fn proxy_tracks_bernstein_form_for_smooth_data() {
        let samples = samples_of(256, |t| 0.2 + t + 0.1 * (std::f64::consts::TAU * t).sin());
        let ev = BernsteinEvaluator::new(&samples);
        let mono = bernstein_monomial_proxy(&samples);
        for j in 0..=1000 {
            let x = j as f64 / 1000.0;
            assert!(
                (horner(&mono, x) - ev.eval(x)).abs() <= 1e-10,
                "x = {x}"
            );
        }
        assert_eq!(horner(&mono, 0.0), samples[0]);
        assert!((horner(&mono, 1.0) - samples[256]).abs() <= 1e-12);
    }

    #[test]
    fn proxy_coefficients_stay_tame() {
        let samples = samples_of(256, |t| t + 0.1 * (std::f64::consts::TAU * t).sin());
        let mono = bernstein_monomial_proxy(&samples);
        for &c in &mono {
            assert!(c.abs() <= 1e4, "coefficient {c} escaped the safety bound");
        }
    }
}
