//! Shared generators for the integration suites: deterministic random
//! circle maps with known winding numbers and base values.

use circlemap::{CircleClassSpec, CircleMap, LiftExpr};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A smooth phase function c0 + m·t plus a few gentle harmonics; slope stays
/// far below the quarter-revolution witness at N >= 64.
pub fn random_lift_expr(rng: &mut impl Rng) -> LiftExpr {
    let m = rng.gen_range(-3..=3i64);
    let c0: f64 = rng.gen_range(0.0..0.9);
    let sin: Vec<f64> = (1..=3)
        .map(|j| rng.gen_range(-0.12..0.12) / j as f64)
        .collect();
    let cos: Vec<f64> = (1..=3)
        .map(|j| rng.gen_range(-0.12..0.12) / j as f64)
        .collect();
    LiftExpr::new(vec![c0, m as f64], sin, cos).expect("integer drift by construction")
}

pub fn random_map(rng: &mut impl Rng) -> CircleMap {
    CircleMap::lift_expr(random_lift_expr(rng))
}

/// A random map together with the class spec it belongs to.
pub fn random_class_map(rng: &mut impl Rng) -> (CircleMap, CircleClassSpec) {
    let expr = random_lift_expr(rng);
    let m = expr.drift().round() as i64;
    let f = CircleMap::lift_expr(expr);
    let q = f.eval(0.0).expect("t = 0 is in the domain");
    (f, CircleClassSpec::new(q, m))
}
