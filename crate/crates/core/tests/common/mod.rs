#![allow(dead_code)]

use unified_clf::clf_core::{lie_data, ClfData, ExpCoupledPlanar, QuadraticClf, StateVector};
use unified_clf::formulas::min_cost_weight;
use unified_clf::sampling::BoxSampler;

pub fn planar_data(x: &StateVector<f64>) -> ClfData<f64> {
    lie_data(&ExpCoupledPlanar, &QuadraticClf::new(2), x).unwrap()
}

/// Seeded states in `[−2, 2]²` with `b ≠ 0`, optionally restricted to
/// states where the cost weight `m` meets the per-state lower bound.
pub fn planar_states(seed: u64, count: usize, m: Option<f64>) -> Vec<ClfData<f64>> {
    let mut sampler = BoxSampler::new(seed, 2, 2.0);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = planar_data(&sampler.sample());
        if d.b_is_zero() || d.b_norm() < d.a {
            continue;
        }
        if let Some(m) = m {
            if m < min_cost_weight(&d) {
                continue;
            }
        }
        out.push(d);
    }
    out
}

pub fn diff_norm(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt()
}
