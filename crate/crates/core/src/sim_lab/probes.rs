use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clf_core::{lie_data, Clf, ControlAffineSystem, StateVector};
use crate::error::Result;
use crate::formulas::FeedbackLaw;
use crate::scalar::{dot, lit, to_f64, Scalar};

use super::integrate::Trajectory;

/// States closer than this to the origin are exempt from the decrease check.
pub const DECREASE_EXEMPT_RADIUS: f64 = 1e-6;
/// Slack allowed on `a + b·u ≤ −κσ` at each sample.
pub const RATE_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `V` failed to decrease from sample `index` to `index + 1`.
    ValueIncrease {
        index: usize,
        t: f64,
        from: f64,
        to: f64,
    },
    /// The recorded input missed the tightened CLF condition at sample `index`.
    RateBound {
        index: usize,
        t: f64,
        rate: f64,
        bound: f64,
    },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DecreaseReport {
    pub violations: Vec<Violation>,
}

impl DecreaseReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn value_increases(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| matches!(v, Violation::ValueIncrease { .. }))
            .count()
    }
}

/// Checks strict decrease of `V` between consecutive samples away from the
/// origin, and `a + b·u ≤ −κσ_Stg` at every sample that carries κ.
pub fn check_clf_decrease<T, S, V>(
    traj: &Trajectory<T>,
    system: &S,
    clf: &V,
) -> Result<DecreaseReport>
where
    T: Scalar,
    S: ControlAffineSystem<T> + ?Sized,
    V: Clf<T> + ?Sized,
{
    let mut report = DecreaseReport::default();
    let exempt = lit::<T>(DECREASE_EXEMPT_RADIUS);
    for (i, pair) in traj.samples.windows(2).enumerate() {
        let (s, next) = (&pair[0], &pair[1]);
        if s.x.norm() > exempt && !(next.v < s.v) {
            report.violations.push(Violation::ValueIncrease {
                index: i,
                t: to_f64(s.t),
                from: to_f64(s.v),
                to: to_f64(next.v),
            });
        }
    }
    for (i, s) in traj.samples.iter().enumerate() {
        let Some(kappa) = s.kappa else { continue };
        let data = lie_data(system, clf, &s.x)?;
        let rate = data.a + dot(&data.b, &s.u);
        let bound = -kappa * data.sigma_stg;
        if rate > bound + lit(RATE_SLACK) {
            report.violations.push(Violation::RateBound {
                index: i,
                t: to_f64(s.t),
                rate: to_f64(rate),
                bound: to_f64(bound),
            });
        }
    }
    Ok(report)
}

/// Uniform direction on the sphere by rejection from the cube.
fn unit_direction<T: Scalar>(rng: &mut impl Rng, dim: usize) -> Vec<T> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.into_iter().map(|c| lit(c / n)).collect();
        }
    }
}

/// Unit directions used by the continuity probe: `±1` in one dimension,
/// evenly spaced angles in two, seeded random directions otherwise.
fn probe_directions<T: Scalar>(dim: usize, count: usize, seed: u64) -> Vec<Vec<T>> {
    match dim {
        1 => [1.0, -1.0]
            .iter()
            .cycle()
            .take(count.max(1))
            .map(|&s| vec![lit(s)])
            .collect(),
        2 => (0..count)
            .map(|k| {
                let th = std::f64::consts::TAU * k as f64 / count as f64;
                vec![lit(th.cos()), lit(th.sin())]
            })
            .collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| unit_direction(&mut rng, dim)).collect()
        }
    }
}

/// Largest input norm on the sphere of each radius.
pub fn origin_continuity_probe<T, S, V, L>(
    law: &L,
    system: &S,
    clf: &V,
    radii: &[T],
    samples_per_radius: usize,
    seed: u64,
) -> Result<Vec<(T, T)>>
where
    T: Scalar,
    S: ControlAffineSystem<T> + ?Sized,
    V: Clf<T> + ?Sized,
    L: FeedbackLaw<T> + ?Sized,
{
    let dirs = probe_directions::<T>(system.state_dim(), samples_per_radius, seed);
    radii
        .iter()
        .map(|&r| {
            let mut worst = T::zero();
            for d in &dirs {
                let x = StateVector(d.iter().map(|&c| c * r).collect());
                let out = law.evaluate(&lie_data(system, clf, &x)?)?;
                worst = worst.max(out.u.norm());
            }
            Ok((r, worst))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum SlopeProbe<T> {
    Slopes { x: T, left: T, right: T },
    Skipped { x: T, reason: String },
}

impl<T: Scalar> SlopeProbe<T> {
    /// `|left − right|`, or `None` for skipped points.
    pub fn mismatch(&self) -> Option<T> {
        match self {
            SlopeProbe::Slopes { left, right, .. } => Some((*left - *right).abs()),
            SlopeProbe::Skipped { .. } => None,
        }
    }
}

/// One-sided finite-difference slopes of a scalar function. Points whose
/// stencil would touch the origin are skipped.
pub fn smoothness_probe<T: Scalar>(
    f: impl Fn(T) -> Result<T>,
    x_points: &[T],
    fd_step: T,
) -> Result<Vec<SlopeProbe<T>>> {
    if !(fd_step > T::zero()) {
        return Err(crate::error::Error::domain(
            "finite-difference step must be positive",
        ));
    }
    x_points
        .iter()
        .map(|&x| {
            if x.abs() <= fd_step {
                return Ok(SlopeProbe::Skipped {
                    x,
                    reason: "stencil reaches the origin".into(),
                });
            }
            let here = f(x)?;
            Ok(SlopeProbe::Slopes {
                x,
                left: (here - f(x - fd_step)?) / fd_step,
                right: (f(x + fd_step)? - here) / fd_step,
            })
        })
        .collect()
}
