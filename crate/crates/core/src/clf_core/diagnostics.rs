//! Numerical spot checks for user-supplied systems and Lyapunov candidates.
//!
//! Positive definiteness and radial unboundedness cannot be certified from
//! evaluators; these probes only sample.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Scalar};

use super::lie::lie_data;
use super::lyapunov::Clf;
use super::system::ControlAffineSystem;
use super::vectors::StateVector;

/// Checks that the drift vanishes at the origin (within `1e-12`) and that
/// evaluator outputs have the declared shapes.
pub fn validate_system<T, S>(system: &S) -> Result<()>
where
    T: Scalar,
    S: ControlAffineSystem<T> + ?Sized,
{
    let n = system.state_dim();
    let origin = vec![T::zero(); n];
    let f0 = system.drift(&origin);
    if f0.len() != n {
        return Err(Error::Dimension {
            context: "drift",
            expected: n,
            actual: f0.len(),
        });
    }
    let worst = f0.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    if worst > lit(1e-12) {
        return Err(Error::domain(format!(
            "drift does not vanish at the origin (|f(0)| = {:e})",
            to_f64(worst)
        )));
    }
    let g = system.input_map(&origin);
    if g.rows() != n || g.cols() != system.input_dim() {
        return Err(Error::Dimension {
            context: "input map",
            expected: n * system.input_dim(),
            actual: g.rows() * g.cols(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClfDefect {
    /// `V(0) ≠ 0` or `∇V(0) ≠ 0`.
    NonzeroAtOrigin { value: f64, gradient_norm: f64 },
    /// `V(x) ≤ 0` at a nonzero sample.
    NotPositive { x: Vec<f64>, value: f64 },
    /// Analytic gradient disagrees with central differences.
    GradientMismatch { x: Vec<f64>, rel_error: f64 },
    /// `b(x) = 0` but `a(x) ≥ 0`: no input can decrease `V` here.
    Uncontrollable { x: Vec<f64>, a: f64 },
    /// `V` failed to grow along a ray.
    NotGrowingAlongRay { direction: Vec<f64>, radius: f64 },
}

/// Relative discrepancy between `clf.gradient(x)` and a central-difference
/// estimate of `∇V(x)`.
pub fn gradient_fd_error<T, V>(clf: &V, x: &[T]) -> T
where
    T: Scalar,
    V: Clf<T> + ?Sized,
{
    let grad = clf.gradient(x);
    let mut probe = x.to_vec();
    let mut diff_sq = T::zero();
    let mut ref_sq = T::zero();
    for i in 0..x.len() {
        let h = T::epsilon().cbrt() * x[i].abs().max(T::one());
        probe[i] = x[i] + h;
        let up = clf.value(&probe);
        probe[i] = x[i] - h;
        let down = clf.value(&probe);
        probe[i] = x[i];
        let fd = (up - down) / (h + h);
        diff_sq += (fd - grad[i]).powi(2);
        ref_sq += grad[i].powi(2);
    }
    diff_sq.sqrt() / ref_sq.sqrt().max(T::one())
}

/// Runs every per-sample check and collects the defects found.
///
/// A sample with `‖b‖ ≤ 1e-12` and `a ≥ 0` is reported as
/// [`ClfDefect::Uncontrollable`].
pub fn validate_clf<T, S, V>(
    system: &S,
    clf: &V,
    samples: &[StateVector<T>],
) -> Result<Vec<ClfDefect>>
where
    T: Scalar,
    S: ControlAffineSystem<T> + ?Sized,
    V: Clf<T> + ?Sized,
{
    let mut defects = Vec::new();
    let n = clf.dim();
    let origin = vec![T::zero(); n];
    let v0 = clf.value(&origin);
    let g0 = clf.gradient(&origin);
    let g0_norm = crate::scalar::norm(&g0);
    if v0.abs() > lit(1e-12) || g0_norm > lit(1e-12) {
        defects.push(ClfDefect::NonzeroAtOrigin {
            value: to_f64(v0),
            gradient_norm: to_f64(g0_norm),
        });
    }

    let fd_tol: T = lit(1e-5);
    for x in samples {
        let xf: Vec<f64> = x.iter().map(|&v| to_f64(v)).collect();
        if x.norm() > T::zero() {
            let v = clf.value(x);
            if v <= T::zero() {
                defects.push(ClfDefect::NotPositive {
                    x: xf.clone(),
                    value: to_f64(v),
                });
            }
        }
        let rel = gradient_fd_error(clf, x);
        if rel > fd_tol {
            defects.push(ClfDefect::GradientMismatch {
                x: xf.clone(),
                rel_error: to_f64(rel),
            });
        }
        if x.norm() > T::zero() {
            let data = lie_data(system, clf, x)?;
            if data.b_is_zero() && data.a >= T::zero() {
                defects.push(ClfDefect::Uncontrollable {
                    x: xf,
                    a: to_f64(data.a),
                });
            }
        }
    }
    Ok(defects)
}

/// Checks that `V(r·d)` strictly increases over the given radii for each
/// direction `d`.
pub fn radial_growth_defects<T, V>(clf: &V, directions: &[Vec<T>], radii: &[T]) -> Vec<ClfDefect>
where
    T: Scalar,
    V: Clf<T> + ?Sized,
{
    let mut defects = Vec::new();
    for d in directions {
        let mut prev = T::neg_infinity();
        for &r in radii {
            let x: Vec<T> = d.iter().map(|&c| c * r).collect();
            let v = clf.value(&x);
            if v <= prev {
                defects.push(ClfDefect::NotGrowingAlongRay {
                    direction: d.iter().map(|&c| to_f64(c)).collect(),
                    radius: to_f64(r),
                });
                break;
            }
            prev = v;
        }
    }
    defects
}
