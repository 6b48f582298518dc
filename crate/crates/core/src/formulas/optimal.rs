//! Closed-form solution of the joint problem
//!
//! ```text
//! min_{u, κ}  ½(‖u‖² + m(1 − κ)²)
//! s.t.        a + b·u ≤ −κ σ_Stg,   ‖u‖ ≤ 1
//! ```

use crate::clf_core::{ClfData, ControlVector};
use crate::error::{Error, Result};
use crate::scalar::{lit, norm_sq, to_f64, Scalar};

use super::closed_form::{along_b, compatible};
use super::output::{Branch, ControllerOutput};

/// Smallest admissible cost weight at this state, `sqrt(1 + ‖b‖²)`.
pub fn min_cost_weight<T: Scalar>(data: &ClfData<T>) -> T {
    (T::one() + data.b_norm_sq).sqrt()
}

/// `m‖b‖² + σ² − m·a‖b‖ − m·σ‖b‖`; positive on S₁, non-positive on S₂.
pub fn region_indicator<T: Scalar>(data: &ClfData<T>, m: T) -> T {
    let nb = data.b_norm();
    let sigma = data.sigma_stg;
    m * data.b_norm_sq + sigma * sigma - m * data.a * nb - m * sigma * nb
}

/// Region of the optimization-based law: [`Branch::Interior`] (S₁),
/// [`Branch::Boundary`] (S₂) or [`Branch::ZeroB`] (S₄).
///
/// Indicator values within `1e-12` (relative to the magnitude of its terms)
/// of zero route to S₂, where both branches agree.
pub fn opt_region<T: Scalar>(data: &ClfData<T>, m: T) -> Branch {
    if data.b_is_zero() {
        return Branch::ZeroB;
    }
    let nb = data.b_norm();
    let sigma = data.sigma_stg;
    let scale = m * data.b_norm_sq + sigma * sigma + m * data.a.abs() * nb + m * sigma * nb;
    if region_indicator(data, m) > lit::<T>(1e-12) * scale {
        Branch::Interior
    } else {
        Branch::Boundary
    }
}

/// Objective of the joint problem at `(u, κ)`.
pub fn joint_objective<T: Scalar>(u: &[T], kappa: T, m: T) -> T {
    lit::<T>(0.5) * (norm_sq(u) + m * (T::one() - kappa).powi(2))
}

/// Optimization-based universal formula.
///
/// Requires `m ≥ sqrt(1 + ‖b‖²)` at this state; below it the optimal κ may
/// turn negative. Incompatible states yield an output flagged infeasible.
pub fn opt_universal<T: Scalar>(data: &ClfData<T>, m: T) -> Result<ControllerOutput<T>> {
    let floor = min_cost_weight(data);
    if !(m > T::zero()) || m < floor * (T::one() - T::epsilon() * lit(4.0)) {
        return Err(Error::domain(format!(
            "cost weight m = {} below sqrt(1 + |b|^2) = {} at this state",
            to_f64(m),
            to_f64(floor)
        )));
    }
    let feasible = compatible(data);
    let sigma = data.sigma_stg;
    let out = match opt_region(data, m) {
        Branch::ZeroB => {
            // κ = 1 is the unconstrained minimizer in the b = 0 case
            let u = ControlVector::zeros(data.input_dim());
            ControllerOutput::new(u, Some(T::one()), Branch::ZeroB, feasible)
        }
        Branch::Interior => {
            let offset = data.a + sigma;
            let denom = sigma * sigma + m * data.b_norm_sq;
            let u = along_b(data, m * offset / denom);
            let kappa = T::one() - offset * sigma / denom;
            ControllerOutput::new(u, Some(kappa), Branch::Interior, feasible)
        }
        _ => {
            let nb = data.b_norm();
            let u = along_b(data, T::one() / nb);
            let kappa = (nb - data.a) / sigma;
            ControllerOutput::new(u, Some(kappa), Branch::Boundary, feasible)
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clf_core::{
        kappa_interval, lie_data, ExpCoupledPlanar, QuadraticClf, SingleIntegrator, StateVector,
    };
    use crate::formulas::lin_sontag;
    use approx::assert_relative_eq;

    fn planar(x1: f64, x2: f64) -> ClfData<f64> {
        lie_data(
            &ExpCoupledPlanar,
            &QuadraticClf::new(2),
            &StateVector(vec![x1, x2]),
        )
        .unwrap()
    }

    fn scalar(x: f64) -> ClfData<f64> {
        lie_data(
            &SingleIntegrator,
            &QuadraticClf::new(1),
            &StateVector(vec![x]),
        )
        .unwrap()
    }

    #[test]
    fn initial_state_lies_in_interior_region() {
        let d = planar(-1.0, 0.6);
        let out = opt_universal(&d, 10.0).unwrap();
        assert_eq!(out.branch, Branch::Interior);
        // frozen from an interior-point QP solve and exact arithmetic
        assert_relative_eq!(out.u[0], 0.894_886_117_182_435_7, epsilon = 1e-12);
        assert_relative_eq!(out.u[1], -0.294_674_348_453_233_9, epsilon = 1e-12);
        assert_relative_eq!(out.u.norm(), 0.942_153_986_544_765_4, epsilon = 1e-12);
        assert_relative_eq!(out.kappa.unwrap(), 0.807_313_739_113_164_7, epsilon = 1e-12);
        assert_relative_eq!(
            joint_objective(&out.u, out.kappa.unwrap(), 10.0),
            0.629_467_042_853_844_8,
            epsilon = 1e-12
        );
    }

    #[test]
    fn zero_b_gives_zero_input() {
        let out = opt_universal(&ClfData::from_lie(-1.0, vec![0.0, 0.0]), 10.0).unwrap();
        assert_eq!(out.branch, Branch::ZeroB);
        assert_eq!(out.u.0, vec![0.0, 0.0]);
    }

    #[test]
    fn scalar_integrator_boundary_region() {
        // x² + 10 − 10|x| = −6 at x = 2
        let out = opt_universal(&scalar(2.0), 10.0).unwrap();
        assert_eq!(out.branch, Branch::Boundary);
        assert_relative_eq!(out.u[0], -1.0, epsilon = 1e-15);
        assert_relative_eq!(out.kappa.unwrap(), 0.5, epsilon = 1e-15);
        let out = opt_universal(&scalar(-2.0), 10.0).unwrap();
        assert_relative_eq!(out.u[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn scalar_integrator_interior_kappa() {
        for x in [0.3, -0.7, 1.0] {
            let out = opt_universal(&scalar(x), 10.0).unwrap();
            assert_eq!(out.branch, Branch::Interior);
            assert_relative_eq!(out.kappa.unwrap(), 10.0 / (x * x + 10.0), epsilon = 1e-14);
        }
    }

    #[test]
    fn cost_weight_below_state_floor_rejected() {
        let d = planar(-1.0, 0.6);
        let floor = min_cost_weight(&d);
        assert!(opt_universal(&d, floor).is_ok());
        assert!(matches!(opt_universal(&d, 2.0), Err(Error::Domain(_))));
        assert!(opt_universal(&d, 0.0).is_err());
    }

    #[test]
    fn kappa_inside_interval_and_beats_lin_sontag() {
        for &(x1, x2) in &[(-1.0, 0.6), (0.3, -0.2), (1.5, 0.4), (-0.05, 0.01)] {
            let d = planar(x1, x2);
            let out = opt_universal(&d, 10.0).unwrap();
            let k = kappa_interval(&d);
            assert!(k.contains(out.kappa.unwrap(), 1e-9));
            let ls = lin_sontag(&d);
            assert!(
                joint_objective(&out.u, out.kappa.unwrap(), 10.0)
                    <= joint_objective(&ls.u, ls.kappa.unwrap(), 10.0) + 1e-12
            );
        }
    }

    #[test]
    fn incompatible_state_flagged() {
        let out = opt_universal(&ClfData::from_lie(3.0, vec![1.0]), 10.0).unwrap();
        assert!(!out.feasible);
    }
}
