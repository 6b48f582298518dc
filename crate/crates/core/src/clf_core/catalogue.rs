//! Built-in systems and Lyapunov candidates, addressable by id.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::lyapunov::{Clf, QuadraticClf};
use super::system::ControlAffineSystem;
use super::vectors::InputMatrix;

/// Planar system with exponential input coupling:
///
/// ```text
/// ẋ₁ = −x₁³ + e^{x₂} u₁
/// ẋ₂ = −x₂ + u₂
/// ```
///
/// With `V = ½‖x‖²`: `a = −x₁⁴ − x₂²`, `b = [x₁e^{x₂}, x₂]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpCoupledPlanar;

impl<T: Scalar> ControlAffineSystem<T> for ExpCoupledPlanar {
    fn state_dim(&self) -> usize {
        2
    }

    fn input_dim(&self) -> usize {
        2
    }

    fn drift(&self, x: &[T]) -> Vec<T> {
        vec![-x[0].powi(3), -x[1]]
    }

    fn input_map(&self, x: &[T]) -> InputMatrix<T> {
        let mut g = InputMatrix::zeros(2, 2);
        g.set(0, 0, x[1].exp());
        g.set(1, 1, T::one());
        g
    }
}

/// Scalar integrator `ẋ = u`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SingleIntegrator;

impl<T: Scalar> ControlAffineSystem<T> for SingleIntegrator {
    fn state_dim(&self) -> usize {
        1
    }

    fn input_dim(&self) -> usize {
        1
    }

    fn drift(&self, _x: &[T]) -> Vec<T> {
        vec![T::zero()]
    }

    fn input_map(&self, _x: &[T]) -> InputMatrix<T> {
        InputMatrix::from_row_major(1, 1, vec![T::one()])
    }
}

/// Looks up a system by catalogue id.
///
/// | id | system |
/// |----|--------|
/// | `paper_sec5`, `exp_coupled_planar` | [`ExpCoupledPlanar`] |
/// | `scalar_sec4`, `single_integrator` | [`SingleIntegrator`] |
pub fn system_by_id<T: Scalar>(id: &str) -> Result<Box<dyn ControlAffineSystem<T>>> {
    match id {
        "paper_sec5" | "exp_coupled_planar" => Ok(Box::new(ExpCoupledPlanar)),
        "scalar_sec4" | "single_integrator" => Ok(Box::new(SingleIntegrator)),
        other => Err(Error::UnknownEntry(other.to_string())),
    }
}

/// Looks up a Lyapunov candidate by id, sized for an `n`-dimensional state.
///
/// Only `quadratic` (`V = ½‖x‖²`) is built in.
pub fn clf_by_id<T: Scalar>(id: &str, n: usize) -> Result<Box<dyn Clf<T>>> {
    match id {
        "quadratic" => Ok(Box::new(QuadraticClf::new(n))),
        other => Err(Error::UnknownEntry(other.to_string())),
    }
}
