use crate::scalar::{lit, norm_sq, Scalar};

/// Lyapunov candidate `V` with an analytic gradient.
pub trait Clf<T: Scalar>: Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[T]) -> T;

    /// `∂V/∂x` as a row vector of length `dim()`.
    fn gradient(&self, x: &[T]) -> Vec<T>;
}

impl<T: Scalar, V: Clf<T> + ?Sized> Clf<T> for Box<V> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, x: &[T]) -> T {
        (**self).value(x)
    }
    fn gradient(&self, x: &[T]) -> Vec<T> {
        (**self).gradient(x)
    }
}

/// `V(x) = ½‖x‖²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticClf {
    pub dim: usize,
}

impl QuadraticClf {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

impl<T: Scalar> Clf<T> for QuadraticClf {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[T]) -> T {
        lit::<T>(0.5) * norm_sq(x)
    }

    fn gradient(&self, x: &[T]) -> Vec<T> {
        x.to_vec()
    }
}
