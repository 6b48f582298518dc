use crate::scalar::Scalar;

use super::vectors::InputMatrix;

/// Control-affine dynamics `ẋ = f(x) + g(x)·u`.
pub trait ControlAffineSystem<T: Scalar>: Send + Sync {
    /// State dimension `n`.
    fn state_dim(&self) -> usize;

    /// Input dimension.
    fn input_dim(&self) -> usize;

    /// Drift `f(x)`, length `n`. Must vanish at the origin.
    fn drift(&self, x: &[T]) -> Vec<T>;

    /// Input map `g(x)`, an `n × input_dim` matrix.
    fn input_map(&self, x: &[T]) -> InputMatrix<T>;

    /// Closed-loop vector field `f(x) + g(x)·u`.
    fn vector_field(&self, x: &[T], u: &[T]) -> Vec<T> {
        let mut dx = self.drift(x);
        let gu = self.input_map(x).mul_vec(u);
        for (d, g) in dx.iter_mut().zip(gu) {
            *d += g;
        }
        dx
    }
}

impl<T: Scalar, S: ControlAffineSystem<T> + ?Sized> ControlAffineSystem<T> for Box<S> {
    fn state_dim(&self) -> usize {
        (**self).state_dim()
    }
    fn input_dim(&self) -> usize {
        (**self).input_dim()
    }
    fn drift(&self, x: &[T]) -> Vec<T> {
        (**self).drift(x)
    }
    fn input_map(&self, x: &[T]) -> InputMatrix<T> {
        (**self).input_map(x)
    }
}
