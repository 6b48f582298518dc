use std::ops::{Deref, DerefMut};

use crate::scalar::{norm, Scalar};

/// Point in state space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T>(pub Vec<T>);

/// Input applied to the system.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlVector<T>(pub Vec<T>);

macro_rules! vector_newtype {
    ($name:ident) => {
        impl<T: Scalar> $name<T> {
            pub fn zeros(len: usize) -> Self {
                Self(vec![T::zero(); len])
            }

            pub fn norm(&self) -> T {
                norm(&self.0)
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().all(|v| v.is_finite())
            }

            pub fn into_inner(self) -> Vec<T> {
                self.0
            }
        }

        impl<T> Deref for $name<T> {
            type Target = [T];

            fn deref(&self) -> &[T] {
                &self.0
            }
        }

        impl<T> DerefMut for $name<T> {
            fn deref_mut(&mut self) -> &mut [T] {
                &mut self.0
            }
        }

        impl<T> From<Vec<T>> for $name<T> {
            fn from(v: Vec<T>) -> Self {
                Self(v)
            }
        }
    };
}

vector_newtype!(StateVector);
vector_newtype!(ControlVector);

impl<T: Scalar> ControlVector<T> {
    pub fn scaled(&self, factor: T) -> Self {
        Self(self.0.iter().map(|&v| v * factor).collect())
    }
}

/// Row-major `rows × cols` matrix holding `g(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> InputMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Builds a matrix from row-major data. Panics when `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "input matrix data length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    /// `g · u`
    pub fn mul_vec(&self, u: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * u[c]).sum())
            .collect()
    }

    /// `wᵀ · g` for a row vector `w` of length `rows`.
    pub fn left_mul(&self, w: &[T]) -> Vec<T> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| w[r] * self.get(r, c)).sum())
            .collect()
    }
}
