//! Closed-form stabilizing feedback for control-affine systems
//! `ẋ = f(x) + g(x)u` under the input bound `‖u‖ ≤ 1`, built from a
//! control Lyapunov function.
//!
//! The library is generic over the scalar type ([`Scalar`], `f32` or
//! `f64`). The `*64` aliases below fix it to `f64`.
//!
//! ```
//! use unified_clf::clf_core::{lie_data, ExpCoupledPlanar, QuadraticClf, StateVector};
//! use unified_clf::formulas::{ControlLaw, FeedbackLaw};
//!
//! let data = lie_data(&ExpCoupledPlanar, &QuadraticClf::new(2), &StateVector(vec![-1.0, 0.6]))?;
//! let out = ControlLaw::OptBased { m: 10.0 }.evaluate(&data)?;
//! assert!(out.u.norm() <= 1.0);
//! # Ok::<(), unified_clf::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clf_core;
mod error;
pub mod formulas;
pub mod qp_oracle;
pub mod sampling;
mod scalar;
pub mod sim_lab;

pub use error::{Error, Result};
pub use scalar::{lit, membership_tol, to_f64, zero_b_tol, Scalar};

pub type StateVector64 = clf_core::StateVector<f64>;
pub type ControlVector64 = clf_core::ControlVector<f64>;
pub type ClfData64 = clf_core::ClfData<f64>;
pub type KappaInterval64 = clf_core::KappaInterval<f64>;
pub type ControllerOutput64 = formulas::ControllerOutput<f64>;
pub type ControlLaw64 = formulas::ControlLaw<f64>;
pub type ScalingStrategy64 = formulas::ScalingStrategy<f64>;
pub type JointQpSolution64 = qp_oracle::JointQpSolution<f64>;
pub type SimConfig64 = sim_lab::SimConfig<f64>;
pub type Trajectory64 = sim_lab::Trajectory<f64>;
