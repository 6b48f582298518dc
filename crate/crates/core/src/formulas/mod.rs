//! Closed-form stabilizing laws built from [`ClfData`](crate::clf_core::ClfData).
//!
//! All laws share the shape `u = −c(x)·bᵀ` for `b ≠ 0` and `u = 0` for
//! `b = 0`; they differ only in the coefficient `c`.

mod closed_form;
mod inverse;
mod law;
mod optimal;
mod output;
mod scaling;

pub use closed_form::{lin_sontag, pmn, sontag, unified};
pub use inverse::{inverse_optimal_data, InputWeight, InverseOptimalData};
pub use law::{ControlLaw, FeedbackLaw};
pub use optimal::{joint_objective, min_cost_weight, opt_region, opt_universal, region_indicator};
pub use output::{Branch, ControllerOutput};
pub use scaling::{kappa_lin_sontag, kappa_strategy, KappaChoice, ScalingStrategy};
