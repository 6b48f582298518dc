use crate::clf_core::{kappa_interval, ClfData};
use crate::error::{Error, Result};
use crate::scalar::{lit, membership_tol, to_f64, Scalar};

/// Input weight `R(x) = r·I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputWeight<T> {
    /// `R = r·I` with `r > 0`.
    Scaled(T),
    /// `γ(x) = 0`: the input is never used, `R⁻¹ = 0`.
    Unconstrained,
}

impl<T: Scalar> InputWeight<T> {
    /// Scale of `R⁻¹`.
    pub fn inverse_scale(&self) -> T {
        match *self {
            InputWeight::Scaled(r) => r.recip(),
            InputWeight::Unconstrained => T::zero(),
        }
    }
}

/// Certificate that a unified law solves an HJB equation with running cost
/// `l(x) + uᵀR(x)u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseOptimalData<T> {
    /// `γ(x)`, with `u = −γ(x)·bᵀ`.
    pub gamma_weight: T,
    pub r_scale: InputWeight<T>,
    pub l_value: T,
    /// `l + a − ¼·b·R⁻¹·bᵀ`.
    pub hjb_residual: T,
}

/// Builds `γ(x)`, `R(x) = I/(2γ)` and `l(x) = −a + ¼·b·R⁻¹·bᵀ` for the unified
/// law with scaling term `kappa`.
pub fn inverse_optimal_data<T: Scalar>(
    data: &ClfData<T>,
    kappa: T,
) -> Result<InverseOptimalData<T>> {
    let gamma = if data.b_is_zero() {
        T::zero()
    } else {
        let interval = kappa_interval(data);
        if !interval.contains(kappa, membership_tol()) {
            return Err(Error::domain(format!(
                "kappa {} outside admissible interval [{}, {}]",
                to_f64(kappa),
                to_f64(interval.lo),
                to_f64(interval.hi)
            )));
        }
        ((data.a + kappa * data.sigma_stg) / data.b_norm_sq).max(T::zero())
    };
    let r_scale = if gamma > T::zero() {
        InputWeight::Scaled((lit::<T>(2.0) * gamma).recip())
    } else {
        InputWeight::Unconstrained
    };
    let quarter = lit::<T>(0.25);
    let quad = quarter * data.b_norm_sq * r_scale.inverse_scale();
    let l_value = -data.a + quad;
    let hjb_residual = l_value + data.a - quad;
    Ok(InverseOptimalData {
        gamma_weight: gamma,
        r_scale,
        l_value,
        hjb_residual,
    })
}
