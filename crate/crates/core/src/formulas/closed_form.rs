use crate::clf_core::{check_compatibility, kappa_interval, ClfData, ControlVector};
use crate::error::{Error, Result};
use crate::scalar::{membership_tol, to_f64, Scalar};

use super::output::{Branch, ControllerOutput};
use super::scaling::kappa_lin_sontag;

/// `−coeff · bᵀ`
pub(super) fn along_b<T: Scalar>(data: &ClfData<T>, coeff: T) -> ControlVector<T> {
    ControlVector(data.b.iter().map(|&bi| -coeff * bi).collect())
}

pub(super) fn compatible<T: Scalar>(data: &ClfData<T>) -> bool {
    check_compatibility(data, T::one()).unwrap_or(false)
}

/// Pointwise min-norm law for the tightened constraint `a + σ + b·u ≤ 0`.
///
/// `σ` is supplied by the caller. No input bound is enforced.
pub fn pmn<T: Scalar>(data: &ClfData<T>, sigma: T) -> ControllerOutput<T> {
    let offset = data.a + sigma;
    if offset >= T::zero() && !data.b_is_zero() {
        let u = along_b(data, offset / data.b_norm_sq);
        ControllerOutput::new(u, None, Branch::PmnActive, true)
    } else {
        let u = ControlVector::zeros(data.input_dim());
        ControllerOutput::new(u, None, Branch::PmnZero, true)
    }
}

/// Sontag's formula: `pmn` with `σ = σ_Stg`. Unbounded.
pub fn sontag<T: Scalar>(data: &ClfData<T>) -> ControllerOutput<T> {
    let mut out = pmn(data, data.sigma_stg);
    // a + σ_Stg ≥ 0 always, so only b decides the branch
    out.branch = if data.b_is_zero() {
        Branch::SontagZero
    } else {
        Branch::SontagNonzero
    };
    out
}

/// Lin-Sontag formula for the unit ball.
///
/// On incompatible states the formula is still evaluated, but the output is
/// flagged infeasible.
pub fn lin_sontag<T: Scalar>(data: &ClfData<T>) -> ControllerOutput<T> {
    let feasible = compatible(data);
    if data.b_is_zero() {
        let u = ControlVector::zeros(data.input_dim());
        return ControllerOutput::new(u, None, Branch::ZeroB, feasible);
    }
    let root = (T::one() + data.b_norm_sq).sqrt();
    let coeff = (data.a + data.sigma_stg) / (data.b_norm_sq * (T::one() + root));
    let kappa = kappa_lin_sontag(data).ok();
    ControllerOutput::new(
        along_b(data, coeff),
        kappa,
        Branch::UnifiedNonzero,
        feasible,
    )
}

/// Unified κ-scaled law `u = −((a + κσ_Stg)/‖b‖²)·bᵀ`.
///
/// Requires `κ ∈ K(x)` when `b ≠ 0`; `kappa` is ignored when `b = 0`.
pub fn unified<T: Scalar>(data: &ClfData<T>, kappa: T) -> Result<ControllerOutput<T>> {
    if data.b_is_zero() {
        let u = ControlVector::zeros(data.input_dim());
        return Ok(ControllerOutput::new(
            u,
            None,
            Branch::ZeroB,
            compatible(data),
        ));
    }
    let interval = kappa_interval(data);
    if !interval.contains(kappa, membership_tol()) {
        return Err(Error::domain(format!(
            "kappa {} outside admissible interval [{}, {}]",
            to_f64(kappa),
            to_f64(interval.lo),
            to_f64(interval.hi)
        )));
    }
    let coeff = (data.a + kappa * data.sigma_stg) / data.b_norm_sq;
    Ok(ControllerOutput::new(
        along_b(data, coeff),
        Some(kappa),
        Branch::UnifiedNonzero,
        true,
    ))
}
