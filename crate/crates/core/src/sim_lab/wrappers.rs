use crate::clf_core::{ClfData, ControlVector};
use crate::error::{Error, Result};
use crate::formulas::{ControllerOutput, FeedbackLaw};
use crate::scalar::{to_f64, Scalar};

/// Emits `(1 + ξ)·base(x)` without re-saturating.
#[derive(Debug, Clone)]
pub struct ScaledLaw<L, T> {
    base: L,
    factor: T,
}

impl<L, T: Scalar> ScaledLaw<L, T> {
    pub fn factor(&self) -> T {
        self.factor
    }
}

pub fn scaled_controller<T: Scalar, L: FeedbackLaw<T>>(base: L, xi: T) -> Result<ScaledLaw<L, T>> {
    if !(xi >= -T::one()) {
        return Err(Error::Domain(format!(
            "margin xi must be at least -1, got {}",
            to_f64(xi)
        )));
    }
    Ok(ScaledLaw {
        base,
        factor: T::one() + xi,
    })
}

impl<T: Scalar, L: FeedbackLaw<T>> FeedbackLaw<T> for ScaledLaw<L, T> {
    fn evaluate(&self, data: &ClfData<T>) -> Result<ControllerOutput<T>> {
        let mut out = self.base.evaluate(data)?;
        out.u = out.u.scaled(self.factor);
        Ok(out)
    }

    fn is_input_bounded(&self) -> bool {
        self.base.is_input_bounded() && self.factor <= T::one()
    }

    fn label(&self) -> String {
        format!("{}*{}", self.base.label(), to_f64(self.factor))
    }
}

/// Radially clips the base law's output onto the unit ball.
///
/// Only useful as a diagnostic: clipping can break the CLF decrease
/// condition that the unclipped law satisfies.
#[derive(Debug, Clone)]
pub struct SaturatedLaw<L> {
    pub base: L,
}

impl<T: Scalar, L: FeedbackLaw<T>> FeedbackLaw<T> for SaturatedLaw<L> {
    fn evaluate(&self, data: &ClfData<T>) -> Result<ControllerOutput<T>> {
        let mut out = self.base.evaluate(data)?;
        let n = out.u.norm();
        if n > T::one() {
            out.u = ControlVector(out.u.iter().map(|&v| v / n).collect());
        }
        Ok(out)
    }

    fn is_input_bounded(&self) -> bool {
        true
    }

    fn label(&self) -> String {
        format!("clipped[{}]", self.base.label())
    }
}
