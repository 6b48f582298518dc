use crate::clf_core::ClfData;
use crate::error::Result;
use crate::scalar::{to_f64, Scalar};

use super::closed_form::{lin_sontag, sontag, unified};
use super::optimal::opt_universal;
use super::output::ControllerOutput;
use super::scaling::{kappa_strategy, ScalingStrategy};

/// A state-feedback law expressed in terms of the CLF data at a state.
pub trait FeedbackLaw<T: Scalar>: Send + Sync {
    fn evaluate(&self, data: &ClfData<T>) -> Result<ControllerOutput<T>>;

    /// Outputs are guaranteed to satisfy `‖u‖ ≤ 1` on compatible states.
    fn is_input_bounded(&self) -> bool;

    fn label(&self) -> String;
}

impl<T: Scalar, L: FeedbackLaw<T> + ?Sized> FeedbackLaw<T> for &L {
    fn evaluate(&self, data: &ClfData<T>) -> Result<ControllerOutput<T>> {
        (**self).evaluate(data)
    }
    fn is_input_bounded(&self) -> bool {
        (**self).is_input_bounded()
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

/// The named laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ControlLaw<T> {
    Sontag,
    LinSontag,
    /// Unified law with κ picked by a strategy.
    Unified(ScalingStrategy<T>),
    /// Optimization-based law with cost weight `m`.
    OptBased {
        m: T,
    },
}

impl<T: Scalar> FeedbackLaw<T> for ControlLaw<T> {
    fn evaluate(&self, data: &ClfData<T>) -> Result<ControllerOutput<T>> {
        match self {
            ControlLaw::Sontag => Ok(sontag(data)),
            ControlLaw::LinSontag => Ok(lin_sontag(data)),
            ControlLaw::Unified(strategy) => {
                if data.b_is_zero() {
                    return unified(data, T::zero());
                }
                let choice = kappa_strategy(data, strategy)?;
                let mut out = unified(data, choice.kappa)?;
                out.kappa_clamped = choice.clamped;
                Ok(out)
            }
            ControlLaw::OptBased { m } => opt_universal(data, *m),
        }
    }

    fn is_input_bounded(&self) -> bool {
        !matches!(self, ControlLaw::Sontag)
    }

    fn label(&self) -> String {
        match self {
            ControlLaw::Sontag => "sontag".into(),
            ControlLaw::LinSontag => "lin_sontag".into(),
            ControlLaw::Unified(s) => format!("unified[{}]", s.label()),
            ControlLaw::OptBased { m } => format!("opt_based(m={})", to_f64(*m)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clf_core::{lie_data, ExpCoupledPlanar, QuadraticClf, StateVector};
    use crate::formulas::Branch;

    #[test]
    fn unified_lin_sontag_strategy_matches_direct_formula() {
        let d: ClfData<f64> = lie_data(
            &ExpCoupledPlanar,
            &QuadraticClf::new(2),
            &StateVector(vec![0.4, -1.1]),
        )
        .unwrap();
        let a = ControlLaw::LinSontag.evaluate(&d).unwrap();
        let b = ControlLaw::Unified(ScalingStrategy::LinSontag)
            .evaluate(&d)
            .unwrap();
        for (p, q) in a.u.iter().zip(b.u.iter()) {
            assert!((p - q).abs() <= 1e-12);
        }
    }

    #[test]
    fn unified_law_at_zero_b() {
        let d = ClfData::from_lie(-1.0, vec![0.0, 0.0]);
        let out = ControlLaw::Unified(ScalingStrategy::<f64>::KappaTwo)
            .evaluate(&d)
            .unwrap();
        assert_eq!(out.branch, Branch::ZeroB);
    }

    #[test]
    fn boundedness_flags() {
        assert!(!ControlLaw::<f64>::Sontag.is_input_bounded());
        assert!(ControlLaw::<f64>::OptBased { m: 10.0 }.is_input_bounded());
        assert_eq!(
            ControlLaw::<f64>::Unified(ScalingStrategy::KappaOne).label(),
            "unified[kappa_one]"
        );
    }
}
