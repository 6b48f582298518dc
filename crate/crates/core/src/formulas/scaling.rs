use crate::clf_core::{kappa_interval, ClfData};
use crate::error::{Error, Result};
use crate::scalar::{lit, membership_tol, to_f64, Scalar};

use super::optimal::opt_universal;

/// How the unified law picks its scaling term κ(x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalingStrategy<T> {
    /// κ that reproduces the Lin-Sontag formula.
    LinSontag,
    /// `κ₁ = −2a/σ_Stg`, clamped into `K(x)`.
    KappaOne,
    /// `κ₁ = (|a| − a)/σ_Stg`, clamped into `K(x)`. Agrees with
    /// [`ScalingStrategy::KappaOne`] wherever `a ≤ 0`.
    KappaOneAbs,
    /// `κ₂ = (‖b‖²·r − a·σ) / (σ² + ‖b‖²(1 + r))` with `r = sqrt(1 + ‖b‖²)`.
    KappaTwo,
    /// Midpoint of the (clamped) `κ₁` and `κ₂`.
    KappaThree,
    /// Fixed κ; must lie in `K(x)` at every evaluated state.
    Constant(T),
    /// κ of the optimization-based law with cost weight `m`.
    OptBased(T),
}

impl<T: Scalar> ScalingStrategy<T> {
    pub fn label(&self) -> String {
        match self {
            ScalingStrategy::LinSontag => "lin_sontag".into(),
            ScalingStrategy::KappaOne => "kappa_one".into(),
            ScalingStrategy::KappaOneAbs => "kappa_one_abs".into(),
            ScalingStrategy::KappaTwo => "kappa_two".into(),
            ScalingStrategy::KappaThree => "kappa_three".into(),
            ScalingStrategy::Constant(c) => format!("constant({})", to_f64(*c)),
            ScalingStrategy::OptBased(m) => format!("opt_based({})", to_f64(*m)),
        }
    }

    /// Whether the strategy's κ stays in `[0, 1]` on compatible states.
    pub fn kappa_in_unit_interval(&self) -> bool {
        matches!(
            self,
            ScalingStrategy::LinSontag | ScalingStrategy::OptBased(_)
        )
    }
}

/// A scaling term and whether the clamping policy had to move it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaChoice<T> {
    pub kappa: T,
    pub clamped: bool,
}

/// `κ_Lin-Stg = (σ − a·r) / (σ(1 + r))`, `r = sqrt(1 + ‖b‖²)`.
pub fn kappa_lin_sontag<T: Scalar>(data: &ClfData<T>) -> Result<T> {
    if data.b_is_zero() {
        return Err(Error::domain("kappa_lin_sontag undefined for b = 0"));
    }
    let sigma = data.sigma_stg;
    let root = (T::one() + data.b_norm_sq).sqrt();
    Ok((sigma - data.a * root) / (sigma * (T::one() + root)))
}

fn kappa_two<T: Scalar>(data: &ClfData<T>) -> T {
    let sigma = data.sigma_stg;
    let nb2 = data.b_norm_sq;
    let root = (T::one() + nb2).sqrt();
    (nb2 * root - data.a * sigma) / (sigma * sigma + nb2 * (T::one() + root))
}

/// Evaluates a strategy at one state.
///
/// Errors when `b = 0`, when `K(x)` is empty, or when the resulting κ lies
/// outside `K(x)` after the clamping policy (which only applies to the κ₁
/// variants).
pub fn kappa_strategy<T: Scalar>(
    data: &ClfData<T>,
    strategy: &ScalingStrategy<T>,
) -> Result<KappaChoice<T>> {
    if data.b_is_zero() {
        return Err(Error::domain("scaling strategies need b != 0"));
    }
    let interval = kappa_interval(data);
    if !interval.is_nonempty() {
        return Err(Error::domain(format!(
            "empty admissible interval (a = {}, |b| = {}): state incompatible with unit input bound",
            to_f64(data.a),
            to_f64(data.b_norm())
        )));
    }
    let sigma = data.sigma_stg;
    let tol = membership_tol::<T>();
    let clamp = |raw: T| {
        let kappa = interval.clamp(raw);
        KappaChoice {
            kappa,
            clamped: (kappa - raw).abs() > tol,
        }
    };
    let kappa_one = || clamp(lit::<T>(-2.0) * data.a / sigma);

    let choice = match *strategy {
        ScalingStrategy::LinSontag => KappaChoice {
            kappa: kappa_lin_sontag(data)?,
            clamped: false,
        },
        ScalingStrategy::KappaOne => kappa_one(),
        ScalingStrategy::KappaOneAbs => clamp((data.a.abs() - data.a) / sigma),
        ScalingStrategy::KappaTwo => KappaChoice {
            kappa: kappa_two(data),
            clamped: false,
        },
        ScalingStrategy::KappaThree => {
            let one = kappa_one();
            KappaChoice {
                kappa: (one.kappa + kappa_two(data)) / lit(2.0),
                clamped: one.clamped,
            }
        }
        ScalingStrategy::Constant(c) => {
            if c < T::zero() {
                return Err(Error::domain(format!(
                    "constant kappa must be >= 0, got {}",
                    to_f64(c)
                )));
            }
            KappaChoice {
                kappa: c,
                clamped: false,
            }
        }
        ScalingStrategy::OptBased(m) => KappaChoice {
            kappa: opt_universal(data, m)?
                .kappa
                .expect("optimization-based law reports kappa when b != 0"),
            clamped: false,
        },
    };

    if !interval.contains(choice.kappa, tol) {
        return Err(Error::domain(format!(
            "{} gives kappa {} outside [{}, {}]",
            strategy.label(),
            to_f64(choice.kappa),
            to_f64(interval.lo),
            to_f64(interval.hi)
        )));
    }
    Ok(choice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clf_core::{lie_data, ExpCoupledPlanar, QuadraticClf, StateVector};
    use approx::assert_relative_eq;

    fn x0() -> ClfData<f64> {
        lie_data(
            &ExpCoupledPlanar,
            &QuadraticClf::new(2),
            &StateVector(vec![-1.0, 0.6]),
        )
        .unwrap()
    }

    #[test]
    fn lin_sontag_kappa_with_zero_drift_term() {
        for nb in [0.1f64, 1.0, 3.0] {
            let d = ClfData::from_lie(0.0, vec![nb]);
            let expected = 1.0 / (1.0 + (1.0 + nb * nb).sqrt());
            assert_relative_eq!(kappa_lin_sontag(&d).unwrap(), expected, epsilon = 1e-15);
        }
        assert!(kappa_lin_sontag(&ClfData::from_lie(-1.0, vec![0.0])).is_err());
    }

    #[test]
    fn lin_sontag_kappa_at_initial_state() {
        let d = x0();
        let k = kappa_lin_sontag(&d).unwrap();
        assert_relative_eq!(k, 0.553_180_334_231_081_1, epsilon = 1e-12);
        assert!(kappa_interval(&d).contains(k, 0.0));
    }

    #[test]
    fn lin_sontag_kappa_on_compatibility_boundary() {
        // a = ‖b‖ = 1: σ = √2, K = [0, 0], κ_LS = (√2 − √2)/(...) = 0
        let d = ClfData::from_lie(1.0f64, vec![1.0]);
        let k = kappa_lin_sontag(&d).unwrap();
        let interval = kappa_interval(&d);
        assert!(k.abs() < 1e-15);
        assert!(interval.hi.abs() < 1e-15 && interval.lo == 0.0);
    }

    #[test]
    fn named_strategies_at_initial_state() {
        let d = x0();
        let k1 = kappa_strategy(&d, &ScalingStrategy::KappaOne).unwrap();
        assert_relative_eq!(k1.kappa, 0.693_280_901_385_011_7, epsilon = 1e-12);
        assert!(!k1.clamped);
        let k2 = kappa_strategy(&d, &ScalingStrategy::KappaTwo).unwrap();
        assert_relative_eq!(k2.kappa, 0.491_862_370_876_840_9, epsilon = 1e-12);
        let k3 = kappa_strategy(&d, &ScalingStrategy::KappaThree).unwrap();
        assert_relative_eq!(k3.kappa, 0.592_571_636_130_926_3, epsilon = 1e-12);
        let abs = kappa_strategy(&d, &ScalingStrategy::KappaOneAbs).unwrap();
        assert_eq!(abs.kappa, k1.kappa);
    }

    #[test]
    fn kappa_one_signs() {
        let neg = ClfData::from_lie(-0.5, vec![1.0]);
        let k = kappa_strategy(&neg, &ScalingStrategy::KappaOne).unwrap();
        assert!(k.kappa > 0.0);
        let zero = ClfData::from_lie(0.0, vec![1.0]);
        let k = kappa_strategy(&zero, &ScalingStrategy::KappaOne).unwrap();
        assert_eq!(k.kappa, 0.0);
        assert_eq!(k.kappa, kappa_interval(&zero).lo);
    }

    #[test]
    fn kappa_one_clamped_when_drift_dominates() {
        // -a = 4 > ‖b‖ = 1 puts -2a/σ above K.hi
        let d = ClfData::from_lie(-4.0, vec![1.0]);
        let k = kappa_strategy(&d, &ScalingStrategy::KappaOne).unwrap();
        assert!(k.clamped);
        assert_eq!(k.kappa, kappa_interval(&d).hi);
        // the absolute-value variant coincides for a ≤ 0
        let abs = kappa_strategy(&d, &ScalingStrategy::KappaOneAbs).unwrap();
        assert_eq!(abs, k);
    }

    #[test]
    fn kappa_one_variants_differ_for_positive_drift() {
        let d = ClfData::from_lie(0.5, vec![1.0]);
        let k1 = kappa_strategy(&d, &ScalingStrategy::KappaOne).unwrap();
        let abs = kappa_strategy(&d, &ScalingStrategy::KappaOneAbs).unwrap();
        // -2a/σ < 0 clamps to lo = 0; (|a| - a)/σ = 0 without clamping
        assert!(k1.clamped);
        assert!(!abs.clamped);
        assert_eq!(k1.kappa, abs.kappa);
    }

    #[test]
    fn constant_strategy_membership() {
        let d = x0();
        assert_eq!(
            kappa_strategy(&d, &ScalingStrategy::Constant(0.5))
                .unwrap()
                .kappa,
            0.5
        );
        assert!(matches!(
            kappa_strategy(&d, &ScalingStrategy::Constant(0.95)),
            Err(Error::Domain(_))
        ));
        assert!(kappa_strategy(&d, &ScalingStrategy::Constant(-0.1)).is_err());
    }

    #[test]
    fn strategies_reject_zero_b_and_incompatible_states() {
        let zero = ClfData::from_lie(-1.0, vec![0.0, 0.0]);
        assert!(kappa_strategy(&zero, &ScalingStrategy::KappaTwo).is_err());
        let bad = ClfData::from_lie(2.0, vec![1.0]);
        assert!(kappa_strategy(&bad, &ScalingStrategy::LinSontag).is_err());
    }

    #[test]
    fn opt_based_strategy_matches_formula() {
        let d = x0();
        let k = kappa_strategy(&d, &ScalingStrategy::OptBased(10.0)).unwrap();
        assert_relative_eq!(k.kappa, 0.807_313_739_113_164_7, epsilon = 1e-12);
    }
}
