use crate::error::{Error, Result};
use crate::scalar::{dot, norm_sq, to_f64, zero_b_tol, Scalar};

use super::lyapunov::Clf;
use super::system::ControlAffineSystem;
use super::vectors::StateVector;

/// Per-state bundle `(x, a, b, ‖b‖², σ_Stg)` with `a = L_f V` and `b = L_g V`.
///
/// Every closed-form law in [`crate::formulas`] is a function of this data
/// alone.
#[derive(Debug, Clone, PartialEq)]
pub struct ClfData<T> {
    pub x: StateVector<T>,
    pub a: T,
    pub b: Vec<T>,
    pub b_norm_sq: T,
    pub sigma_stg: T,
}

impl<T: Scalar> ClfData<T> {
    /// Assembles the bundle from a state and its Lie derivatives.
    pub fn new(x: StateVector<T>, a: T, b: Vec<T>) -> Self {
        let b_norm_sq = norm_sq(&b);
        Self {
            x,
            a,
            sigma_stg: sigma_sontag(a, b_norm_sq),
            b,
            b_norm_sq,
        }
    }

    /// Bundle without an associated state, for working directly in `(a, b)`.
    pub fn from_lie(a: T, b: Vec<T>) -> Self {
        Self::new(StateVector(Vec::new()), a, b)
    }

    pub fn b_norm(&self) -> T {
        self.b_norm_sq.sqrt()
    }

    /// `‖b‖ ≤ 1e-12`: the `b = 0` branch of every formula applies.
    pub fn b_is_zero(&self) -> bool {
        self.b_norm() <= zero_b_tol()
    }

    pub fn input_dim(&self) -> usize {
        self.b.len()
    }

    /// `a + b·u`, the derivative of `V` along `f + g·u`.
    pub fn clf_rate(&self, u: &[T]) -> T {
        self.a + dot(&self.b, u)
    }
}

/// Computes `a(x) = ∇V·f(x)` and `b(x) = ∇V·g(x)`.
pub fn lie_data<T, S, V>(system: &S, clf: &V, x: &StateVector<T>) -> Result<ClfData<T>>
where
    T: Scalar,
    S: ControlAffineSystem<T> + ?Sized,
    V: Clf<T> + ?Sized,
{
    let n = system.state_dim();
    check_len("state", n, x.len())?;
    check_len("clf dimension", n, clf.dim())?;

    let grad = clf.gradient(x);
    check_len("clf gradient", n, grad.len())?;
    let f = system.drift(x);
    check_len("drift", n, f.len())?;
    let g = system.input_map(x);
    check_len("input map rows", n, g.rows())?;
    check_len("input map cols", system.input_dim(), g.cols())?;

    let a = dot(&grad, &f);
    let b = g.left_mul(&grad);
    Ok(ClfData::new(x.clone(), a, b))
}

fn check_len(context: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension {
            context,
            expected,
            actual,
        })
    }
}

/// `σ_Stg = sqrt(a² + ‖b‖⁴)`.
pub fn sigma_sontag<T: Scalar>(a: T, b_norm_sq: T) -> T {
    a.hypot(b_norm_sq)
}

/// Compatibility of the CLF condition with the ball `‖u‖ ≤ γ`:
/// true iff `γ‖b‖ ≥ a`.
pub fn check_compatibility<T: Scalar>(data: &ClfData<T>, gamma: T) -> Result<bool> {
    if !(gamma > T::zero()) {
        return Err(Error::domain(format!(
            "input bound scale must be positive, got {}",
            to_f64(gamma)
        )));
    }
    Ok(gamma * data.b_norm() >= data.a)
}

/// Admissible scaling interval `K(x) = [max(−a/σ, 0), (‖b‖ − a)/σ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaInterval<T> {
    pub lo: T,
    pub hi: T,
    /// False when `b = 0`; `lo`/`hi` are then meaningless.
    pub defined: bool,
}

impl<T: Scalar> KappaInterval<T> {
    pub fn is_nonempty(&self) -> bool {
        self.defined && self.lo <= self.hi
    }

    /// Membership with an absolute slack `tol` on both ends.
    pub fn contains(&self, kappa: T, tol: T) -> bool {
        self.defined && kappa >= self.lo - tol && kappa <= self.hi + tol
    }

    /// Strictly between the end points.
    pub fn contains_strictly(&self, kappa: T) -> bool {
        self.defined && kappa > self.lo && kappa < self.hi
    }

    pub fn clamp(&self, kappa: T) -> T {
        kappa.max(self.lo).min(self.hi)
    }
}

pub fn kappa_interval<T: Scalar>(data: &ClfData<T>) -> KappaInterval<T> {
    if data.b_is_zero() {
        return KappaInterval {
            lo: T::zero(),
            hi: T::zero(),
            defined: false,
        };
    }
    let sigma = data.sigma_stg;
    KappaInterval {
        lo: (-data.a / sigma).max(T::zero()),
        hi: (data.b_norm() - data.a) / sigma,
        defined: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clf_core::{ExpCoupledPlanar, QuadraticClf, SingleIntegrator};
    use approx::assert_relative_eq;

    fn planar(x1: f64, x2: f64) -> ClfData<f64> {
        lie_data(
            &ExpCoupledPlanar,
            &QuadraticClf::new(2),
            &StateVector(vec![x1, x2]),
        )
        .unwrap()
    }

    #[test]
    fn origin_has_zero_lie_data() {
        let d = planar(0.0, 0.0);
        assert_eq!(d.a, 0.0);
        assert_eq!(d.b, vec![0.0, 0.0]);
        assert_eq!(d.sigma_stg, 0.0);
        assert!(d.b_is_zero());
    }

    #[test]
    fn planar_initial_state() {
        // a = -x1^4 - x2^2, b = [x1 e^{x2}, x2]
        let d = planar(-1.0, 0.6);
        assert_relative_eq!(d.a, -1.36, epsilon = 1e-15);
        assert_relative_eq!(d.b[0], -1.822_118_800_390_509, epsilon = 1e-14);
        assert_relative_eq!(d.b[1], 0.6, epsilon = 1e-15);
        assert_relative_eq!(d.sigma_stg, 3.923_373_620_369_581, epsilon = 1e-13);
    }

    #[test]
    fn scalar_integrator_lie_data() {
        let d = lie_data(
            &SingleIntegrator,
            &QuadraticClf::new(1),
            &StateVector(vec![2.0]),
        )
        .unwrap();
        assert_eq!(d.a, 0.0);
        assert_eq!(d.b, vec![2.0]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = lie_data(
            &ExpCoupledPlanar,
            &QuadraticClf::new(2),
            &StateVector(vec![1.0]),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Dimension {
                expected: 2,
                actual: 1,
                ..
            }
        ));
        let err = lie_data(
            &ExpCoupledPlanar,
            &QuadraticClf::new(3),
            &StateVector(vec![1.0, 0.0]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_sontag(0.0, 0.0), 0.0);
        assert_eq!(sigma_sontag(3.0f64, 4.0), 5.0);
        // sqrt(1.8496 + 13.54313601)
        assert_relative_eq!(
            sigma_sontag(-1.36f64, 3.6801),
            3.923_357_746_879_578,
            epsilon = 1e-12
        );
    }

    #[test]
    fn compatibility_examples() {
        let neg = ClfData::from_lie(-1.0, vec![0.0]);
        assert!(check_compatibility(&neg, 1.0).unwrap());
        let pos = ClfData::from_lie(2.0, vec![1.0]);
        assert!(!check_compatibility(&pos, 1.0).unwrap());
        assert!(check_compatibility(&pos, 3.0).unwrap());
        assert!(matches!(
            check_compatibility(&pos, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(check_compatibility(&pos, -1.0).is_err());
    }

    #[test]
    fn kappa_interval_examples() {
        let k = kappa_interval(&planar(-1.0, 0.6));
        assert!(k.defined);
        assert_relative_eq!(k.lo, 0.346_640_450_692_505_8, epsilon = 1e-12);
        assert_relative_eq!(k.hi, 0.835_597_983_112_574_3, epsilon = 1e-12);

        let unit = kappa_interval(&ClfData::from_lie(0.0, vec![1.0, 0.0]));
        assert_eq!(unit.lo, 0.0);
        assert_relative_eq!(unit.hi, 1.0);

        let zero = kappa_interval(&ClfData::from_lie(-1.0, vec![0.0, 0.0]));
        assert!(!zero.defined);
        assert!(!zero.is_nonempty());
    }

    #[test]
    fn tiny_b_counts_as_zero() {
        let d = ClfData::from_lie(-1.0, vec![1e-13, 0.0]);
        assert!(d.b_is_zero());
        assert!(!kappa_interval(&d).defined);
    }

    #[test]
    fn works_in_single_precision() {
        let d = lie_data(
            &ExpCoupledPlanar,
            &QuadraticClf::new(2),
            &StateVector(vec![-1.0f32, 0.6]),
        )
        .unwrap();
        assert_relative_eq!(d.sigma_stg, 3.923_373_6f32, epsilon = 1e-5);
        let k = kappa_interval(&d);
        assert!(k.is_nonempty());
    }
}
