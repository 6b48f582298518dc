use crate::clf_core::{lie_data, Clf, ControlAffineSystem, ControlVector, StateVector};
use crate::error::{Error, Result};
use crate::formulas::{Branch, ControllerOutput, FeedbackLaw};
use crate::scalar::{lit, norm, to_f64, Scalar};

/// Below this state norm the law is not evaluated and `u = 0` is applied.
pub const ORIGIN_RADIUS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig<T> {
    pub t_end: T,
    pub h: T,
    pub x0: StateVector<T>,
    /// Weight `m` on `(1 − κ)²` in the running cost.
    pub cost_weight: T,
    /// Input scaling `1 + ξ` applied to the law's output.
    pub margin_xi: T,
}

impl<T: Scalar> SimConfig<T> {
    pub fn new(x0: StateVector<T>, t_end: T, h: T) -> Self {
        Self {
            t_end,
            h,
            x0,
            cost_weight: lit(10.0),
            margin_xi: T::zero(),
        }
    }

    pub fn with_cost_weight(mut self, m: T) -> Self {
        self.cost_weight = m;
        self
    }

    pub fn with_margin(mut self, xi: T) -> Self {
        self.margin_xi = xi;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.t_end > T::zero()) || !(self.h > T::zero()) {
            return Err(Error::Domain("t_end and h must be positive".into()));
        }
        if self.h > self.t_end {
            return Err(Error::Domain("step h exceeds t_end".into()));
        }
        if !(self.margin_xi >= -T::one()) {
            return Err(Error::Domain("margin xi must be at least -1".into()));
        }
        if !(self.cost_weight >= T::zero()) {
            return Err(Error::Domain("cost weight must be nonnegative".into()));
        }
        Ok(())
    }
}

/// One recorded step of a closed-loop run.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample<T> {
    pub t: T,
    pub x: StateVector<T>,
    /// Applied input, including the margin scaling.
    pub u: ControlVector<T>,
    pub kappa: Option<T>,
    pub v: T,
    pub cost_rate: T,
    pub cost_cum: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrajectoryStatus {
    Complete,
    /// The law failed at some state; samples stop before it.
    Truncated {
        t: f64,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub samples: Vec<Sample<T>>,
    pub status: TrajectoryStatus,
}

impl<T: Scalar> Trajectory<T> {
    pub fn last(&self) -> Option<&Sample<T>> {
        self.samples.last()
    }

    pub fn max_input_norm(&self) -> T {
        self.samples
            .iter()
            .map(|s| s.u.norm())
            .fold(T::zero(), T::max)
    }

    pub fn final_state_norm(&self) -> Option<T> {
        self.last().map(|s| s.x.norm())
    }

    pub fn total_cost(&self) -> T {
        self.last().map_or(T::zero(), |s| s.cost_cum)
    }
}

/// Evaluates the law at `x` with the origin rule applied.
pub fn control_at<T, S, V, L>(
    system: &S,
    clf: &V,
    law: &L,
    x: &StateVector<T>,
) -> Result<ControllerOutput<T>>
where
    T: Scalar,
    S: ControlAffineSystem<T> + ?Sized,
    V: Clf<T> + ?Sized,
    L: FeedbackLaw<T> + ?Sized,
{
    if norm(x) <= lit(ORIGIN_RADIUS) {
        return Ok(ControllerOutput {
            u: ControlVector::zeros(system.input_dim()),
            kappa: None,
            branch: Branch::ZeroB,
            feasible: true,
            kappa_clamped: false,
        });
    }
    law.evaluate(&lie_data(system, clf, x)?)
}

fn cost_rate<T: Scalar>(u: &ControlVector<T>, kappa: Option<T>, m: T) -> T {
    let gap = T::one() - kappa.unwrap_or(T::one());
    lit::<T>(0.5) * (u.iter().map(|&v| v * v).sum::<T>() + m * gap * gap)
}

/// Integrates `ẋ = f(x) + g(x)(1 + ξ)u(x)` with classical fourth-order
/// Runge-Kutta at fixed step, re-evaluating the law at every stage.
///
/// A law failure truncates the trajectory; a non-finite state is an error.
pub fn simulate<T, S, V, L>(
    system: &S,
    clf: &V,
    law: &L,
    cfg: &SimConfig<T>,
) -> Result<Trajectory<T>>
where
    T: Scalar,
    S: ControlAffineSystem<T> + ?Sized,
    V: Clf<T> + ?Sized,
    L: FeedbackLaw<T> + ?Sized,
{
    cfg.validate()?;
    let n = system.state_dim();
    if cfg.x0.len() != n || clf.dim() != n {
        return Err(Error::Dimension {
            context: "simulate",
            expected: n,
            actual: if cfg.x0.len() != n {
                cfg.x0.len()
            } else {
                clf.dim()
            },
        });
    }
    let scale = T::one() + cfg.margin_xi;
    let h = cfg.h;
    let half = lit::<T>(0.5);
    let steps = (cfg.t_end / h).round().to_usize().unwrap_or(0);

    let control = |x: &StateVector<T>| -> Result<ControllerOutput<T>> {
        let mut out = control_at(system, clf, law, x)?;
        out.u = out.u.scaled(scale);
        Ok(out)
    };
    let field = |x: &[T], u: &[T]| system.vector_field(x, u);
    let offset = |x: &[T], k: &[T], c: T| -> StateVector<T> {
        StateVector(x.iter().zip(k).map(|(&xi, &ki)| xi + c * ki).collect())
    };

    let mut samples = Vec::with_capacity(steps + 1);
    let mut x = cfg.x0.clone();
    let mut cost_cum = T::zero();
    let mut prev_rate: Option<T> = None;
    let truncated = |t: T, e: Error| TrajectoryStatus::Truncated {
        t: to_f64(t),
        reason: e.to_string(),
    };

    for k in 0..=steps {
        let t = T::from_usize(k).unwrap() * h;
        if !x.is_finite() {
            return Err(Error::Divergence { t: to_f64(t) });
        }
        let out = match control(&x) {
            Ok(o) => o,
            Err(e) => {
                return Ok(Trajectory {
                    samples,
                    status: truncated(t, e),
                })
            }
        };
        let rate = cost_rate(&out.u, out.kappa, cfg.cost_weight);
        if let Some(p) = prev_rate {
            cost_cum += half * h * (p + rate);
        }
        prev_rate = Some(rate);
        samples.push(Sample {
            t,
            x: x.clone(),
            u: out.u.clone(),
            kappa: out.kappa,
            v: clf.value(&x),
            cost_rate: rate,
            cost_cum,
        });
        if k == steps {
            break;
        }

        let stage = |x: &StateVector<T>| control(x).map(|o| field(x, &o.u));
        let k1 = field(&x, &out.u);
        let next = (|| {
            let k2 = stage(&offset(&x, &k1, half * h))?;
            let k3 = stage(&offset(&x, &k2, half * h))?;
            let k4 = stage(&offset(&x, &k3, h))?;
            let sixth = h / lit(6.0);
            Ok::<_, Error>(StateVector(
                (0..n)
                    .map(|i| x[i] + sixth * (k1[i] + lit::<T>(2.0) * (k2[i] + k3[i]) + k4[i]))
                    .collect(),
            ))
        })();
        match next {
            Ok(xn) => x = xn,
            Err(e) => {
                return Ok(Trajectory {
                    samples,
                    status: truncated(t, e),
                })
            }
        }
    }
    Ok(Trajectory {
        samples,
        status: TrajectoryStatus::Complete,
    })
}
