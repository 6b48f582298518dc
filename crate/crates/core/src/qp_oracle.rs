//! Numerical solvers for the pointwise optimization problems, kept apart
//! from [`crate::formulas`] so they can certify the closed forms.
//!
//! Nothing here calls into the formulas module: the halfspace projection,
//! the admissible κ range and the multiplier recovery are derived locally.

use crate::clf_core::{ClfData, ControlVector};
use crate::error::{Error, Result};
use crate::scalar::{dot, lit, norm, norm_sq, to_f64, Scalar};

/// Which inequality constraints of the joint problem are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActiveSet {
    /// Only the tightened CLF constraint.
    ClfOnly,
    /// Tightened CLF constraint and unit ball.
    ClfAndBall,
    /// Neither (`u = 0`, `κ = 1`, both multipliers zero).
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointQpSolution<T> {
    pub u: ControlVector<T>,
    pub kappa: T,
    pub objective: T,
    pub lambda1: T,
    pub lambda2: T,
    pub converged: bool,
    pub active_set: ActiveSet,
}

/// Residuals of the KKT system at a candidate solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktResiduals<T> {
    /// `‖u + λ₁bᵀ + 2λ₂u‖`
    pub stationarity_u: T,
    /// `|m(κ − 1) + λ₁σ|`
    pub stationarity_kappa: T,
    /// `max(0, a + b·u + κσ)`
    pub clf_violation: T,
    /// `max(0, ‖u‖ − 1)`
    pub ball_violation: T,
    /// `|λ₁·(a + b·u + κσ)|`
    pub slackness_clf: T,
    /// `|λ₂·(‖u‖² − 1)|`
    pub slackness_ball: T,
    /// `max(0, −λ₁, −λ₂)`
    pub dual_violation: T,
}

impl<T: Scalar> KktResiduals<T> {
    pub fn max(&self) -> T {
        [
            self.stationarity_u,
            self.stationarity_kappa,
            self.clf_violation,
            self.ball_violation,
            self.slackness_clf,
            self.slackness_ball,
            self.dual_violation,
        ]
        .into_iter()
        .fold(T::zero(), T::max)
    }
}

impl<T: Scalar> JointQpSolution<T> {
    pub fn kkt_residuals(&self, data: &ClfData<T>, m: T) -> KktResiduals<T> {
        let u = &self.u.0;
        let sigma = data.sigma_stg;
        let clf = data.a + dot(&data.b, u) + self.kappa * sigma;
        let unorm_sq = norm_sq(u);
        let grad_u: Vec<T> = u
            .iter()
            .zip(&data.b)
            .map(|(&ui, &bi)| ui + self.lambda1 * bi + lit::<T>(2.0) * self.lambda2 * ui)
            .collect();
        KktResiduals {
            stationarity_u: norm(&grad_u),
            stationarity_kappa: (m * (self.kappa - T::one()) + self.lambda1 * sigma).abs(),
            clf_violation: clf.max(T::zero()),
            ball_violation: (unorm_sq.sqrt() - T::one()).max(T::zero()),
            slackness_clf: (self.lambda1 * clf).abs(),
            slackness_ball: (self.lambda2 * (unorm_sq - T::one())).abs(),
            dual_violation: (-self.lambda1).max(-self.lambda2).max(T::zero()),
        }
    }
}

/// Euclidean projection of `point` onto `{u : normal·u + offset ≤ 0}`.
/// `None` when the halfspace is empty.
fn project_onto_halfspace<T: Scalar>(point: &[T], normal: &[T], offset: T) -> Option<Vec<T>> {
    let excess = dot(normal, point) + offset;
    if excess <= T::zero() {
        return Some(point.to_vec());
    }
    let nn = norm_sq(normal);
    if nn <= T::zero() {
        return None;
    }
    let step = excess / nn;
    Some(
        point
            .iter()
            .zip(normal)
            .map(|(&p, &n)| p - step * n)
            .collect(),
    )
}

/// Minimum-norm `u` with `a + σ + b·u ≤ 0`.
pub fn solve_pmn<T: Scalar>(data: &ClfData<T>, sigma: T) -> Result<ControlVector<T>> {
    let origin = vec![T::zero(); data.input_dim()];
    project_onto_halfspace(&origin, &data.b, data.a + sigma)
        .map(ControlVector)
        .ok_or_else(|| {
            Error::Infeasible(format!(
                "b = 0 with a + sigma = {} > 0",
                to_f64(data.a + sigma)
            ))
        })
}

/// Inner problem for fixed κ: least-norm `u` in the tightened CLF halfspace,
/// rejected when it leaves the unit ball.
fn inner_input<T: Scalar>(data: &ClfData<T>, kappa: T) -> Option<Vec<T>> {
    let origin = vec![T::zero(); data.input_dim()];
    let u = project_onto_halfspace(&origin, &data.b, data.a + kappa * data.sigma_stg)?;
    (norm(&u) <= T::one() + lit(1e-12)).then_some(u)
}

fn objective<T: Scalar>(u: &[T], kappa: T, m: T) -> T {
    lit::<T>(0.5) * (norm_sq(u) + m * (T::one() - kappa) * (T::one() - kappa))
}

/// Largest κ for which the inner problem stays inside the unit ball: the
/// CLF hyperplane must be within unit distance of the origin,
/// `(a + κσ)/‖b‖ ≤ 1`. For `b = 0` the hyperplane degenerates and
/// `a + κσ ≤ 0` is required directly.
fn feasibility_edge<T: Scalar>(data: &ClfData<T>) -> T {
    let sigma = data.sigma_stg;
    (norm(&data.b) - data.a) / sigma
}

#[derive(Debug, Clone, Copy)]
struct Minimum<T> {
    x: T,
    hit_edge: bool,
    exhausted: bool,
}

/// Golden-section search for the minimizer of a unimodal extended-valued
/// function whose `+∞` region lies to the right of its finite region.
fn golden_section<T: Scalar>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    tol: T,
    max_iter: usize,
) -> Minimum<T> {
    let inv_phi = (lit::<T>(5.0).sqrt() - T::one()) / lit(2.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iter = 0;
    while b - a > tol && iter < max_iter {
        if fd.is_infinite() || fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        iter += 1;
    }
    let x = (a + b) / lit(2.0);
    let edge_tol = tol * lit(10.0);
    Minimum {
        x,
        hit_edge: x - lo <= edge_tol || hi - x <= edge_tol,
        exhausted: b - a > tol,
    }
}

/// Solves the joint problem
/// `min ½(‖u‖² + m(1 − κ)²)  s.t.  a + b·u ≤ −κσ_Stg, ‖u‖ ≤ 1`
/// by golden-section search on κ over the admissible range widened by 10%,
/// with the inner least-norm `u` computed exactly for each trial κ.
pub fn solve_joint<T: Scalar>(data: &ClfData<T>, m: T) -> Result<JointQpSolution<T>> {
    if !(m > T::zero()) {
        return Err(Error::Domain(format!(
            "cost weight must be positive, got {}",
            to_f64(m)
        )));
    }
    let dim = data.input_dim();
    let b_norm = norm(&data.b);
    if b_norm < data.a {
        return Err(Error::Infeasible(format!(
            "state incompatible with unit input bound (a = {}, |b| = {})",
            to_f64(data.a),
            to_f64(b_norm)
        )));
    }
    let sigma = data.sigma_stg;
    if sigma <= T::zero() {
        // a = 0 and b = 0: every κ is feasible with u = 0
        return Ok(finish(data, m, vec![T::zero(); dim], T::one(), true));
    }

    let zero_b = b_norm <= crate::scalar::zero_b_tol();
    let lower = (-data.a / sigma).max(T::zero());
    let edge = if zero_b {
        -data.a / sigma
    } else {
        feasibility_edge(data)
    };
    let margin = ((edge - lower) * lit(0.1)).max(lit(1e-3));
    let profile = |kappa: T| match inner_input(data, kappa) {
        Some(u) => objective(&u, kappa, m),
        None => T::infinity(),
    };
    let tol = lit::<T>(1e-11).max(T::epsilon() * lit(100.0));
    let found = golden_section(profile, lower - margin, edge + margin, tol, 500);

    // snap onto the feasibility edge when the search ran into it
    let snap = tol * lit(10.0) * edge.abs().max(T::one());
    let (kappa, u) = if edge - found.x <= snap {
        let u = match inner_input(data, edge) {
            Some(u) => u,
            None => {
                let u =
                    project_onto_halfspace(&vec![T::zero(); dim], &data.b, data.a + edge * sigma)
                        .unwrap_or_else(|| vec![T::zero(); dim]);
                let n = norm(&u);
                u.into_iter().map(|v| v / n).collect()
            }
        };
        (edge, u)
    } else {
        let u = inner_input(data, found.x).unwrap_or_else(|| vec![T::zero(); dim]);
        (found.x, u)
    };
    Ok(finish(
        data,
        m,
        u,
        kappa,
        !found.hit_edge && !found.exhausted,
    ))
}

fn finish<T: Scalar>(
    data: &ClfData<T>,
    m: T,
    u: Vec<T>,
    kappa: T,
    converged: bool,
) -> JointQpSolution<T> {
    let sigma = data.sigma_stg;
    let unorm = norm(&u);
    // κ = 1 means the CLF constraint does not bind
    let active_set = if unorm == T::zero() && kappa >= T::one() - T::epsilon() * lit(4.0) {
        ActiveSet::None
    } else if unorm >= T::one() - lit(1e-9) {
        ActiveSet::ClfAndBall
    } else {
        ActiveSet::ClfOnly
    };
    let (lambda1, lambda2) = match active_set {
        ActiveSet::None => (T::zero(), T::zero()),
        ActiveSet::ClfOnly => (m * (T::one() - kappa) / sigma, T::zero()),
        ActiveSet::ClfAndBall => {
            let l1 = m * (T::one() - kappa) / sigma;
            (l1, (l1 * norm(&data.b) / unorm - T::one()) / lit(2.0))
        }
    };
    JointQpSolution {
        objective: objective(&u, kappa, m),
        u: ControlVector(u),
        kappa,
        lambda1,
        lambda2,
        converged,
        active_set,
    }
}

/// Exhaustive grid search over the unit ball (`≤ 2` inputs) and κ grid
/// points in `[0, κ_max + 1]`.
///
/// For each grid `u` the best grid κ is picked exactly: the objective falls
/// monotonically in κ up to 1, so it is the feasible grid point closest to 1.
pub fn brute_force_grid<T: Scalar>(
    data: &ClfData<T>,
    m: T,
    grid_step: T,
) -> Result<JointQpSolution<T>> {
    let dim = data.input_dim();
    if dim > 2 {
        return Err(Error::Unsupported(format!(
            "grid search supports at most 2 inputs, got {dim}"
        )));
    }
    if !(grid_step > T::zero()) {
        return Err(Error::Domain("grid step must be positive".into()));
    }
    let sigma = data.sigma_stg;
    let b_norm = norm(&data.b);
    let kappa_top = if sigma > T::zero() {
        (b_norm - data.a) / sigma + T::one()
    } else {
        lit(2.0)
    };
    let k_last = (kappa_top / grid_step).ceil().to_i64().unwrap_or(0);
    let k_one = (T::one() / grid_step).round().to_i64().unwrap_or(0);
    let n_u = (T::one() / grid_step).floor().to_i64().unwrap_or(0);

    let mut best: Option<(T, Vec<T>, T)> = None;
    let mut consider = |u: Vec<T>| {
        if norm_sq(&u) > T::one() {
            return;
        }
        let rate = data.a + dot(&data.b, &u);
        let k_cap = if sigma > T::zero() {
            if rate > T::zero() {
                return;
            }
            (-rate / sigma / grid_step)
                .floor()
                .to_i64()
                .unwrap_or(i64::MAX)
        } else if rate > T::zero() {
            return;
        } else {
            i64::MAX
        };
        let k = k_one.min(k_cap).min(k_last);
        let kappa = T::from_i64(k).unwrap() * grid_step;
        let obj = objective(&u, kappa, m);
        if best.as_ref().is_none_or(|(o, _, _)| obj < *o) {
            best = Some((obj, u, kappa));
        }
    };
    let coord = |i: i64| T::from_i64(i).unwrap() * grid_step;
    match dim {
        0 => consider(Vec::new()),
        1 => (-n_u..=n_u).for_each(|i| consider(vec![coord(i)])),
        _ => {
            for i in -n_u..=n_u {
                for j in -n_u..=n_u {
                    consider(vec![coord(i), coord(j)]);
                }
            }
        }
    }
    let (_, u, kappa) = best.ok_or_else(|| Error::Infeasible("no feasible grid point".into()))?;
    let mut sol = finish(data, m, u, kappa, true);
    let ball_band = T::one() - grid_step * lit(2.0);
    sol.active_set = if sol.active_set == ActiveSet::None {
        ActiveSet::None
    } else if sol.u.norm() >= ball_band {
        ActiveSet::ClfAndBall
    } else {
        ActiveSet::ClfOnly
    };
    Ok(sol)
}
