//! Seeded property sweeps over random states of the planar reference system.

use std::fmt;

use clap::ValueEnum;
use unified_clf::clf_core::{kappa_interval, lie_data, ExpCoupledPlanar, QuadraticClf};
use unified_clf::formulas::{
    joint_objective, kappa_lin_sontag, lin_sontag, min_cost_weight, opt_region, opt_universal, pmn,
    sontag, unified, Branch, ControlLaw, FeedbackLaw,
};
use unified_clf::qp_oracle::{solve_joint, solve_pmn, ActiveSet};
use unified_clf::sampling::BoxSampler;
use unified_clf::sim_lab::origin_continuity_probe;
use unified_clf::{ClfData64, Result as CoreResult};

const M: f64 = 10.0;
const XIS: [f64; 4] = [0.0, 1.0, 9.0, 99.0];
const RADII: [f64; 4] = [1.0, 0.1, 0.01, 0.001];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Invariants,
    Margin,
    Continuity,
    All,
}

impl Suite {
    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Oracle,
                Suite::Invariants,
                Suite::Margin,
                Suite::Continuity,
            ],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(
            self.to_possible_value()
                .expect("no skipped variants")
                .get_name(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub suite: Suite,
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
    pub vacuous: bool,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.check.len()).max().unwrap_or(0);
        let mut out = String::new();
        for r in &self.rows {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{:<11} {:<width$}  {verdict}  {}\n",
                r.suite.to_string(),
                r.check,
                r.detail
            ));
        }
        out
    }
}

/// Compatible states in `[−2, 2]²` with `b ≠ 0`; `m`, when given, must meet
/// the per-state lower bound.
fn states(seed: u64, count: usize, m: Option<f64>) -> Vec<ClfData64> {
    let mut sampler = BoxSampler::new(seed, 2, 2.0);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let data = lie_data(&ExpCoupledPlanar, &QuadraticClf::new(2), &sampler.sample())
            .expect("planar system and quadratic CLF agree in dimension");
        if data.b_is_zero() || data.b_norm() < data.a {
            continue;
        }
        if m.is_some_and(|m| m < min_cost_weight(&data)) {
            continue;
        }
        out.push(data);
    }
    out
}

fn diff(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt()
}

struct Rows {
    suite: Suite,
    rows: Vec<CheckRow>,
}

impl Rows {
    fn push(&mut self, check: &'static str, passed: bool, detail: String) {
        self.rows.push(CheckRow {
            suite: self.suite,
            check,
            passed,
            detail,
        });
    }
}

fn oracle(rows: &mut Rows, seed: u64, samples: usize) -> CoreResult<()> {
    let (mut du, mut dk, mut kkt, mut mismatched, mut pmn_gap) =
        (0.0f64, 0.0f64, 0.0f64, 0, 0.0f64);
    for d in states(seed, samples, Some(M)) {
        let closed = opt_universal(&d, M)?;
        let qp = solve_joint(&d, M)?;
        du = du.max(diff(&closed.u, &qp.u));
        dk = dk.max((closed.kappa.unwrap_or(1.0) - qp.kappa).abs());
        kkt = kkt.max(qp.kkt_residuals(&d, M).max());
        let agrees = matches!(
            (opt_region(&d, M), qp.active_set),
            (Branch::Interior, ActiveSet::ClfOnly)
                | (Branch::Boundary, ActiveSet::ClfAndBall)
                | (Branch::ZeroB, ActiveSet::None)
        );
        mismatched += usize::from(!agrees);
        pmn_gap = pmn_gap.max(diff(&sontag(&d).u, &solve_pmn(&d, d.sigma_stg)?));
    }
    rows.push(
        "closed form vs joint QP",
        du <= 1e-4 && dk <= 1e-4,
        format!("max |du| {du:.2e}, max |dk| {dk:.2e}"),
    );
    rows.push("KKT residuals", kkt <= 1e-5, format!("max {kkt:.2e}"));
    rows.push(
        "region vs active set",
        mismatched == 0,
        format!("{mismatched} mismatches"),
    );
    rows.push(
        "sontag vs halfspace projection",
        pmn_gap <= 1e-12,
        format!("max {pmn_gap:.2e}"),
    );
    Ok(())
}

fn invariants(rows: &mut Rows, seed: u64, samples: usize) -> CoreResult<()> {
    let (mut norm, mut tight, mut outside, mut ls_gap, mut excess) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut sontag_exact = true;
    for d in states(seed, samples, Some(M)) {
        let ls = lin_sontag(&d);
        let k_ls = kappa_lin_sontag(&d)?;
        let opt = opt_universal(&d, M)?;
        let k_opt = opt.kappa.unwrap_or(1.0);
        norm = norm.max(ls.u.norm()).max(opt.u.norm());
        for (u, k) in [(&ls.u, k_ls), (&opt.u, k_opt)] {
            tight = tight.max((d.clf_rate(u) + k * d.sigma_stg).abs());
        }
        let interval = kappa_interval(&d);
        outside = outside.max(interval.lo - k_opt).max(k_opt - interval.hi);
        ls_gap = ls_gap.max(diff(&ls.u, &unified(&d, k_ls)?.u));
        sontag_exact &= sontag(&d).u == pmn(&d, d.sigma_stg).u;
        excess = excess.max(joint_objective(&opt.u, k_opt, M) - joint_objective(&ls.u, k_ls, M));
    }
    rows.push(
        "input norm bound",
        norm <= 1.0 + 1e-9,
        format!("max |u| {norm:.12}"),
    );
    rows.push(
        "tightened CLF identity",
        tight <= 1e-9,
        format!("max |a + b.u + k sigma| {tight:.2e}"),
    );
    rows.push(
        "kappa in admissible interval",
        outside <= 1e-9,
        format!("max excursion {outside:.2e}"),
    );
    rows.push(
        "lin_sontag == unified(kappa_ls)",
        ls_gap <= 1e-12,
        format!("max {ls_gap:.2e}"),
    );
    rows.push(
        "sontag == pmn(sigma_stg)",
        sontag_exact,
        format!("exact: {sontag_exact}"),
    );
    rows.push(
        "optimal cost <= lin_sontag cost",
        excess <= 0.0,
        format!("max J_opt - J_ls {excess:.2e}"),
    );
    Ok(())
}

fn margin(rows: &mut Rows, seed: u64, samples: usize) -> CoreResult<()> {
    let mut worst = f64::NEG_INFINITY;
    let mut sampler = BoxSampler::new(seed ^ 0x9e37_79b9, 1, 1.0);
    let mut tested = 0;
    for d in states(seed, samples, Some(M)) {
        let interval = kappa_interval(&d);
        let t = 0.01 + 0.49 * (sampler.sample::<f64>()[0] + 1.0);
        let candidates = [
            ControlLaw::LinSontag.evaluate(&d)?,
            ControlLaw::OptBased { m: M }.evaluate(&d)?,
            unified(&d, interval.lo + t * (interval.hi - interval.lo))?,
        ];
        for out in candidates {
            let kappa = out.kappa.unwrap_or(1.0);
            if !interval.contains_strictly(kappa) {
                continue;
            }
            tested += 1;
            for xi in XIS {
                worst = worst.max(d.clf_rate(&out.u.scaled(1.0 + xi)));
            }
        }
    }
    rows.push(
        "a + (1+xi) b.u < 0",
        tested == 0 || worst < 0.0,
        format!("{tested} laws x states, xi in {XIS:?}, max {worst:.2e}"),
    );
    Ok(())
}

fn continuity(rows: &mut Rows, seed: u64, samples: usize) -> CoreResult<()> {
    for (check, law) in [
        ("lin_sontag shrinks toward origin", ControlLaw::LinSontag),
        (
            "opt_based shrinks toward origin",
            ControlLaw::OptBased { m: M },
        ),
    ] {
        let probe = origin_continuity_probe(
            &law,
            &ExpCoupledPlanar,
            &QuadraticClf::new(2),
            &RADII,
            samples,
            seed,
        )?;
        let norms: Vec<f64> = probe.iter().map(|&(_, n)| n).collect();
        let ok = norms.windows(2).all(|w| w[1] <= w[0]) && norms.last().is_some_and(|&n| n <= 1e-2);
        let shown: Vec<String> = norms.iter().map(|n| format!("{n:.2e}")).collect();
        rows.push(
            check,
            ok,
            format!("max |u| at radii {RADII:?}: [{}]", shown.join(", ")),
        );
    }
    Ok(())
}

/// Runs the requested suite. `samples = 0` yields a vacuous pass.
pub fn run(suite: Suite, seed: u64, samples: usize) -> CoreResult<VerifyReport> {
    let mut all = Vec::new();
    for s in suite.expand() {
        let mut rows = Rows {
            suite: s,
            rows: Vec::new(),
        };
        if samples == 0 {
            rows.push("no samples requested", true, "vacuous".into());
        } else {
            match s {
                Suite::Oracle => oracle(&mut rows, seed, samples)?,
                Suite::Invariants => invariants(&mut rows, seed, samples)?,
                Suite::Margin => margin(&mut rows, seed, samples)?,
                Suite::Continuity => continuity(&mut rows, seed, samples)?,
                Suite::All => unreachable!("expanded above"),
            }
        }
        all.extend(rows.rows);
    }
    Ok(VerifyReport {
        rows: all,
        vacuous: samples == 0,
    })
}
