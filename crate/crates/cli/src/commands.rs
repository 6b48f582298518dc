use std::fs;
use std::path::Path;
use std::time::Instant;

use log::{debug, info, warn};
use unified_clf::sim_lab::{check_clf_decrease, simulate, SimConfig, TrajectoryStatus};
use unified_clf::{Error, StateVector64, Trajectory64};

use crate::output::{
    bound_violations, write_csv_file, write_summary, ControllerSummary, RunSummary,
};
use crate::scenario::{ResolvedController, Scenario, ScenarioConfig};
use crate::verify::{self, Suite, VerifyReport};
use crate::CliError;

fn run_one(scenario: &Scenario, ctrl: &ResolvedController) -> Result<Trajectory64, CliError> {
    let cfg = &scenario.config;
    let sim = SimConfig::new(StateVector64::from(cfg.x0.clone()), cfg.t_end, cfg.h)
        .with_cost_weight(cfg.m)
        .with_margin(ctrl.xi);
    let start = Instant::now();
    let traj = simulate(&scenario.system, &scenario.clf, &ctrl.law, &sim).map_err(|e| match e {
        Error::Divergence { t } => CliError::Divergence {
            controller: ctrl.name.clone(),
            t,
        },
        other => CliError::Core(other),
    })?;
    debug!(
        "{}: {} samples in {:.2?}",
        ctrl.name,
        traj.samples.len(),
        start.elapsed()
    );
    Ok(traj)
}

/// Simulates every controller of the scenario concurrently, then writes one
/// CSV per controller and `summary.json` into `out_dir`.
pub fn simulate_scenario(scenario_path: &Path, out_dir: &Path) -> Result<RunSummary, CliError> {
    let scenario = ScenarioConfig::load(scenario_path)?.resolve()?;
    info!(
        "simulating {} controllers on `{}` for {} s",
        scenario.controllers.len(),
        scenario.config.system_id,
        scenario.config.t_end
    );

    let results: Vec<Result<Trajectory64, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = scenario
            .controllers
            .iter()
            .map(|ctrl| {
                let scenario = &scenario;
                s.spawn(move || run_one(scenario, ctrl))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    });
    let trajectories = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    fs::create_dir_all(out_dir).map_err(|source| CliError::Output {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let n = scenario.system.inner.state_dim();
    let m = scenario.system.inner.input_dim();
    let gamma = scenario.config.gamma;
    let mut summaries = Vec::with_capacity(trajectories.len());
    for (ctrl, traj) in scenario.controllers.iter().zip(&trajectories) {
        let path = out_dir.join(format!("{}.csv", ctrl.name));
        write_csv_file(&path, traj, n, m, gamma)
            .map_err(|source| CliError::Output { path, source })?;
        let report = check_clf_decrease(traj, &scenario.system, &scenario.clf)?;
        let truncated_reason = match &traj.status {
            TrajectoryStatus::Complete => None,
            TrajectoryStatus::Truncated { t, reason } => {
                warn!("{} stopped at t = {t}: {reason}", ctrl.name);
                Some(format!("t = {t}: {reason}"))
            }
        };
        summaries.push(ControllerSummary {
            name: ctrl.name.clone(),
            law: ctrl.law_label(),
            xi: ctrl.xi,
            samples: traj.samples.len(),
            completed: truncated_reason.is_none(),
            truncated_reason,
            max_input_norm: gamma * traj.max_input_norm(),
            final_state_norm: traj.final_state_norm(),
            total_cost: traj.total_cost(),
            clf_violations: report.violations.len(),
            bound_violations: bound_violations(traj),
        });
        info!(
            "wrote {}",
            out_dir.join(format!("{}.csv", ctrl.name)).display()
        );
    }

    let cfg = &scenario.config;
    let summary = RunSummary {
        system_id: cfg.system_id.clone(),
        t_end: cfg.t_end,
        h: cfg.h,
        m: cfg.m,
        gamma,
        controllers: summaries,
    };
    let path = out_dir.join("summary.json");
    write_summary(&path, &summary).map_err(|source| CliError::Output { path, source })?;
    Ok(summary)
}

/// Runs a verification suite and prints its table to stdout.
pub fn verify_suite(suite: Suite, seed: u64, samples: usize) -> Result<VerifyReport, CliError> {
    if samples == 0 {
        warn!("no samples requested; every check passes vacuously");
    }
    let report = verify::run(suite, seed, samples)?;
    print!("{}", report.table());
    if report.all_passed() {
        Ok(report)
    } else {
        Err(CliError::VerifyFailed)
    }
}
