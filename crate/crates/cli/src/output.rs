//! CSV trajectories and the JSON run summary.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use unified_clf::Trajectory64;

/// Rows whose input norm exceeds the bound by more than this count as violations.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControllerSummary {
    pub name: String,
    pub law: String,
    pub xi: f64,
    pub samples: usize,
    pub completed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_reason: Option<String>,
    pub max_input_norm: f64,
    pub final_state_norm: Option<f64>,
    pub total_cost: f64,
    pub clf_violations: usize,
    pub bound_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub system_id: String,
    pub t_end: f64,
    pub h: f64,
    pub m: f64,
    pub gamma: f64,
    pub controllers: Vec<ControllerSummary>,
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `t, x1..xn, u1..um, kappa, V, cost_rate, cost_cum`, one row per
/// sample. Inputs are scaled by `gamma` to the physical input; an absent κ
/// is an empty field.
pub fn write_csv(
    w: &mut impl Write,
    traj: &Trajectory64,
    state_dim: usize,
    input_dim: usize,
    gamma: f64,
) -> io::Result<()> {
    let mut header = vec!["t".to_string()];
    header.extend((1..=state_dim).map(|i| format!("x{i}")));
    header.extend((1..=input_dim).map(|i| format!("u{i}")));
    header.extend(["kappa", "V", "cost_rate", "cost_cum"].map(String::from));
    writeln!(w, "{}", header.join(","))?;

    let mut row = Vec::with_capacity(header.len());
    for s in &traj.samples {
        row.clear();
        row.push(num(s.t));
        row.extend(s.x.iter().map(|&v| num(v)));
        row.extend(s.u.iter().map(|&v| num(gamma * v)));
        row.push(s.kappa.map(num).unwrap_or_default());
        row.push(num(s.v));
        row.push(num(s.cost_rate));
        row.push(num(s.cost_cum));
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn write_csv_file(
    path: &Path,
    traj: &Trajectory64,
    state_dim: usize,
    input_dim: usize,
    gamma: f64,
) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_csv(&mut w, traj, state_dim, input_dim, gamma)?;
    w.flush()
}

/// Samples whose input leaves the unit ball (the ball of radius `gamma`
/// once scaled to the physical input).
pub fn bound_violations(traj: &Trajectory64) -> usize {
    traj.samples
        .iter()
        .filter(|s| s.u.norm() > 1.0 + BOUND_SLACK)
        .count()
}

pub fn write_summary(path: &Path, summary: &RunSummary) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(summary).map_err(io::Error::other)?;
    text.push('\n');
    std::fs::write(path, text)
}
