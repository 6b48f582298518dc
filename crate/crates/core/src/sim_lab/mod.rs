//! Closed-loop simulation, margin wrappers and numerical property probes.

mod integrate;
mod probes;
mod wrappers;

pub use integrate::{
    control_at, simulate, Sample, SimConfig, Trajectory, TrajectoryStatus, ORIGIN_RADIUS,
};
pub use probes::{
    check_clf_decrease, origin_continuity_probe, smoothness_probe, DecreaseReport, SlopeProbe,
    Violation, DECREASE_EXEMPT_RADIUS, RATE_SLACK,
};
pub use wrappers::{scaled_controller, SaturatedLaw, ScaledLaw};
