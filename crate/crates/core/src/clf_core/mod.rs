//! Systems, Lyapunov candidates and the per-state Lie-derivative data that
//! every control formula consumes.

mod catalogue;
mod diagnostics;
mod lie;
mod lyapunov;
mod system;
mod vectors;

pub use catalogue::{clf_by_id, system_by_id, ExpCoupledPlanar, SingleIntegrator};
pub use diagnostics::{
    gradient_fd_error, radial_growth_defects, validate_clf, validate_system, ClfDefect,
};
pub use lie::{
    check_compatibility, kappa_interval, lie_data, sigma_sontag, ClfData, KappaInterval,
};
pub use lyapunov::{Clf, QuadraticClf};
pub use system::ControlAffineSystem;
pub use vectors::{ControlVector, InputMatrix, StateVector};
