use crate::clf_core::ControlVector;

/// Which piece of a piecewise formula produced the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Optimization-based law, only the tightened CLF constraint active (S₁).
    Interior,
    /// Optimization-based law, CLF constraint and unit ball both active (S₂).
    Boundary,
    /// `b = 0` (S₄ for the optimization-based law, second branch elsewhere).
    ZeroB,
    /// Unified κ-scaled law with `b ≠ 0`; also Lin-Sontag.
    UnifiedNonzero,
    PmnActive,
    PmnZero,
    SontagNonzero,
    SontagZero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControllerOutput<T> {
    pub u: ControlVector<T>,
    /// Effective scaling term; `None` for laws without one.
    pub kappa: Option<T>,
    pub branch: Branch,
    /// False when the state is incompatible with the unit input bound.
    pub feasible: bool,
    /// The strategy's raw κ fell outside `K(x)` and was clamped.
    pub kappa_clamped: bool,
}

impl<T> ControllerOutput<T> {
    pub(crate) fn new(
        u: ControlVector<T>,
        kappa: Option<T>,
        branch: Branch,
        feasible: bool,
    ) -> Self {
        Self {
            u,
            kappa,
            branch,
            feasible,
            kappa_clamped: false,
        }
    }
}
