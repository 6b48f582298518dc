//! Scenario files: which system to simulate, from where, and with which
//! controllers.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use unified_clf::clf_core::{clf_by_id, system_by_id, Clf, ControlAffineSystem, InputMatrix};
use unified_clf::formulas::{ControlLaw, FeedbackLaw, ScalingStrategy};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawKind {
    Sontag,
    LinSontag,
    Unified,
    OptBased,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategySpec {
    LinSontag,
    KappaOne,
    KappaOneAbs,
    KappaTwo,
    KappaThree,
    Constant(f64),
    OptBased(f64),
}

impl StrategySpec {
    fn to_strategy(self) -> ScalingStrategy<f64> {
        match self {
            StrategySpec::LinSontag => ScalingStrategy::LinSontag,
            StrategySpec::KappaOne => ScalingStrategy::KappaOne,
            StrategySpec::KappaOneAbs => ScalingStrategy::KappaOneAbs,
            StrategySpec::KappaTwo => ScalingStrategy::KappaTwo,
            StrategySpec::KappaThree => ScalingStrategy::KappaThree,
            StrategySpec::Constant(c) => ScalingStrategy::Constant(c),
            StrategySpec::OptBased(m) => ScalingStrategy::OptBased(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerSpec {
    /// Output file stem; derived from the law when absent.
    #[serde(default)]
    pub name: Option<String>,
    pub law: LawKind,
    #[serde(default)]
    pub strategy: Option<StrategySpec>,
    /// Margin scaling: the law's output is multiplied by `1 + xi`.
    #[serde(default)]
    pub xi: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub system_id: String,
    #[serde(default = "default_clf")]
    pub clf_id: String,
    pub x0: Vec<f64>,
    pub t_end: f64,
    pub h: f64,
    /// Cost weight on `(1 − κ)²`, also the weight of `opt_based` laws.
    pub m: f64,
    /// Input bound `‖u‖ ≤ gamma`.
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    pub controllers: Vec<ControllerSpec>,
}

fn default_clf() -> String {
    "quadratic".into()
}

fn default_gamma() -> f64 {
    1.0
}

/// A controller ready to simulate.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedController {
    pub name: String,
    pub law: ControlLaw<f64>,
    pub xi: f64,
}

impl ResolvedController {
    pub fn law_label(&self) -> String {
        self.law.label()
    }
}

/// Scales the input map by `gamma`, so the laws' unit-ball input becomes
/// a ball of radius `gamma` on the original system.
pub struct ScaledInput {
    pub inner: Box<dyn ControlAffineSystem<f64>>,
    pub gamma: f64,
}

impl ControlAffineSystem<f64> for ScaledInput {
    fn state_dim(&self) -> usize {
        self.inner.state_dim()
    }
    fn input_dim(&self) -> usize {
        self.inner.input_dim()
    }
    fn drift(&self, x: &[f64]) -> Vec<f64> {
        self.inner.drift(x)
    }
    fn input_map(&self, x: &[f64]) -> InputMatrix<f64> {
        let g = self.inner.input_map(x);
        let data = (0..g.rows())
            .flat_map(|r| (0..g.cols()).map(move |c| (r, c)))
            .map(|(r, c)| self.gamma * g.get(r, c))
            .collect();
        InputMatrix::from_row_major(g.rows(), g.cols(), data)
    }
}

/// A validated scenario.
pub struct Scenario {
    pub config: ScenarioConfig,
    pub system: ScaledInput,
    pub clf: Box<dyn Clf<f64>>,
    pub controllers: Vec<ResolvedController>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid scenario: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn resolve(self) -> Result<Scenario, CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        let system =
            system_by_id::<f64>(&self.system_id).map_err(|e| CliError::Config(e.to_string()))?;
        let n = system.state_dim();
        let clf = clf_by_id::<f64>(&self.clf_id, n).map_err(|e| CliError::Config(e.to_string()))?;
        if self.x0.len() != n {
            return bad(format!(
                "x0 has {} entries, system `{}` has {n} states",
                self.x0.len(),
                self.system_id
            ));
        }
        if self.x0.iter().any(|v| !v.is_finite()) {
            return bad("x0 must be finite".into());
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad("t_end must be positive".into());
        }
        if !(self.h > 0.0 && self.h <= self.t_end) {
            return bad("h must be positive and at most t_end".into());
        }
        if !(self.m > 0.0 && self.m.is_finite()) {
            return bad("m must be positive".into());
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return bad("gamma must be positive".into());
        }
        if self.controllers.is_empty() {
            return bad("scenario lists no controllers".into());
        }

        let mut names = HashSet::new();
        let mut controllers = Vec::with_capacity(self.controllers.len());
        for spec in &self.controllers {
            let law = match (spec.law, spec.strategy) {
                (LawKind::Unified, Some(s)) => ControlLaw::Unified(s.to_strategy()),
                (LawKind::Unified, None) => return bad("unified law needs a strategy".into()),
                (_, Some(_)) => {
                    return bad(format!(
                        "strategy only applies to unified laws, not {:?}",
                        spec.law
                    ))
                }
                (LawKind::Sontag, None) => ControlLaw::Sontag,
                (LawKind::LinSontag, None) => ControlLaw::LinSontag,
                (LawKind::OptBased, None) => ControlLaw::OptBased { m: self.m },
            };
            if let Some(StrategySpec::Constant(c) | StrategySpec::OptBased(c)) = spec.strategy {
                if !c.is_finite() || c < 0.0 {
                    return bad(format!(
                        "strategy parameter must be finite and nonnegative, got {c}"
                    ));
                }
            }
            if !(spec.xi >= -1.0 && spec.xi.is_finite()) {
                return bad(format!("xi must be at least -1, got {}", spec.xi));
            }
            let name = spec.name.clone().unwrap_or_else(|| default_name(spec));
            if name.is_empty()
                || !name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
            {
                return bad(format!(
                    "controller name `{name}` must be nonempty [A-Za-z0-9_-]"
                ));
            }
            if !names.insert(name.clone()) {
                return bad(format!("duplicate controller name `{name}`"));
            }
            controllers.push(ResolvedController {
                name,
                law,
                xi: spec.xi,
            });
        }

        let gamma = self.gamma;
        Ok(Scenario {
            config: self,
            system: ScaledInput {
                inner: system,
                gamma,
            },
            clf,
            controllers,
        })
    }
}

fn default_name(spec: &ControllerSpec) -> String {
    let base = match (spec.law, spec.strategy) {
        (LawKind::Sontag, _) => "sontag".to_string(),
        (LawKind::LinSontag, _) => "lin_sontag".to_string(),
        (LawKind::OptBased, _) => "opt_based".to_string(),
        (LawKind::Unified, Some(StrategySpec::Constant(_))) => "unified_constant".to_string(),
        (LawKind::Unified, Some(StrategySpec::OptBased(_))) => "unified_opt_based".to_string(),
        (LawKind::Unified, Some(s)) => format!("unified_{}", s.to_strategy().label()),
        (LawKind::Unified, None) => "unified".to_string(),
    };
    if spec.xi == 0.0 {
        base
    } else {
        format!("{base}_xi{}", spec.xi)
            .replace('.', "p")
            .replace('-', "m")
    }
}
