//! The attacker-defender game: payoffs, the subset-indexed payoff matrix,
//! equilibrium solvers and centrality-based equilibrium predictions.

mod matrix;
mod payoff;
mod predict;
mod solve;
mod subsets;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::dynamics::ControlLaw;

pub use matrix::{build_matrix, GameMatrix};
pub use payoff::{abs_velocity_element, payoff, payoff_j1, payoff_j2};
pub use predict::{nash_threshold, predict_equilibrium};
pub use solve::{find_nash, solve, stackelberg_defender_leader, Saddle};
pub use subsets::{binomial, SubsetIndex, DEFAULT_ENUM_CAP};
pub use sweep::{
    best_response, refine_switch, response_sweep, sweep_gain, Sweep, SweepRow, Switch,
};

/// Relative tolerance for payoff ties in the solvers.
pub const TIE_TOL: f64 = 1e-12;

pub(crate) fn tol(x: f64) -> f64 {
    TIE_TOL * x.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquilibriumKind {
    Nash,
    StackelbergDefenderLeader,
    None,
}

/// Which closed-form characterization produced a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Law 1, single node, gain at or below the degree-gap threshold: both
    /// players pick the max-degree node.
    MaxDegreeSaddle,
    /// Law 1, single node, gain above the threshold: defender holds the
    /// max-degree node, attacker takes the next largest degree.
    MaxDegreeLeader,
    /// Law 1, `f` nodes, large gain and `n >= 2f`: defender holds the `f`
    /// largest degrees, attacker the next `f`.
    TopDegreeLeader,
    /// Law 2, single node, unit-weight tree: defender at the graph center.
    GraphCenterLeader,
    /// Law 2, single node: defender at the effective center.
    EffectiveCenterLeader,
    /// Law 2, `f` nodes: defender minimizes the largest sum of `f`
    /// resistances to its virtual ground.
    GroundedMinMaxLeader,
    NoClosedForm,
}

/// Closed-form prediction attached to a solved game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub theorem: Theorem,
    pub kind: EquilibriumKind,
    pub defender_set: Vec<usize>,
    pub attacker_set: Vec<usize>,
    pub defender_ties: Vec<Vec<usize>>,
    pub value: Option<f64>,
    /// Value agrees within `1e-9` and the solved defender set is one of the
    /// predicted ties.
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub kind: EquilibriumKind,
    pub law: ControlLaw,
    pub gain: f64,
    pub budget: usize,
    pub defender_set: Vec<usize>,
    pub attacker_set: Vec<usize>,
    pub value: Option<f64>,
    /// Every optimal defender choice (rows attaining the value).
    pub defender_ties: Vec<Vec<usize>>,
    /// Every attacker best response to `defender_set`.
    pub attacker_ties: Vec<Vec<usize>>,
    /// Set on closed-form predictions.
    pub theorem: Option<Theorem>,
    /// Degree-gap threshold `(Δ₁ - Δ₂) / (Δ₂ + 1)` for single-node law-1 games.
    pub threshold: Option<f64>,
    /// Whether the gain lies above the threshold. The attacker's best
    /// response depends on the gain only through this flag.
    pub above_threshold: Option<bool>,
    pub predicted_witness: Option<Witness>,
}

impl EquilibriumReport {
    pub(crate) fn empty(kind: EquilibriumKind, law: ControlLaw, gain: f64, budget: usize) -> Self {
        EquilibriumReport {
            kind,
            law,
            gain,
            budget,
            defender_set: Vec::new(),
            attacker_set: Vec::new(),
            value: None,
            defender_ties: Vec::new(),
            attacker_ties: Vec::new(),
            theorem: None,
            threshold: None,
            above_threshold: None,
            predicted_witness: None,
        }
    }
}
