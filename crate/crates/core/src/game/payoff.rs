//! Payoffs of the attacker-defender game.

use crate::dynamics::{normalize_set, ControlLaw};
use crate::error::{Error, Result};
use crate::graph::{degree_profile, Graph};
use crate::resistance::{grounded_inverse_diag, GroundedSystem};

/// `J₁(F, D) = ½ Σ_{i∈F} H⁻¹_ii (d_i + 1)` with `H = I + κ D_y`.
pub fn payoff_j1(g: &Graph, gain: f64, attack: &[usize], defense: &[usize]) -> Result<f64> {
    let (attack, defense) = checked_sets(g, gain, attack, defense)?;
    let deg = degree_profile(g).degrees;
    let mut hinv = vec![1.0; g.n()];
    for &d in &defense {
        hinv[d] = 1.0 / (1.0 + gain);
    }
    Ok(j1_with(&deg, &hinv, &attack))
}

pub(crate) fn j1_with(degrees: &[f64], hinv: &[f64], attack: &[usize]) -> f64 {
    0.5 * attack
        .iter()
        .map(|&i| hinv[i] * (degrees[i] + 1.0))
        .sum::<f64>()
}

/// `J₂(F, D) = f/2 + ½ Σ_{i∈F} [L̄⁻¹]_ii`.
pub fn payoff_j2(g: &Graph, gain: f64, attack: &[usize], defense: &[usize]) -> Result<f64> {
    let (attack, defense) = checked_sets(g, gain, attack, defense)?;
    if defense.is_empty() {
        return Err(Error::config("J2 needs a nonempty defense set"));
    }
    let diag = grounded_inverse_diag(&GroundedSystem::new(g, &defense, gain)?)?;
    Ok(j2_with(&diag, &attack))
}

pub(crate) fn j2_with(diag: &[f64], attack: &[usize]) -> f64 {
    0.5 * attack.len() as f64 + 0.5 * attack.iter().map(|&i| diag[i]).sum::<f64>()
}

pub fn payoff(
    law: ControlLaw,
    g: &Graph,
    gain: f64,
    attack: &[usize],
    defense: &[usize],
) -> Result<f64> {
    match law {
        ControlLaw::AbsVelocity => payoff_j1(g, gain, attack, defense),
        ControlLaw::RelVelocity => payoff_j2(g, gain, attack, defense),
    }
}

/// Law-1 game cell in split form: attacked nodes that are also defended
/// contribute `(d + 1) / (2κ + 2)`, the rest `(d + 1) / 2`.
pub fn abs_velocity_element(
    degrees: &[f64],
    gain: f64,
    attack: &[usize],
    defense: &[usize],
) -> f64 {
    let (mut shared_deg, mut shared) = (0.0, 0.0);
    let (mut exposed_deg, mut exposed) = (0.0, 0.0);
    for &i in attack {
        if defense.contains(&i) {
            shared_deg += degrees[i];
            shared += 1.0;
        } else {
            exposed_deg += degrees[i];
            exposed += 1.0;
        }
    }
    shared_deg / (2.0 * gain + 2.0) + shared / (2.0 * gain + 2.0) + 0.5 * (exposed_deg + exposed)
}

fn checked_sets(
    g: &Graph,
    gain: f64,
    attack: &[usize],
    defense: &[usize],
) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut problems = Vec::new();
    if !(gain.is_finite() && gain > 0.0) {
        problems.push(format!("gain must be positive, got {gain}"));
    }
    let a = normalize_set("attack", attack, g.n(), &mut problems);
    let d = normalize_set("defense", defense, g.n(), &mut problems);
    if problems.is_empty() {
        Ok((a, d))
    } else {
        Err(Error::Config(problems))
    }
}
