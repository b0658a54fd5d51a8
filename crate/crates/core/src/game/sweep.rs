//! Gain sweeps and attacker best-response switch points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::build_matrix;
use super::payoff::payoff;
use super::solve::stackelberg_defender_leader;
use super::subsets::SubsetIndex;
use super::tol;
use crate::dynamics::ControlLaw;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub kappa: f64,
    pub defender: Vec<usize>,
    pub attacker: Vec<usize>,
    pub value: f64,
}

/// The attacker's response changed between two consecutive grid gains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Switch {
    pub lo: f64,
    pub hi: f64,
    pub from: Vec<usize>,
    pub to: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub switches: Vec<Switch>,
}

impl Sweep {
    fn from_rows(rows: Vec<SweepRow>) -> Self {
        let switches = rows
            .windows(2)
            .filter(|w| w[0].attacker != w[1].attacker)
            .map(|w| Switch {
                lo: w[0].kappa,
                hi: w[1].kappa,
                from: w[0].attacker.clone(),
                to: w[1].attacker.clone(),
            })
            .collect();
        Sweep { rows, switches }
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    let mut problems = Vec::new();
    if grid.is_empty() {
        problems.push("gain grid is empty".to_string());
    }
    for &k in grid {
        if !(k.is_finite() && k > 0.0) {
            problems.push(format!("gain must be positive, got {k}"));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Config(problems))
    }
}

/// Defender-led Stackelberg solution at every gain of the grid.
pub fn sweep_gain(g: &Graph, f: usize, law: ControlLaw, grid: &[f64], cap: usize) -> Result<Sweep> {
    check_grid(grid)?;
    let rows = grid
        .par_iter()
        .map(|&kappa| {
            let m = build_matrix(g, kappa, f, law, cap)?;
            let r = stackelberg_defender_leader(&m);
            Ok(SweepRow {
                kappa,
                defender: r.defender_set,
                attacker: r.attacker_set,
                value: r.value.expect("stackelberg always has a value"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep::from_rows(rows))
}

/// Attacker best response to a fixed defense: `(attack set, payoff)`,
/// lowest rank among ties.
pub fn best_response(
    g: &Graph,
    law: ControlLaw,
    gain: f64,
    defense: &[usize],
    f: usize,
    cap: usize,
) -> Result<(Vec<usize>, f64)> {
    let index = SubsetIndex::new(g.n(), f, cap)?;
    let scored = index
        .iter()
        .map(|a| payoff(law, g, gain, &a, defense).map(|v| (a, v)))
        .collect::<Result<Vec<_>>>()?;
    let best = scored.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(scored
        .into_iter()
        .find(|s| s.1 >= best - tol(best))
        .expect("nonempty subset family"))
}

/// Best responses to a fixed defense across the grid.
pub fn response_sweep(
    g: &Graph,
    f: usize,
    law: ControlLaw,
    defense: &[usize],
    grid: &[f64],
    cap: usize,
) -> Result<Sweep> {
    check_grid(grid)?;
    let rows = grid
        .par_iter()
        .map(|&kappa| {
            let (attacker, value) = best_response(g, law, kappa, defense, f, cap)?;
            Ok(SweepRow {
                kappa,
                defender: defense.to_vec(),
                attacker,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep::from_rows(rows))
}

/// Gain in `[lo, hi]` at which the payoffs of the best responses at `lo` and
/// at `hi` coincide, by bisection on their difference.
pub fn refine_switch(
    g: &Graph,
    f: usize,
    law: ControlLaw,
    defense: &[usize],
    lo: f64,
    hi: f64,
    cap: usize,
) -> Result<f64> {
    let (from, _) = best_response(g, law, lo, defense, f, cap)?;
    let (to, _) = best_response(g, law, hi, defense, f, cap)?;
    let gap = |k: f64| -> Result<f64> {
        Ok(payoff(law, g, k, &from, defense)? - payoff(law, g, k, &to, defense)?)
    };
    let (mut a, mut b) = (lo, hi);
    let sign_a = gap(a)? >= 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if (gap(mid)? >= 0.0) == sign_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::DEFAULT_ENUM_CAP;
    use crate::generators;

    // hub 0 with degree 3, node 1 with degree 2
    fn two_gap_graph() -> Graph {
        Graph::unweighted(5, &[(0, 1), (0, 2), (0, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn response_switches_from_hub_to_runner_up() {
        let g = two_gap_graph();
        let s = response_sweep(
            &g,
            1,
            ControlLaw::AbsVelocity,
            &[0],
            &[0.1, 1.0],
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert_eq!(s.rows[0].attacker, vec![0]);
        assert_eq!(s.rows[1].attacker, vec![1]);
        assert_eq!(s.switches.len(), 1);

        let k = refine_switch(
            &g,
            1,
            ControlLaw::AbsVelocity,
            &[0],
            0.1,
            1.0,
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert!((k - 1.0 / 3.0).abs() < 1e-12);
        let at = 1.0 / 3.0;
        let hub = payoff(ControlLaw::AbsVelocity, &g, at, &[0], &[0]).unwrap();
        let runner = payoff(ControlLaw::AbsVelocity, &g, at, &[1], &[0]).unwrap();
        assert!((hub - runner).abs() < 1e-12);
        assert!((hub - 1.5).abs() < 1e-12);
    }

    #[test]
    fn path_sweep_values() {
        let g = generators::path(3);
        let s = sweep_gain(
            &g,
            1,
            ControlLaw::AbsVelocity,
            &[0.25, 0.5, 0.75],
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert_eq!(
            s.rows
                .iter()
                .map(|r| r.defender.clone())
                .collect::<Vec<_>>(),
            vec![vec![1]; 3]
        );
        assert!((s.rows[0].value - 3.0 / 2.5).abs() < 1e-15);
        assert!((s.rows[2].value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_grid() {
        let g = generators::path(3);
        assert!(sweep_gain(&g, 1, ControlLaw::AbsVelocity, &[], DEFAULT_ENUM_CAP).is_err());
        assert!(sweep_gain(
            &g,
            1,
            ControlLaw::AbsVelocity,
            &[1.0, -2.0],
            DEFAULT_ENUM_CAP
        )
        .is_err());
    }
}
