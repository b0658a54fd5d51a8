use serde::{Deserialize, Serialize};

use super::matrix::{build_matrix, GameMatrix};
use super::predict::predict_equilibrium;
use super::{tol, EquilibriumKind, EquilibriumReport, Theorem, Witness};
use crate::dynamics::ControlLaw;
use crate::error::Result;
use crate::graph::Graph;

/// A pure saddle point: the maximum of its row and the minimum of its column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Saddle {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

fn row_maxima(m: &GameMatrix) -> Vec<f64> {
    m.values.row_iter().map(|r| r.max()).collect()
}

fn col_minima(m: &GameMatrix) -> Vec<f64> {
    m.values.column_iter().map(|c| c.min()).collect()
}

/// Lexicographically smallest `(row, col)` saddle point, if any.
pub fn find_nash(m: &GameMatrix) -> Option<Saddle> {
    let rmax = row_maxima(m);
    let cmin = col_minima(m);
    for row in 0..m.size() {
        for col in 0..m.size() {
            let v = m.get(row, col);
            if v >= rmax[row] - tol(v) && v <= cmin[col] + tol(v) {
                return Some(Saddle { row, col, value: v });
            }
        }
    }
    None
}

/// Defender commits to the row with the smallest worst case; the attacker
/// best-responds within it. Ties go to the lowest rank.
pub fn stackelberg_defender_leader(m: &GameMatrix) -> EquilibriumReport {
    let rmax = row_maxima(m);
    let best = rmax.iter().copied().fold(f64::INFINITY, f64::min);
    let rows: Vec<usize> = (0..m.size())
        .filter(|&r| rmax[r] <= best + tol(best))
        .collect();
    let row = rows[0];
    let cols: Vec<usize> = (0..m.size())
        .filter(|&c| m.get(row, c) >= rmax[row] - tol(rmax[row]))
        .collect();
    let col = cols[0];

    let mut report = EquilibriumReport::empty(
        EquilibriumKind::StackelbergDefenderLeader,
        m.law,
        m.gain,
        m.budget(),
    );
    report.defender_set = m.subset(row);
    report.attacker_set = m.subset(col);
    report.value = Some(m.get(row, col));
    report.defender_ties = rows.iter().map(|&r| m.subset(r)).collect();
    report.attacker_ties = cols.iter().map(|&c| m.subset(c)).collect();
    report
}

fn nash_report(m: &GameMatrix, s: Saddle) -> EquilibriumReport {
    let mut report = EquilibriumReport::empty(EquilibriumKind::Nash, m.law, m.gain, m.budget());
    report.defender_set = m.subset(s.row);
    report.attacker_set = m.subset(s.col);
    report.value = Some(s.value);
    // any saddle row is minimax-optimal; list those and the responses in s.row
    let rmax = row_maxima(m);
    report.defender_ties = (0..m.size())
        .filter(|&r| (rmax[r] - s.value).abs() <= tol(s.value))
        .map(|r| m.subset(r))
        .collect();
    report.attacker_ties = (0..m.size())
        .filter(|&c| m.get(s.row, c) >= rmax[s.row] - tol(s.value))
        .map(|c| m.subset(c))
        .collect();
    report
}

/// Builds the game, reports a Nash equilibrium when one exists and the
/// defender-led Stackelberg solution otherwise, and attaches the closed-form
/// prediction with a match flag.
pub fn solve(
    g: &Graph,
    gain: f64,
    f: usize,
    law: ControlLaw,
    cap: usize,
) -> Result<EquilibriumReport> {
    let m = build_matrix(g, gain, f, law, cap)?;
    let mut report = match find_nash(&m) {
        Some(s) => nash_report(&m, s),
        None => stackelberg_defender_leader(&m),
    };
    let predicted = predict_equilibrium(g, gain, f, law, cap)?;
    report.threshold = predicted.threshold;
    report.above_threshold = predicted.above_threshold;
    report.predicted_witness = Some(witness_for(&report, &predicted));
    Ok(report)
}

fn witness_for(solved: &EquilibriumReport, predicted: &EquilibriumReport) -> Witness {
    let theorem = predicted.theorem.unwrap_or(Theorem::NoClosedForm);
    let matches = match (solved.value, predicted.value) {
        (Some(a), Some(b)) if theorem != Theorem::NoClosedForm => {
            (a - b).abs() <= 1e-9 * a.abs().max(1.0)
                && predicted.defender_ties.contains(&solved.defender_set)
        }
        _ => false,
    };
    Witness {
        theorem,
        kind: predicted.kind,
        defender_set: predicted.defender_set.clone(),
        attacker_set: predicted.attacker_set.clone(),
        defender_ties: predicted.defender_ties.clone(),
        value: predicted.value,
        matches,
    }
}
