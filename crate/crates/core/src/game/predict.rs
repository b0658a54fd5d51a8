//! Equilibria predicted from graph centrality, without building the matrix.

use super::subsets::SubsetIndex;
use super::{tol, EquilibriumKind, EquilibriumReport, Theorem};
use crate::dynamics::ControlLaw;
use crate::error::{Error, Result};
use crate::graph::{center, degree_profile, distances, eccentricities, Graph};
use crate::resistance::{
    effective_center, effective_eccentricities, extended_graph, resistance_matrix, CENTER_TIE_TOL,
};

/// `(Δ₁ - Δ₂) / (Δ₂ + 1)`: the largest gain for which the single-node law-1
/// game has a pure equilibrium. Zero when the maximum degree is shared.
pub fn nash_threshold(g: &Graph) -> f64 {
    let d = degree_profile(g);
    (d.delta1 - d.delta2) / (d.delta2 + 1.0)
}

/// Closed-form equilibrium for the configurations where one is known.
///
/// Returns a report with `theorem = NoClosedForm` and kind `None` when none
/// of the characterizations' hypotheses hold.
pub fn predict_equilibrium(
    g: &Graph,
    gain: f64,
    f: usize,
    law: ControlLaw,
    cap: usize,
) -> Result<EquilibriumReport> {
    if !(gain.is_finite() && gain > 0.0) {
        return Err(Error::config(format!("gain must be positive, got {gain}")));
    }
    if f == 0 || f > g.n() {
        return Err(Error::config(format!(
            "budget f = {f} must satisfy 1 <= f <= n = {}",
            g.n()
        )));
    }
    let no_closed_form = || {
        let mut r = EquilibriumReport::empty(EquilibriumKind::None, law, gain, f);
        r.theorem = Some(Theorem::NoClosedForm);
        r
    };
    if g.n() < 2 {
        return Ok(no_closed_form());
    }
    match (law, f) {
        (ControlLaw::AbsVelocity, 1) => Ok(single_degree(g, gain)),
        (ControlLaw::AbsVelocity, _) => {
            let dmax = degree_profile(g).delta1;
            if g.n() >= 2 * f && gain >= 0.5 * (f as f64 * dmax - 2.0) {
                top_degrees(g, gain, f, cap)
            } else {
                Ok(no_closed_form())
            }
        }
        (ControlLaw::RelVelocity, 1) => Ok(if g.is_tree() && g.is_unit_weighted() {
            tree_center(g, gain)
        } else {
            effective_center_leader(g, gain)
        }),
        (ControlLaw::RelVelocity, _) => grounded_min_max(g, gain, f, cap),
    }
}

fn single_degree(g: &Graph, gain: f64) -> EquilibriumReport {
    let prof = degree_profile(g);
    let deg = &prof.degrees;
    let threshold = (prof.delta1 - prof.delta2) / (prof.delta2 + 1.0);
    let top = prof.argmax[0];
    let below = gain <= threshold + tol(threshold);

    let mut r = EquilibriumReport::empty(
        EquilibriumKind::StackelbergDefenderLeader,
        ControlLaw::AbsVelocity,
        gain,
        1,
    );
    r.threshold = Some(threshold);
    r.above_threshold = Some(!below);
    if below {
        r.kind = EquilibriumKind::Nash;
        r.theorem = Some(Theorem::MaxDegreeSaddle);
        r.defender_set = vec![top];
        r.attacker_set = vec![top];
        r.value = Some((prof.delta1 + 1.0) / (2.0 * gain + 2.0));
        r.defender_ties = vec![vec![top]];
        r.attacker_ties = vec![vec![top]];
        return r;
    }
    let value = (prof.delta2 + 1.0) / 2.0;
    let runner_up = (0..g.n())
        .filter(|&v| v != top)
        .max_by(|&a, &b| deg[a].total_cmp(&deg[b]).then(b.cmp(&a)))
        .expect("n >= 2");
    // worst case of defending v: its own discounted cell or the best exposed node
    let row_max = |v: usize| {
        let own = (deg[v] + 1.0) / (2.0 * gain + 2.0);
        (0..g.n())
            .filter(|&j| j != v)
            .map(|j| (deg[j] + 1.0) / 2.0)
            .fold(own, f64::max)
    };
    r.theorem = Some(Theorem::MaxDegreeLeader);
    r.defender_set = vec![top];
    r.attacker_set = vec![runner_up];
    r.value = Some(value);
    r.defender_ties = (0..g.n())
        .filter(|&v| (row_max(v) - value).abs() <= tol(value))
        .map(|v| vec![v])
        .collect();
    r.attacker_ties = (0..g.n())
        .filter(|&j| j != top && ((deg[j] + 1.0) / 2.0 - value).abs() <= tol(value))
        .map(|j| vec![j])
        .collect();
    r
}

/// Indices of the `f` largest values, ties to the lowest index, ascending.
fn top_f(values: &[f64], candidates: impl Iterator<Item = usize>, f: usize) -> Vec<usize> {
    let mut c: Vec<usize> = candidates.collect();
    c.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    c.truncate(f);
    c.sort_unstable();
    c
}

fn top_degrees(g: &Graph, gain: f64, f: usize, cap: usize) -> Result<EquilibriumReport> {
    let deg = degree_profile(g).degrees;
    let exposed_worst = |defense: &[usize]| -> f64 {
        let rest = top_f(&deg, (0..g.n()).filter(|v| !defense.contains(v)), f);
        rest.iter().map(|&v| 0.5 * (deg[v] + 1.0)).sum()
    };
    let defense = top_f(&deg, 0..g.n(), f);
    let attack = top_f(&deg, (0..g.n()).filter(|v| !defense.contains(v)), f);
    let value = exposed_worst(&defense);

    let index = SubsetIndex::new(g.n(), f, cap)?;
    let defender_ties = index
        .iter()
        .filter(|d| (exposed_worst(d) - value).abs() <= tol(value))
        .collect();

    let mut r = EquilibriumReport::empty(
        EquilibriumKind::StackelbergDefenderLeader,
        ControlLaw::AbsVelocity,
        gain,
        f,
    );
    r.theorem = Some(Theorem::TopDegreeLeader);
    r.defender_set = defense;
    r.attacker_set = attack.clone();
    r.value = Some(value);
    r.defender_ties = defender_ties;
    r.attacker_ties = vec![attack];
    Ok(r)
}

fn tree_center(g: &Graph, gain: f64) -> EquilibriumReport {
    let centers = center(g);
    let ecc = eccentricities(g);
    let d = centers[0];
    let dist = &distances(g)[d];
    let far: Vec<usize> = (0..g.n()).filter(|&v| dist[v] == ecc[d]).collect();
    let mut r = EquilibriumReport::empty(
        EquilibriumKind::StackelbergDefenderLeader,
        ControlLaw::RelVelocity,
        gain,
        1,
    );
    r.theorem = Some(Theorem::GraphCenterLeader);
    r.defender_set = vec![d];
    r.attacker_set = vec![far[0]];
    r.value = Some(0.5 + 0.5 / gain + 0.5 * ecc[d] as f64);
    r.defender_ties = centers.into_iter().map(|v| vec![v]).collect();
    r.attacker_ties = far.into_iter().map(|v| vec![v]).collect();
    r
}

fn effective_center_leader(g: &Graph, gain: f64) -> EquilibriumReport {
    let centers = effective_center(g);
    let ecc = effective_eccentricities(g);
    let d = centers[0];
    let res = resistance_matrix(g);
    let far: Vec<usize> = (0..g.n())
        .filter(|&v| res[(d, v)] >= ecc[d] - CENTER_TIE_TOL * ecc[d].max(1.0))
        .collect();
    let mut r = EquilibriumReport::empty(
        EquilibriumKind::StackelbergDefenderLeader,
        ControlLaw::RelVelocity,
        gain,
        1,
    );
    r.theorem = Some(Theorem::EffectiveCenterLeader);
    r.defender_set = vec![d];
    r.attacker_set = vec![far[0]];
    r.value = Some(0.5 + 0.5 / gain + 0.5 * ecc[d]);
    r.defender_ties = centers.into_iter().map(|v| vec![v]).collect();
    r.attacker_ties = far.into_iter().map(|v| vec![v]).collect();
    r
}

/// Enumerates defense sets; for each, the resistances to the virtual ground
/// come from the pseudoinverse of the extended graph and the attacker's best
/// reply is the `f` largest of them.
fn grounded_min_max(g: &Graph, gain: f64, f: usize, cap: usize) -> Result<EquilibriumReport> {
    let index = SubsetIndex::new(g.n(), f, cap)?;
    let ground = g.n();
    let mut scored = Vec::with_capacity(index.len());
    for defense in index.iter() {
        let ext = extended_graph(g, &defense, gain)?;
        let res = resistance_matrix(&ext);
        let to_ground: Vec<f64> = (0..g.n()).map(|j| res[(j, ground)]).collect();
        let attack = top_f(&to_ground, 0..g.n(), f);
        let worst: f64 = attack.iter().map(|&j| to_ground[j]).sum();
        scored.push((defense, attack, worst));
    }
    let best = scored.iter().map(|s| s.2).fold(f64::INFINITY, f64::min);
    let slack = CENTER_TIE_TOL * best.max(1.0);
    let winner = scored
        .iter()
        .find(|s| s.2 <= best + slack)
        .expect("at least one defense set");

    let mut r = EquilibriumReport::empty(
        EquilibriumKind::StackelbergDefenderLeader,
        ControlLaw::RelVelocity,
        gain,
        f,
    );
    r.theorem = Some(Theorem::GroundedMinMaxLeader);
    r.defender_set = winner.0.clone();
    r.attacker_set = winner.1.clone();
    r.value = Some(0.5 * f as f64 + 0.5 * winner.2);
    r.defender_ties = scored
        .iter()
        .filter(|s| s.2 <= best + slack)
        .map(|s| s.0.clone())
        .collect();
    r.attacker_ties = vec![winner.1.clone()];
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{build_matrix, stackelberg_defender_leader, DEFAULT_ENUM_CAP};
    use crate::generators;

    #[test]
    fn thresholds() {
        assert_eq!(nash_threshold(&generators::path(3)), 0.5);
        for n in 3..9 {
            assert_eq!(nash_threshold(&generators::star(n)), (n as f64 - 2.0) / 2.0);
        }
        assert_eq!(nash_threshold(&generators::cycle(5)), 0.0);
        // hub 0 of degree 3, node 1 of degree 2
        let g = Graph::unweighted(5, &[(0, 1), (0, 2), (0, 3), (1, 4)]).unwrap();
        assert!((nash_threshold(&g) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn path_predictions() {
        let g = generators::path(3);
        let r = predict_equilibrium(&g, 0.4, 1, ControlLaw::AbsVelocity, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.theorem, Some(Theorem::MaxDegreeSaddle));
        assert_eq!(r.kind, EquilibriumKind::Nash);
        assert_eq!(r.defender_set, vec![1]);
        assert!((r.value.unwrap() - 3.0 / 2.8).abs() < 1e-15);

        let r = predict_equilibrium(&g, 1.0, 1, ControlLaw::AbsVelocity, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.theorem, Some(Theorem::MaxDegreeLeader));
        assert_eq!(r.value, Some(1.0));
        assert_eq!(r.above_threshold, Some(true));
    }

    #[test]
    fn star_two_budget_top_degrees() {
        let g = generators::star(6);
        let r = predict_equilibrium(&g, 4.0, 2, ControlLaw::AbsVelocity, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.theorem, Some(Theorem::TopDegreeLeader));
        assert_eq!(r.defender_set, vec![0, 1]);
        assert_eq!(r.attacker_set, vec![2, 3]);
        assert_eq!(r.value, Some(2.0));
        // any hub-plus-leaf defense is optimal
        assert_eq!(r.defender_ties.len(), 5);
        assert!(r.defender_ties.iter().all(|d| d.contains(&0)));

        let m = build_matrix(&g, 4.0, 2, ControlLaw::AbsVelocity, DEFAULT_ENUM_CAP).unwrap();
        let s = stackelberg_defender_leader(&m);
        assert_eq!(s.value, Some(2.0));
        assert!(r.defender_ties.contains(&s.defender_set));

        let below =
            predict_equilibrium(&g, 3.9, 2, ControlLaw::AbsVelocity, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(below.theorem, Some(Theorem::NoClosedForm));
        assert_eq!(below.kind, EquilibriumKind::None);
    }

    #[test]
    fn cycle_two_budget_min_max_matches_matrix() {
        let g = generators::cycle(5);
        for kappa in [0.5, 1.0, 3.0] {
            let p = predict_equilibrium(&g, kappa, 2, ControlLaw::RelVelocity, DEFAULT_ENUM_CAP)
                .unwrap();
            assert_eq!(p.theorem, Some(Theorem::GroundedMinMaxLeader));
            let m = build_matrix(&g, kappa, 2, ControlLaw::RelVelocity, DEFAULT_ENUM_CAP).unwrap();
            let s = stackelberg_defender_leader(&m);
            assert!((p.value.unwrap() - s.value.unwrap()).abs() < 1e-9);
            assert!(p.defender_ties.contains(&s.defender_set));
        }
    }

    #[test]
    fn tree_prediction_uses_center() {
        let g = generators::path(5);
        let r = predict_equilibrium(&g, 2.0, 1, ControlLaw::RelVelocity, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.theorem, Some(Theorem::GraphCenterLeader));
        assert_eq!(r.defender_set, vec![2]);
        assert_eq!(r.attacker_ties, vec![vec![0], vec![4]]);
        assert_eq!(r.value, Some(0.5 + 0.25 + 1.0));
    }
}
