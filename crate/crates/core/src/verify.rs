//! Randomized invariant suites behind `resgame verify`.
//!
//! Every trial draws from its own generator seeded by `(seed, suite, trial)`,
//! so the report is identical across runs and thread schedules.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    h2_closed_form, h2_energy_oracle, lyapunov_residual, ControlLaw, OracleOptions, Scenario,
};
use crate::game::{
    abs_velocity_element, build_matrix, find_nash, payoff, payoff_j2, solve, EquilibriumKind,
    Theorem, DEFAULT_ENUM_CAP,
};
use crate::generators;
use crate::graph::{degree_profile, laplacian, Graph};
use crate::oracle;
use crate::resistance::{
    effective_resistance, extended_graph, grounded_inverse_diag, GroundedSystem,
};

/// Deliberate defects for checking that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// The suites see `-L` in place of the Laplacian.
    WrongSignLaplacian,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Node counts drawn from; suites with costlier checks cap them.
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            sizes: vec![3, 4, 5, 6, 7, 8],
            trials: 20,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    /// Description of the lowest-numbered failing trial.
    pub first_failure: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub fault: Option<Fault>,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failed_suites(&self) -> Vec<&str> {
        self.suites
            .iter()
            .filter(|s| !s.passed)
            .map(|s| s.name.as_str())
            .collect()
    }
}

type Check = fn(&mut Trial) -> Result<(), String>;

struct Trial {
    rng: ChaCha8Rng,
    n: usize,
    fault: Option<Fault>,
}

impl Trial {
    fn laplacian(&self, g: &Graph) -> DMatrix<f64> {
        match self.fault {
            Some(Fault::WrongSignLaplacian) => -laplacian(g),
            None => laplacian(g),
        }
    }

    fn connected(&mut self) -> Graph {
        let p = self.rng.gen_range(0.2..0.8);
        generators::random_connected(self.n, p, &mut self.rng)
    }

    fn weighted(&mut self) -> Graph {
        let p = self.rng.gen_range(0.2..0.8);
        generators::random_weighted(self.n, p, 0.1, 5.0, &mut self.rng)
    }

    fn gain(&mut self) -> f64 {
        // (0, 2], with draws of exactly 2 allowed
        2.0 - self.rng.gen_range(0.0..2.0)
    }

    fn subset(&mut self, k: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).collect();
        v.shuffle(&mut self.rng);
        v.truncate(k);
        v.sort_unstable();
        v
    }
}

const SUITES: &[(&str, Check)] = &[
    ("laplacian_psd", laplacian_psd),
    ("resistance_oracle", resistance_oracle),
    ("grounded_vs_extended", grounded_vs_extended),
    ("rayleigh_monotonicity", rayleigh_monotonicity),
    ("attack_superset_monotonicity", attack_superset_monotonicity),
    ("h2_oracle", h2_oracle),
    ("lyapunov_blocks", lyapunov_blocks),
    ("nash_threshold", nash_threshold),
    ("no_nash_law2", no_nash_law2),
    ("max_degree_leader", max_degree_leader),
    ("top_degree_leader", top_degree_leader),
    ("center_leader", center_leader),
    ("effective_center_leader", effective_center_leader),
    ("grounded_min_max_leader", grounded_min_max_leader),
    ("matrix_structure", matrix_structure),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

fn trial_seed(seed: u64, suite: usize, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((suite as u64) << 40) ^ (trial as u64)
}

pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let sizes: Vec<usize> = opts.sizes.iter().copied().filter(|&n| n >= 2).collect();
    let sizes = if sizes.is_empty() { vec![3] } else { sizes };
    let suites: Vec<SuiteResult> = SUITES
        .par_iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let outcomes: Vec<Result<(), String>> = (0..opts.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(opts.seed, k, t));
                    let n = *sizes.choose(&mut rng).expect("nonempty sizes");
                    let mut trial = Trial {
                        rng,
                        n,
                        fault: opts.fault,
                    };
                    check(&mut trial).map_err(|e| format!("trial {t} (n = {n}): {e}"))
                })
                .collect();
            let failures = outcomes.iter().filter(|o| o.is_err()).count();
            SuiteResult {
                name: name.to_string(),
                trials: opts.trials,
                failures,
                first_failure: outcomes.into_iter().find_map(|o| o.err()),
                passed: failures == 0,
            }
        })
        .collect();
    VerifyReport {
        seed: opts.seed,
        sizes: opts.sizes.clone(),
        trials: opts.trials,
        fault: opts.fault,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn laplacian_psd(t: &mut Trial) -> Result<(), String> {
    let g = t.weighted();
    let l = t.laplacian(&g);
    let n = g.n();
    let x: Vec<f64> = (0..n).map(|_| t.rng.gen_range(-1.0..1.0)).collect();
    let xv = nalgebra::DVector::from_vec(x.clone());
    let quad = xv.dot(&(&l * &xv));
    let energy: f64 = g
        .edges()
        .iter()
        .map(|e| e.w * (x[e.i] - x[e.j]).powi(2))
        .sum();
    ensure(close(quad, energy, 1e-12), || {
        format!("xᵀLx = {quad} but Σ w (xᵢ - xⱼ)² = {energy}")
    })?;
    let eig = l.symmetric_eigen().eigenvalues;
    let scale = eig.amax();
    let min = eig.min();
    ensure(min >= -1e-12 * scale, || {
        format!("smallest Laplacian eigenvalue {min} is negative")
    })
}

fn resistance_oracle(t: &mut Trial) -> Result<(), String> {
    let g = t.weighted();
    let l = t.laplacian(&g);
    let (i, j) = {
        let s = t.subset(2);
        (s[0], s[1])
    };
    let pinv = effective_resistance(&g, i, j);
    // grounded route on the trial's Laplacian
    let keep: Vec<usize> = (0..g.n()).filter(|&k| k != j).collect();
    let lg = DMatrix::from_fn(keep.len(), keep.len(), |a, b| l[(keep[a], keep[b])]);
    let inv = lg.try_inverse().ok_or("grounded Laplacian is singular")?;
    let pos = keep.iter().position(|&k| k == i).unwrap();
    let grounded = inv[(pos, pos)];
    ensure(close(pinv, grounded, 1e-9), || {
        format!("R({i},{j}) = {pinv} by pseudoinverse, {grounded} by grounding")
    })
}

fn grounded_vs_extended(t: &mut Trial) -> Result<(), String> {
    let g = t.weighted();
    let k = t.rng.gen_range(1..=g.n());
    let defense = t.subset(k);
    let gain = t.gain();
    let gs = GroundedSystem::new(&g, &defense, gain).map_err(|e| e.to_string())?;
    let diag = grounded_inverse_diag(&gs).map_err(|e| e.to_string())?;
    let ext = extended_graph(&g, &defense, gain).map_err(|e| e.to_string())?;
    for (i, &d) in diag.iter().enumerate() {
        let r = oracle::resistance_by_grounding(&ext, i, g.n());
        ensure(close(d, r, 1e-9), || {
            format!("[L̄⁻¹]_{i}{i} = {d} but R({i}, ground) = {r}")
        })?;
    }
    Ok(())
}

fn rayleigh_monotonicity(t: &mut Trial) -> Result<(), String> {
    let g = t.connected();
    let Some((u, v)) = generators::random_non_edge(&g, &mut t.rng) else {
        return Ok(());
    };
    let w = t.rng.gen_range(0.1..3.0);
    let h = g.with_edge(u, v, w).map_err(|e| e.to_string())?;
    let f = t.rng.gen_range(1..=g.n());
    let defense = t.subset(f);
    let attack = t.subset(f);
    let gain = t.gain();
    let before = grounded_inverse_diag(&GroundedSystem::new(&g, &defense, gain).unwrap()).unwrap();
    let after = grounded_inverse_diag(&GroundedSystem::new(&h, &defense, gain).unwrap()).unwrap();
    for i in 0..g.n() {
        ensure(after[i] <= before[i] * (1.0 + 1e-12), || {
            format!(
                "adding ({u},{v}) raised [L̄⁻¹]_{i}{i} from {} to {}",
                before[i], after[i]
            )
        })?;
    }
    let j_before = payoff_j2(&g, gain, &attack, &defense).unwrap();
    let j_after = payoff_j2(&h, gain, &attack, &defense).unwrap();
    ensure(j_after <= j_before * (1.0 + 1e-12), || {
        format!("adding ({u},{v}) raised J₂ from {j_before} to {j_after}")
    })
}

fn attack_superset_monotonicity(t: &mut Trial) -> Result<(), String> {
    let g = t.weighted();
    let k = t.rng.gen_range(1..=g.n());
    let defense = t.subset(k);
    let gain = t.gain();
    let k = t.rng.gen_range(1..=g.n());
    let big = t.subset(k);
    let small: Vec<usize> = big
        .iter()
        .copied()
        .filter(|_| t.rng.gen_bool(0.5))
        .collect();
    if small.is_empty() {
        return Ok(());
    }
    for law in [ControlLaw::AbsVelocity, ControlLaw::RelVelocity] {
        let a = payoff(law, &g, gain, &small, &defense).unwrap();
        let b = payoff(law, &g, gain, &big, &defense).unwrap();
        ensure(a <= b, || {
            format!("law {law}: J({small:?}) = {a} exceeds J({big:?}) = {b}")
        })?;
    }
    Ok(())
}

fn h2_oracle(t: &mut Trial) -> Result<(), String> {
    t.n = t.n.min(6);
    let g = t.connected();
    let f = t.rng.gen_range(1..=g.n());
    let attack = t.subset(f);
    // law 1 is checked undefended: with defended nodes H no longer commutes
    // with L and the closed form does not hold
    let (law, defense) = if t.rng.gen_bool(0.5) {
        (ControlLaw::AbsVelocity, Vec::new())
    } else {
        (ControlLaw::RelVelocity, t.subset(f))
    };
    let gain = t.gain();
    let s = Scenario::new(&g, law, gain, &defense, &attack).map_err(|e| e.to_string())?;
    let closed = h2_closed_form(&s).map_err(|e| e.to_string())?.value_sq;
    let oracle = h2_energy_oracle(&s, &OracleOptions::default())
        .map_err(|e| e.to_string())?
        .value_sq;
    ensure((closed - oracle).abs() <= 1e-6 * oracle.abs(), || {
        format!("law {law}: closed form {closed}, energy oracle {oracle}")
    })
}

fn lyapunov_blocks(t: &mut Trial) -> Result<(), String> {
    let g = t.weighted();
    let f = t.rng.gen_range(1..=g.n());
    let k = t.rng.gen_range(0..=g.n());
    let defense = t.subset(k);
    let attack = t.subset(f);
    let gain = t.gain();
    let s = Scenario::new(&g, ControlLaw::AbsVelocity, gain, &defense, &attack)
        .map_err(|e| e.to_string())?;
    let c = lyapunov_residual(&s).map_err(|e| e.to_string())?;
    let closed = h2_closed_form(&s).map_err(|e| e.to_string())?.value_sq;
    ensure(c.residual < 1e-12, || {
        format!("block residual {}", c.residual)
    })?;
    ensure(close(c.trace_value, closed, 1e-12), || {
        format!("trace {} vs closed form {closed}", c.trace_value)
    })
}

fn nash_threshold(t: &mut Trial) -> Result<(), String> {
    let g = t.connected();
    let gain = t.gain();
    let m = build_matrix(&g, gain, 1, ControlLaw::AbsVelocity, DEFAULT_ENUM_CAP)
        .map_err(|e| e.to_string())?;
    let p = degree_profile(&g);
    let kbar = (p.delta1 - p.delta2) / (p.delta2 + 1.0);
    match find_nash(&m) {
        Some(s) => {
            ensure(gain <= kbar, || {
                format!("saddle at κ = {gain} > k̄ = {kbar}")
            })?;
            let v = (p.delta1 + 1.0) / (2.0 * gain + 2.0);
            ensure(close(s.value, v, 1e-12), || {
                format!("saddle value {} vs (Δ₁+1)/(2κ+2) = {v}", s.value)
            })
        }
        None => ensure(gain > kbar, || {
            format!("no saddle at κ = {gain} ≤ k̄ = {kbar}")
        }),
    }
}

fn no_nash_law2(t: &mut Trial) -> Result<(), String> {
    let g = t.connected();
    let gain = [0.5, 1.0, 2.0][t.rng.gen_range(0..3)];
    let m = build_matrix(&g, gain, 1, ControlLaw::RelVelocity, DEFAULT_ENUM_CAP)
        .map_err(|e| e.to_string())?;
    ensure(find_nash(&m).is_none(), || {
        format!("law-2 saddle at κ = {gain}")
    })?;
    let expect = 0.5 + 0.5 / gain;
    for i in 0..m.size() {
        let d = m.get(i, i);
        ensure(close(d, expect, 1e-12), || {
            format!("diagonal entry {i} = {d}, expected {expect}")
        })?;
    }
    Ok(())
}

fn expect_match(
    g: &Graph,
    gain: f64,
    f: usize,
    law: ControlLaw,
    theorem: Theorem,
) -> Result<(), String> {
    let r = solve(g, gain, f, law, DEFAULT_ENUM_CAP).map_err(|e| e.to_string())?;
    let w = r
        .predicted_witness
        .as_ref()
        .expect("solve attaches a witness");
    ensure(w.theorem == theorem, || {
        format!("predicted by {:?}, expected {theorem:?}", w.theorem)
    })?;
    ensure(w.matches, || {
        format!(
            "solved {:?} value {:?}, predicted ties {:?} value {:?}",
            r.defender_set, r.value, w.defender_ties, w.value
        )
    })
}

fn max_degree_leader(t: &mut Trial) -> Result<(), String> {
    let g = t.connected();
    let p = degree_profile(&g);
    if !p.max_is_unique() {
        return Ok(());
    }
    let kbar = (p.delta1 - p.delta2) / (p.delta2 + 1.0);
    let gain = kbar + t.rng.gen_range(0.01..2.0);
    let r =
        solve(&g, gain, 1, ControlLaw::AbsVelocity, DEFAULT_ENUM_CAP).map_err(|e| e.to_string())?;
    ensure(r.kind == EquilibriumKind::StackelbergDefenderLeader, || {
        format!("{:?} above the threshold", r.kind)
    })?;
    ensure(r.defender_set == p.argmax, || {
        format!(
            "defender {:?}, max-degree node {:?}",
            r.defender_set, p.argmax
        )
    })?;
    let v = (p.delta2 + 1.0) / 2.0;
    ensure(close(r.value.unwrap(), v, 1e-12), || {
        format!("value {:?} vs (Δ₂+1)/2 = {v}", r.value)
    })
}

fn top_degree_leader(t: &mut Trial) -> Result<(), String> {
    t.n = t.n.max(4);
    let g = t.connected();
    let dmax = degree_profile(&g).delta1;
    let gain = 0.5 * (2.0 * dmax - 2.0) + t.rng.gen_range(0.0..2.0);
    expect_match(
        &g,
        gain,
        2,
        ControlLaw::AbsVelocity,
        Theorem::TopDegreeLeader,
    )
}

fn center_leader(t: &mut Trial) -> Result<(), String> {
    let g = generators::random_tree(t.n, &mut t.rng);
    let gain = t.gain();
    expect_match(
        &g,
        gain,
        1,
        ControlLaw::RelVelocity,
        Theorem::GraphCenterLeader,
    )?;
    let brute = oracle::center_brute_force(&g);
    let r = solve(&g, gain, 1, ControlLaw::RelVelocity, DEFAULT_ENUM_CAP).unwrap();
    ensure(brute.contains(&r.defender_set[0]), || {
        format!("defender {:?} outside center {brute:?}", r.defender_set)
    })
}

fn effective_center_leader(t: &mut Trial) -> Result<(), String> {
    let g = t.weighted();
    let gain = t.gain();
    expect_match(
        &g,
        gain,
        1,
        ControlLaw::RelVelocity,
        Theorem::EffectiveCenterLeader,
    )
}

fn grounded_min_max_leader(t: &mut Trial) -> Result<(), String> {
    t.n = t.n.max(4);
    let g = t.connected();
    let gain = t.gain();
    expect_match(
        &g,
        gain,
        2,
        ControlLaw::RelVelocity,
        Theorem::GroundedMinMaxLeader,
    )
}

fn matrix_structure(t: &mut Trial) -> Result<(), String> {
    let g = t.weighted();
    let f = t.rng.gen_range(1..=g.n().min(3));
    let gain = t.gain();
    let degrees = degree_profile(&g).degrees;
    for law in [ControlLaw::AbsVelocity, ControlLaw::RelVelocity] {
        let m = build_matrix(&g, gain, f, law, DEFAULT_ENUM_CAP).map_err(|e| e.to_string())?;
        let row = t.rng.gen_range(0..m.size());
        let col = t.rng.gen_range(0..m.size());
        let (d, a) = (m.subset(row), m.subset(col));
        let direct = payoff(law, &g, gain, &a, &d).unwrap();
        ensure(close(m.get(row, col), direct, 1e-12), || {
            format!(
                "law {law} cell ({row},{col}) = {} vs payoff {direct}",
                m.get(row, col)
            )
        })?;
        if law == ControlLaw::AbsVelocity {
            let e = abs_velocity_element(&degrees, gain, &a, &d);
            ensure(close(e, direct, 1e-12), || {
                format!("element formula {e} vs {direct}")
            })?;
        }
    }
    Ok(())
}
