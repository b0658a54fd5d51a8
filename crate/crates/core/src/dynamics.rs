//! Attacked second-order network dynamics and their H₂ norms.
//!
//! Each agent has a position and a velocity. Attacked nodes receive an
//! injection on both states, and the measured output is the velocity vector.
//! Two feedback laws are supported:
//!
//! * [`ControlLaw::AbsVelocity`]: relative position, absolute velocity
//!   (`A = [[0, I], [-L, -H]]`, `H = I + κ D_y`);
//! * [`ControlLaw::RelVelocity`]: relative position and relative velocity
//!   (`A = [[0, I], [-L̄, -L̄]]`, `L̄ = L + κ D_y`).

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{degree_profile, laplacian, Graph};
use crate::resistance::{grounded_inverse_diag, GroundedSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum ControlLaw {
    AbsVelocity,
    RelVelocity,
}

impl TryFrom<u8> for ControlLaw {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(ControlLaw::AbsVelocity),
            2 => Ok(ControlLaw::RelVelocity),
            _ => Err(format!("control law must be 1 or 2, got {v}")),
        }
    }
}

impl From<ControlLaw> for u8 {
    fn from(law: ControlLaw) -> u8 {
        match law {
            ControlLaw::AbsVelocity => 1,
            ControlLaw::RelVelocity => 2,
        }
    }
}

impl fmt::Display for ControlLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

/// A graph under a given control law, defense set and attack set.
#[derive(Debug, Clone)]
pub struct Scenario<'g> {
    graph: &'g Graph,
    law: ControlLaw,
    gain: f64,
    defense: Vec<usize>,
    attack: Vec<usize>,
}

impl<'g> Scenario<'g> {
    pub fn new(
        graph: &'g Graph,
        law: ControlLaw,
        gain: f64,
        defense: &[usize],
        attack: &[usize],
    ) -> Result<Self> {
        let mut problems = Vec::new();
        if !(gain.is_finite() && gain > 0.0) {
            problems.push(format!("gain must be positive, got {gain}"));
        }
        if attack.is_empty() {
            problems.push("attack set is empty".to_string());
        }
        if law == ControlLaw::RelVelocity && defense.is_empty() {
            problems.push("control law 2 needs a nonempty defense set".to_string());
        }
        let defense = normalize_set("defense", defense, graph.n(), &mut problems);
        let attack = normalize_set("attack", attack, graph.n(), &mut problems);
        if !problems.is_empty() {
            return Err(Error::Config(problems));
        }
        Ok(Scenario {
            graph,
            law,
            gain,
            defense,
            attack,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn law(&self) -> ControlLaw {
        self.law
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn defense(&self) -> &[usize] {
        &self.defense
    }

    pub fn attack(&self) -> &[usize] {
        &self.attack
    }

    pub fn budget(&self) -> usize {
        self.attack.len()
    }
}

pub(crate) fn normalize_set(
    name: &str,
    set: &[usize],
    n: usize,
    problems: &mut Vec<String>,
) -> Vec<usize> {
    let mut out = set.to_vec();
    out.sort_unstable();
    let before = out.len();
    out.dedup();
    if out.len() != before {
        problems.push(format!("{name} set has repeated nodes"));
    }
    for &v in &out {
        if v >= n {
            problems.push(format!("{name} node {v} out of range for n = {n}"));
        }
    }
    out
}

/// `ẋ = A x + B₁ w + B₂ ζ`, `y = C x`, with state `x = [positions; velocities]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    pub a: DMatrix<f64>,
    pub b1: DMatrix<f64>,
    /// `I₂ ⊗ F`; column `k` injects into position and column `f + k` into
    /// velocity of the `k`-th attacked node.
    pub b2: DMatrix<f64>,
    pub c: DMatrix<f64>,
}

pub fn assemble(s: &Scenario<'_>) -> StateSpace {
    let n = s.graph.n();
    let f = s.attack.len();
    let l = laplacian(s.graph);
    let mut a = DMatrix::zeros(2 * n, 2 * n);
    a.view_mut((0, n), (n, n)).fill_with_identity();
    match s.law {
        ControlLaw::AbsVelocity => {
            a.view_mut((n, 0), (n, n)).copy_from(&(-&l));
            let mut h = DMatrix::identity(n, n);
            for &d in &s.defense {
                h[(d, d)] += s.gain;
            }
            a.view_mut((n, n), (n, n)).copy_from(&(-h));
        }
        ControlLaw::RelVelocity => {
            let mut lbar = l;
            for &d in &s.defense {
                lbar[(d, d)] += s.gain;
            }
            a.view_mut((n, 0), (n, n)).copy_from(&(-&lbar));
            a.view_mut((n, n), (n, n)).copy_from(&(-lbar));
        }
    }
    let mut b1 = DMatrix::zeros(2 * n, n);
    b1.view_mut((n, 0), (n, n)).fill_with_identity();
    let mut b2 = DMatrix::zeros(2 * n, 2 * f);
    for (k, &i) in s.attack.iter().enumerate() {
        b2[(i, k)] = 1.0;
        b2[(n + i, f + k)] = 1.0;
    }
    let mut c = DMatrix::zeros(n, 2 * n);
    c.view_mut((0, n), (n, n)).fill_with_identity();
    StateSpace { a, b1, b2, c }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Method {
    ClosedForm,
    EnergyOracle,
}

/// Squared H₂ norm from the attack channels to the velocity output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct H2Result {
    pub value_sq: f64,
    /// `(node, contribution)` for each attacked node.
    pub per_node: Vec<(usize, f64)>,
    /// Node-independent part (`f / 2` under control law 2, else 0).
    pub constant: f64,
    pub method: H2Method,
    /// Integration horizon and estimated truncated tail, oracle only.
    pub horizon: Option<f64>,
    pub tail: Option<f64>,
}

/// Closed-form squared norm.
///
/// Law 1: `½ Σ_{i∈F} (d_i + 1) / (1 + κ y_i)`. Law 2: `f/2 + ½ Σ_{i∈F} [L̄⁻¹]_ii`.
pub fn h2_closed_form(s: &Scenario<'_>) -> Result<H2Result> {
    let (per_node, constant) = match s.law {
        ControlLaw::AbsVelocity => {
            let deg = degree_profile(s.graph).degrees;
            let per = s
                .attack
                .iter()
                .map(|&i| {
                    let hinv = if s.defense.contains(&i) {
                        1.0 / (1.0 + s.gain)
                    } else {
                        1.0
                    };
                    (i, 0.5 * hinv * (deg[i] + 1.0))
                })
                .collect::<Vec<_>>();
            (per, 0.0)
        }
        ControlLaw::RelVelocity => {
            let gs = GroundedSystem::new(s.graph, &s.defense, s.gain)?;
            let diag = grounded_inverse_diag(&gs)?;
            let per = s.attack.iter().map(|&i| (i, 0.5 * diag[i])).collect();
            (per, 0.5 * s.attack.len() as f64)
        }
    };
    let value_sq = constant + per_node.iter().map(|&(_, v)| v).sum::<f64>();
    Ok(H2Result {
        value_sq,
        per_node,
        constant,
        method: H2Method::ClosedForm,
        horizon: None,
        tail: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Integration horizon; `None` picks `20 / σ` with `σ` the slowest
    /// observable decay rate.
    pub horizon: Option<f64>,
    /// Composite Simpson subintervals on the base interval (even).
    pub panels: usize,
    /// Upper bound on `h · ρ(A)` for the Simpson step `h`.
    pub max_step_scale: f64,
    /// Relative size of the integrand at the horizon beyond which the
    /// integral is declared unconverged.
    pub tail_tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            horizon: None,
            panels: 2000,
            max_step_scale: 0.01,
            tail_tol: 1e-10,
        }
    }
}

/// `∫₀ᵀ ‖C e^{At} B₂‖²_F dt` by quadrature.
///
/// The observability integral `W(t) = ∫₀ᵗ e^{Aᵀs} CᵀC e^{As} ds` is
/// integrated with composite Simpson on a base interval `T₀ = T / 2^K`, then
/// extended by doubling, `W(2t) = W(t) + e^{Aᵀt} W(t) e^{At}`. `K` is the
/// smallest count keeping the Simpson step below `max_step_scale / ρ(A)`.
/// The zero mode `[𝟙; 0]` under law 1 is unobservable, so the integral
/// converges although `A` is only marginally stable.
pub fn h2_energy_oracle(s: &Scenario<'_>, opts: &OracleOptions) -> Result<H2Result> {
    let ss = assemble(s);
    let n = s.graph.n();
    let f = s.attack.len();
    let (sigma, rho) = decay_rates(&ss.a);
    if sigma <= 0.0 {
        return Err(Error::NonConvergence {
            horizon: f64::INFINITY,
            tail: f64::INFINITY,
        });
    }
    let horizon = opts.horizon.unwrap_or(20.0 / sigma);
    let panels = opts.panels.max(2) + opts.panels % 2;

    let mut doublings = 0u32;
    while horizon / (2f64.powi(doublings as i32) * panels as f64) * rho > opts.max_step_scale {
        doublings += 1;
    }
    let base = horizon / 2f64.powi(doublings as i32);
    let h = base / panels as f64;
    let step = (&ss.a * h).exp();

    let dim = 2 * n;
    let mut x = DMatrix::<f64>::identity(dim, dim);
    let mut w = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..=panels {
        let weight = if k == 0 || k == panels {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let vel = x.rows(n, n);
        w += (vel.transpose() * vel) * weight;
        if k < panels {
            x = &step * x;
        }
    }
    w *= h / 3.0;
    let mut prop = x;
    for _ in 0..doublings {
        w = &w + prop.transpose() * &w * &prop;
        prop = &prop * &prop;
    }

    let gram = ss.b2.transpose() * &w * &ss.b2;
    let per_node: Vec<(usize, f64)> = s
        .attack
        .iter()
        .enumerate()
        .map(|(k, &i)| (i, gram[(k, k)] + gram[(f + k, f + k)]))
        .collect();
    let value_sq = gram.trace();

    let end = (&ss.c * &prop * &ss.b2).norm_squared();
    if end > opts.tail_tol * value_sq.max(f64::MIN_POSITIVE) {
        return Err(Error::NonConvergence { horizon, tail: end });
    }
    Ok(H2Result {
        value_sq,
        per_node,
        constant: 0.0,
        method: H2Method::EnergyOracle,
        horizon: Some(horizon),
        tail: Some(end / (2.0 * sigma)),
    })
}

/// Slowest decay rate among eigenvalues away from zero, and the spectral radius.
fn decay_rates(a: &DMatrix<f64>) -> (f64, f64) {
    let eig = a.complex_eigenvalues();
    let rho = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let floor = 1e-8 * rho.max(1.0);
    let sigma = eig
        .iter()
        .filter(|z| z.norm() > floor)
        .map(|z| -z.re)
        .fold(f64::INFINITY, f64::min);
    (sigma, rho)
}

/// Block residuals of the law-1 observability Lyapunov equation
/// `W A + Aᵀ W + CᵀC = 0` for the block-diagonal candidate
/// `W = diag(½ H⁻¹ L, ½ H⁻¹)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovCheck {
    /// `‖W₂₂ H + H W₂₂ - I‖`
    pub velocity_block: f64,
    /// `(2,1)` block `W₁₁ - W₂₂ L`.
    pub lower_block: f64,
    /// `(1,1)` block, identically zero for this structure.
    pub position_block: f64,
    /// `‖W [𝟙; 0]‖`
    pub deflation: f64,
    /// `(1,2)` block `W₁₁ - L W₂₂ = ½ (H⁻¹L - L H⁻¹)`. Vanishes only when `H`
    /// commutes with `L`; not part of `residual`.
    pub upper_block: f64,
    /// `trace(Fᵀ W₁₁ F + Fᵀ W₂₂ F)`, equal to the law-1 closed form.
    pub trace_value: f64,
    /// Max of the velocity, lower, position and deflation residuals.
    pub residual: f64,
}

pub fn lyapunov_residual(s: &Scenario<'_>) -> Result<LyapunovCheck> {
    if s.law != ControlLaw::AbsVelocity {
        return Err(Error::config(
            "Lyapunov block check is only available for control law 1",
        ));
    }
    let n = s.graph.n();
    let ss = assemble(s);
    let l = laplacian(s.graph);
    let mut h = DMatrix::<f64>::identity(n, n);
    for &d in &s.defense {
        h[(d, d)] += s.gain;
    }
    let hinv = DMatrix::from_diagonal(&h.diagonal().map(|x| 1.0 / x));
    let w22 = &hinv * 0.5;
    let w11 = &w22 * &l;

    let mut w = DMatrix::zeros(2 * n, 2 * n);
    w.view_mut((0, 0), (n, n)).copy_from(&w11);
    w.view_mut((n, n), (n, n)).copy_from(&w22);
    let r = &w * &ss.a + ss.a.transpose() * &w + ss.c.transpose() * &ss.c;

    let block = |i: usize, j: usize| r.view((i * n, j * n), (n, n)).abs().max();
    let velocity_block = (&w22 * &h + &h * &w22 - DMatrix::identity(n, n))
        .abs()
        .max();
    let mut mode = nalgebra::DVector::zeros(2 * n);
    mode.rows_mut(0, n).fill(1.0);
    let deflation = (&w * mode).abs().max();

    let mut trace_value = 0.0;
    for &i in &s.attack {
        trace_value += w11[(i, i)] + w22[(i, i)];
    }
    let lower_block = block(1, 0);
    let position_block = block(0, 0);
    Ok(LyapunovCheck {
        velocity_block: velocity_block.max(block(1, 1)),
        lower_block,
        position_block,
        deflation,
        upper_block: block(0, 1),
        trace_value,
        residual: velocity_block
            .max(block(1, 1))
            .max(lower_block)
            .max(position_block)
            .max(deflation),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use proptest::prelude::*;
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p3() -> Graph {
        generators::path(3)
    }

    #[test]
    fn assemble_abs_velocity() {
        let g = p3();
        let s = Scenario::new(&g, ControlLaw::AbsVelocity, 1.0, &[1], &[1]).unwrap();
        let ss = assemble(&s);
        let l = laplacian(&g);
        assert_eq!(ss.a.view((3, 0), (3, 3)).clone_owned(), -l);
        assert_eq!(
            ss.a.view((3, 3), (3, 3)).clone_owned(),
            -DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1., 2., 1.]))
        );
        assert_eq!(
            ss.a.view((0, 3), (3, 3)).clone_owned(),
            DMatrix::identity(3, 3)
        );
        assert_eq!(
            ss.a.view((0, 0), (3, 3)).clone_owned(),
            DMatrix::zeros(3, 3)
        );
        assert_eq!(
            ss.c.view((0, 3), (3, 3)).clone_owned(),
            DMatrix::identity(3, 3)
        );
        assert_eq!(
            ss.b1.view((3, 0), (3, 3)).clone_owned(),
            DMatrix::identity(3, 3)
        );
    }

    #[test]
    fn assemble_rel_velocity() {
        let g = p3();
        let s = Scenario::new(&g, ControlLaw::RelVelocity, 1.0, &[1], &[0]).unwrap();
        let ss = assemble(&s);
        let mut lbar = laplacian(&g);
        lbar[(1, 1)] += 1.0;
        assert_eq!(ss.a.view((3, 0), (3, 3)).clone_owned(), -&lbar);
        assert_eq!(ss.a.view((3, 3), (3, 3)).clone_owned(), -lbar);
    }

    #[test]
    fn attack_input_is_kronecker() {
        let g = p3();
        let s = Scenario::new(&g, ControlLaw::AbsVelocity, 1.0, &[], &[0]).unwrap();
        let b2 = assemble(&s).b2;
        let mut expected = DMatrix::zeros(6, 2);
        expected[(0, 0)] = 1.0;
        expected[(3, 1)] = 1.0;
        assert_eq!(b2, expected);
        for col in b2.column_iter() {
            assert_eq!(col.iter().filter(|&&x| x != 0.0).count(), 1);
        }
    }

    #[test]
    fn closed_form_examples() {
        let g = p3();
        for kappa in [0.2, 1.0, 3.5] {
            let s = Scenario::new(&g, ControlLaw::AbsVelocity, kappa, &[1], &[1]).unwrap();
            let v = h2_closed_form(&s).unwrap().value_sq;
            assert!((v - 3.0 / (2.0 * kappa + 2.0)).abs() < 1e-15);
        }
        let s = Scenario::new(&g, ControlLaw::AbsVelocity, 1.0, &[0], &[1]).unwrap();
        assert_eq!(h2_closed_form(&s).unwrap().value_sq, 1.5);

        let c5 = generators::cycle(5);
        for kappa in [0.5, 2.0] {
            let s = Scenario::new(&c5, ControlLaw::RelVelocity, kappa, &[3], &[3]).unwrap();
            let r = h2_closed_form(&s).unwrap();
            assert!((r.value_sq - (0.5 + 0.5 / kappa)).abs() < 1e-12);
            assert_eq!(r.constant, 0.5);
        }
    }

    #[test]
    fn scenario_validation_lists_every_problem() {
        let g = p3();
        match Scenario::new(&g, ControlLaw::RelVelocity, -1.0, &[], &[5]) {
            Err(Error::Config(p)) => assert_eq!(p.len(), 3, "{p:?}"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    // The closed form holds exactly when H is a multiple of the identity.
    #[test]
    fn oracle_matches_closed_form_without_defense() {
        let g = p3();
        let s = Scenario::new(&g, ControlLaw::AbsVelocity, 1.0, &[], &[1]).unwrap();
        let o = h2_energy_oracle(&s, &OracleOptions::default()).unwrap();
        assert!((o.value_sq - 1.5).abs() < 1e-6 * 1.5, "{}", o.value_sq);
    }

    #[test]
    fn oracle_near_zero_gain_approaches_undefended_value() {
        let g = p3();
        let s = Scenario::new(&g, ControlLaw::AbsVelocity, 1e-6, &[1], &[1]).unwrap();
        let o = h2_energy_oracle(&s, &OracleOptions::default()).unwrap();
        assert!((o.value_sq - 1.5).abs() < 1e-5, "{}", o.value_sq);
    }

    #[test]
    fn oracle_matches_closed_form_law_two() {
        let g = p3();
        let s = Scenario::new(&g, ControlLaw::RelVelocity, 1.0, &[1], &[1]).unwrap();
        let o = h2_energy_oracle(&s, &OracleOptions::default()).unwrap();
        let c = h2_closed_form(&s).unwrap();
        assert!((c.value_sq - 1.0).abs() < 1e-12);
        assert!((o.value_sq - c.value_sq).abs() < 1e-6 * c.value_sq);
    }

    // Frozen from an independent Van Loan / adaptive-quadrature computation:
    // with a defended node the true norm differs from the law-1 closed form.
    #[test]
    fn oracle_law_one_defended_path() {
        let g = p3();
        let s = Scenario::new(&g, ControlLaw::AbsVelocity, 1.0, &[1], &[1]).unwrap();
        let o = h2_energy_oracle(&s, &OracleOptions::default()).unwrap();
        assert!(
            (o.value_sq - 0.965_909_090_909_09).abs() < 1e-6,
            "{}",
            o.value_sq
        );
    }

    #[test]
    fn short_horizon_is_reported() {
        let g = p3();
        let s = Scenario::new(&g, ControlLaw::RelVelocity, 1.0, &[1], &[1]).unwrap();
        let opts = OracleOptions {
            horizon: Some(0.5),
            ..OracleOptions::default()
        };
        assert!(matches!(
            h2_energy_oracle(&s, &opts),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn lyapunov_blocks() {
        let g = p3();
        let s = Scenario::new(&g, ControlLaw::AbsVelocity, 1.0, &[1], &[1]).unwrap();
        let chk = lyapunov_residual(&s).unwrap();
        assert!(chk.residual < 1e-12, "{chk:?}");
        assert!((chk.trace_value - 0.75).abs() < 1e-15);
        assert!(chk.upper_block > 0.1);

        let star = generators::star(4);
        let s = Scenario::new(&star, ControlLaw::AbsVelocity, 2.0, &[0], &[0, 2]).unwrap();
        assert!(lyapunov_residual(&s).unwrap().residual < 1e-12);

        let s = Scenario::new(&star, ControlLaw::AbsVelocity, 2.0, &[], &[1]).unwrap();
        let chk = lyapunov_residual(&s).unwrap();
        assert!(chk.residual < 1e-12);
        assert_eq!(chk.upper_block, 0.0);

        let s = Scenario::new(&star, ControlLaw::RelVelocity, 2.0, &[0], &[1]).unwrap();
        assert!(lyapunov_residual(&s).is_err());
    }

    #[test]
    fn law_one_ignores_defense_outside_attack() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let n = rng.gen_range(3..=7);
            let g = generators::random_connected(n, 0.3, &mut rng);
            let attack = [rng.gen_range(0..n)];
            let others: Vec<usize> = (0..n).filter(|v| *v != attack[0]).collect();
            let d1: Vec<usize> = others.choose_multiple(&mut rng, 2).copied().collect();
            let v0 = h2_closed_form(
                &Scenario::new(&g, ControlLaw::AbsVelocity, 1.3, &[], &attack).unwrap(),
            )
            .unwrap()
            .value_sq;
            let v1 = h2_closed_form(
                &Scenario::new(&g, ControlLaw::AbsVelocity, 1.3, &d1, &attack).unwrap(),
            )
            .unwrap()
            .value_sq;
            assert_eq!(v0, v1);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn law_two_decreasing_in_gain(seed in any::<u64>(), n in 2usize..=7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = generators::random_connected(n, 0.3, &mut rng);
            let d = [rng.gen_range(0..n)];
            let a = [rng.gen_range(0..n)];
            let mut last = f64::INFINITY;
            for kappa in [0.1, 0.3, 1.0, 3.0, 10.0] {
                let v = h2_closed_form(&Scenario::new(&g, ControlLaw::RelVelocity, kappa, &d, &a).unwrap())
                    .unwrap().value_sq;
                prop_assert!(v < last);
                last = v;
            }
        }

        #[test]
        fn attack_superset_monotone(seed in any::<u64>(), n in 3usize..=7, law in 1u8..=2) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = generators::random_connected(n, 0.3, &mut rng);
            let law = ControlLaw::try_from(law).unwrap();
            let mut nodes: Vec<usize> = (0..n).collect();
            nodes.shuffle(&mut rng);
            let small = &nodes[..1];
            let big = &nodes[..rng.gen_range(2..=n)];
            let defense = [nodes[rng.gen_range(0..n)]];
            let v = |a: &[usize]| h2_closed_form(&Scenario::new(&g, law, 0.7, &defense, a).unwrap()).unwrap().value_sq;
            prop_assert!(v(small) <= v(big));
        }
    }
}
