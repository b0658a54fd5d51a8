//! Effective resistance, grounded Laplacians and the virtual ground node.
//!
//! Defending a node with gain `kappa` is equivalent to wiring it to a common
//! virtual ground `ℓ` through a conductance-`kappa` edge. The grounded
//! Laplacian `L + kappa * diag(y)` is the extended-graph Laplacian with `ℓ`'s
//! row and column removed, so its inverse diagonal holds the resistances
//! `R(i, ℓ)`.

use nalgebra::{Cholesky, DMatrix};

use crate::error::{Error, Result};
use crate::graph::{laplacian, Graph};

/// Relative cutoff below which eigenvalues of `L` count as zero.
pub const PINV_CUTOFF: f64 = 1e-12;

/// Relative tolerance used when collecting ties in effective eccentricity.
pub const CENTER_TIE_TOL: f64 = 1e-9;

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix.
pub fn pseudoinverse(l: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = l.clone().symmetric_eigen();
    let smax = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let n = l.nrows();
    let mut out = DMatrix::zeros(n, n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() <= PINV_CUTOFF * smax {
            continue;
        }
        let u = eig.eigenvectors.column(k);
        out += (u * u.transpose()) / lambda;
    }
    out
}

/// All pairwise effective resistances `R[i][j] = L⁺ii + L⁺jj - 2 L⁺ij`.
pub fn resistance_matrix(g: &Graph) -> DMatrix<f64> {
    let lp = pseudoinverse(&laplacian(g));
    let n = g.n();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            (lp[(i, i)] + lp[(j, j)] - 2.0 * lp[(i, j)]).max(0.0)
        }
    })
}

pub fn effective_resistance(g: &Graph, i: usize, j: usize) -> f64 {
    resistance_matrix(g)[(i, j)]
}

/// `ε_f(v) = max_u R(v, u)` for every node.
pub fn effective_eccentricities(g: &Graph) -> Vec<f64> {
    let r = resistance_matrix(g);
    r.row_iter().map(|row| row.max()).collect()
}

pub fn effective_eccentricity(g: &Graph, v: usize) -> f64 {
    effective_eccentricities(g)[v]
}

/// Nodes of minimum effective eccentricity, ascending. Values within
/// [`CENTER_TIE_TOL`] (relative) of the minimum count as ties.
pub fn effective_center(g: &Graph) -> Vec<usize> {
    let ecc = effective_eccentricities(g);
    argmin_set(&ecc, CENTER_TIE_TOL)
}

pub(crate) fn argmin_set(values: &[f64], rel_tol: f64) -> Vec<usize> {
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let tol = rel_tol * best.abs().max(1.0);
    (0..values.len())
        .filter(|&v| values[v] <= best + tol)
        .collect()
}

/// A graph with a defense set grounded through gain `kappa`.
#[derive(Debug, Clone)]
pub struct GroundedSystem<'g> {
    base: &'g Graph,
    defense: Vec<usize>,
    gain: f64,
    lbar: DMatrix<f64>,
}

impl<'g> GroundedSystem<'g> {
    pub fn new(base: &'g Graph, defense: &[usize], gain: f64) -> Result<Self> {
        if defense.is_empty() {
            return Err(Error::config(
                "grounded system needs a nonempty defense set",
            ));
        }
        if !(gain.is_finite() && gain > 0.0) {
            return Err(Error::config(format!("gain must be positive, got {gain}")));
        }
        let mut lbar = laplacian(base);
        let mut defense = defense.to_vec();
        defense.sort_unstable();
        defense.dedup();
        for &d in &defense {
            if d >= base.n() {
                return Err(Error::config(format!(
                    "defense node {d} out of range for n = {}",
                    base.n()
                )));
            }
            lbar[(d, d)] += gain;
        }
        Ok(GroundedSystem {
            base,
            defense,
            gain,
            lbar,
        })
    }

    pub fn base(&self) -> &Graph {
        self.base
    }

    pub fn defense(&self) -> &[usize] {
        &self.defense
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    /// `L̄ = L + kappa * D_y`.
    pub fn lbar(&self) -> &DMatrix<f64> {
        &self.lbar
    }

    pub fn inverse(&self) -> Result<DMatrix<f64>> {
        Cholesky::new(self.lbar.clone())
            .map(|c| c.inverse())
            .ok_or_else(|| Error::Singular("grounded Laplacian is not positive definite".into()))
    }
}

/// Diagonal of `L̄⁻¹`, i.e. the resistance from each node to the virtual ground.
pub fn grounded_inverse_diag(gs: &GroundedSystem<'_>) -> Result<Vec<f64>> {
    let inv = gs.inverse()?;
    Ok(inv.diagonal().iter().copied().collect())
}

/// The `(n + 1)`-node graph with the virtual ground at index `n`, joined to
/// every defense node by a conductance-`kappa` edge.
pub fn extended_graph(g: &Graph, defense: &[usize], gain: f64) -> Result<Graph> {
    let ground = g.n();
    let edges = g
        .edges()
        .iter()
        .map(|e| (e.i, e.j, e.w))
        .chain(defense.iter().map(|&d| (d, ground, gain)));
    Graph::new(g.n() + 1, edges)
}
