use nalgebra::DMatrix;
use rayon::prelude::*;

use super::payoff::{abs_velocity_element, j1_with, j2_with};
use super::subsets::SubsetIndex;
use crate::dynamics::ControlLaw;
use crate::error::{Error, Result};
use crate::graph::{degree_profile, Graph};
use crate::resistance::{grounded_inverse_diag, GroundedSystem};

/// Payoff matrix over defender rows and attacker columns.
///
/// Entry `(i, j)` is the payoff when the defender plays subset `i` and the
/// attacker subset `j`, both indexed by [`SubsetIndex`]. The defender
/// minimizes, the attacker maximizes.
#[derive(Debug, Clone, PartialEq)]
pub struct GameMatrix {
    pub law: ControlLaw,
    pub gain: f64,
    pub index: SubsetIndex,
    pub values: DMatrix<f64>,
}

impl GameMatrix {
    pub fn budget(&self) -> usize {
        self.index.f()
    }

    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[(row, col)]
    }

    pub fn subset(&self, rank: usize) -> Vec<usize> {
        self.index.unrank(rank)
    }
}

/// Builds the full `C(n,f) × C(n,f)` game.
///
/// Law-1 cells are computed from `H⁻¹` and checked against the split
/// element formula; a disagreement beyond `1e-12` is an error.
pub fn build_matrix(
    g: &Graph,
    gain: f64,
    f: usize,
    law: ControlLaw,
    cap: usize,
) -> Result<GameMatrix> {
    if !(gain.is_finite() && gain > 0.0) {
        return Err(Error::config(format!("gain must be positive, got {gain}")));
    }
    let index = SubsetIndex::new(g.n(), f, cap)?;
    let size = index.len();
    let subsets: Vec<Vec<usize>> = index.iter().collect();
    let degrees = degree_profile(g).degrees;

    let rows: Vec<Vec<f64>> = subsets
        .par_iter()
        .enumerate()
        .map(|(r, defense)| -> Result<Vec<f64>> {
            match law {
                ControlLaw::AbsVelocity => {
                    let mut hinv = vec![1.0; g.n()];
                    for &d in defense {
                        hinv[d] = 1.0 / (1.0 + gain);
                    }
                    subsets
                        .iter()
                        .enumerate()
                        .map(|(c, attack)| {
                            let v = j1_with(&degrees, &hinv, attack);
                            let e = abs_velocity_element(&degrees, gain, attack, defense);
                            if (v - e).abs() > 1e-12 * v.abs().max(1.0) {
                                return Err(Error::ElementMismatch {
                                    row: r,
                                    col: c,
                                    got: v,
                                    expected: e,
                                });
                            }
                            Ok(v)
                        })
                        .collect()
                }
                ControlLaw::RelVelocity => {
                    let diag = grounded_inverse_diag(&GroundedSystem::new(g, defense, gain)?)?;
                    Ok(subsets
                        .iter()
                        .map(|attack| j2_with(&diag, attack))
                        .collect())
                }
            }
        })
        .collect::<Result<_>>()?;

    let values = DMatrix::from_fn(size, size, |i, j| rows[i][j]);
    Ok(GameMatrix {
        law,
        gain,
        index,
        values,
    })
}
