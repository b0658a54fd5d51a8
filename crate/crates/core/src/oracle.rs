//! Independent reference computations used to cross-check the main routes.
//!
//! Nothing here shares code paths with `resistance` or `game` beyond the
//! Laplacian assembly; the verification suites and tests rely on that.

use nalgebra::DMatrix;

use crate::graph::{laplacian, Graph};

/// `R(i, j)` by grounding node `j`: delete its row and column from `L` and
/// read the `i`-th diagonal entry of the inverse.
pub fn resistance_by_grounding(g: &Graph, i: usize, j: usize) -> f64 {
    if i == j {
        return 0.0;
    }
    let l = laplacian(g);
    let keep: Vec<usize> = (0..g.n()).filter(|&k| k != j).collect();
    let m = keep.len();
    let lg = DMatrix::from_fn(m, m, |a, b| l[(keep[a], keep[b])]);
    let inv = lg
        .try_inverse()
        .expect("grounded Laplacian of a connected graph is invertible");
    let pos = keep.iter().position(|&k| k == i).unwrap();
    inv[(pos, pos)]
}

pub fn effective_eccentricities_by_grounding(g: &Graph) -> Vec<f64> {
    (0..g.n())
        .map(|v| {
            (0..g.n())
                .map(|u| resistance_by_grounding(g, v, u))
                .fold(0.0, f64::max)
        })
        .collect()
}

/// Hop distances by Floyd-Warshall.
pub fn hop_distances_floyd(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for e in g.edges() {
        d[e.i][e.j] = 1;
        d[e.j][e.i] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Argmin of eccentricity computed from [`hop_distances_floyd`].
pub fn center_brute_force(g: &Graph) -> Vec<usize> {
    let d = hop_distances_floyd(g);
    let ecc: Vec<usize> = d.iter().map(|r| *r.iter().max().unwrap()).collect();
    let best = *ecc.iter().min().unwrap();
    (0..g.n()).filter(|&v| ecc[v] == best).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::{center, distances};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn floyd_agrees_with_bfs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let n = rng.gen_range(2..=9);
            let g = generators::random_connected(n, 0.25, &mut rng);
            assert_eq!(hop_distances_floyd(&g), distances(&g));
        }
    }

    #[test]
    fn center_matches_brute_force_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..25 {
            let g = generators::random_tree(8, &mut rng);
            assert_eq!(center(&g), center_brute_force(&g));
        }
    }
}
