//! Deterministic and seeded-random graph families used by tests, sweeps and
//! the verification ensembles.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::unweighted(n, &edges).expect("path is connected")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    Graph::unweighted(n, &edges).expect("cycle is connected")
}

/// Star on `n` nodes with hub 0.
pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::unweighted(n, &edges).expect("star is connected")
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Graph::unweighted(n, &edges).expect("complete graph is connected")
}

/// Clique on `0..k` with a path of `tail` extra nodes hanging off node `k - 1`.
pub fn clique_with_tail(k: usize, tail: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, j));
        }
    }
    for t in 0..tail {
        edges.push((k - 1 + t, k + t));
    }
    Graph::unweighted(k + tail, &edges).expect("clique with tail is connected")
}

/// Uniform random recursive tree with shuffled labels.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let edges: Vec<_> = (1..n)
        .map(|v| (labels[rng.gen_range(0..v)], labels[v]))
        .collect();
    Graph::unweighted(n, &edges).expect("tree is connected")
}

/// Random spanning tree plus each remaining pair independently with
/// probability `p`. Unit weights.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let pairs = random_pairs(n, p, rng);
    Graph::unweighted(n, &pairs).expect("spanning tree keeps the graph connected")
}

/// As [`random_connected`] with weights drawn uniformly from `[lo, hi)`.
pub fn random_weighted<R: Rng + ?Sized>(n: usize, p: f64, lo: f64, hi: f64, rng: &mut R) -> Graph {
    let pairs = random_pairs(n, p, rng);
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(i, j)| (i, j, rng.gen_range(lo..hi)))
        .collect();
    Graph::new(n, edges).expect("spanning tree keeps the graph connected")
}

fn random_pairs<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let tree = random_tree(n, rng);
    let mut pairs: Vec<_> = tree.edges().iter().map(|e| (e.i, e.j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !tree.has_edge(i, j) && rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// A pair `(i, j)` not yet joined by an edge, or `None` for complete graphs.
pub fn random_non_edge<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Option<(usize, usize)> {
    let mut missing = Vec::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if !g.has_edge(i, j) {
                missing.push((i, j));
            }
        }
    }
    missing.choose(rng).copied()
}
