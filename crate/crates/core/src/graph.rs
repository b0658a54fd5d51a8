//! Undirected weighted graphs, Laplacians, degrees and hop-distance centrality.

use std::collections::{BTreeSet, VecDeque};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// An undirected edge with `i < j` and positive conductance `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

/// Connected simple undirected graph on nodes `0..n`.
///
/// Immutable after construction. Edges are stored sorted by `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    names: Option<Vec<String>>,
    adj: Vec<Vec<(usize, f64)>>,
}

impl Graph {
    /// Builds and validates a graph. Fails on self-loops, duplicate edges,
    /// out-of-range endpoints, non-positive weights or a disconnected result.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no nodes".into()));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at node {a}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has non-positive weight {w}"
                )));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((i, j)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
            out.push(Edge { i, j, w });
        }
        out.sort_by_key(|e| (e.i, e.j));

        let mut adj = vec![Vec::new(); n];
        for e in &out {
            adj[e.i].push((e.j, e.w));
            adj[e.j].push((e.i, e.w));
        }
        let g = Graph {
            n,
            edges: out,
            names: None,
            adj,
        };
        let comps = g.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected(comps));
        }
        Ok(g)
    }

    /// Unit-weight graph from an edge list.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges.iter().map(|&(i, j)| (i, j, 1.0)))
    }

    /// Attaches external node labels. `names.len()` must equal `n`.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "{} names for {} nodes",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Returns a new graph with one extra edge.
    pub fn with_edge(&self, i: usize, j: usize, w: f64) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .map(|e| (e.i, e.j, e.w))
            .chain(std::iter::once((i, j, w)));
        let g = Graph::new(self.n, edges)?;
        Ok(match &self.names {
            Some(names) => g.with_names(names.clone())?,
            None => g,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].iter().any(|&(k, _)| k == j)
    }

    /// Acyclic (connected with `n - 1` edges).
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// L = D - A with weighted degrees on the diagonal.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(g.n, g.n);
    for e in &g.edges {
        l[(e.i, e.j)] -= e.w;
        l[(e.j, e.i)] -= e.w;
        l[(e.i, e.i)] += e.w;
        l[(e.j, e.j)] += e.w;
    }
    l
}

/// Weighted degrees with the two largest values of the degree multiset.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    pub degrees: Vec<f64>,
    pub delta1: f64,
    /// Second largest element of the multiset, so a repeated maximum gives
    /// `delta2 == delta1`.
    pub delta2: f64,
    /// All nodes attaining `delta1`, ascending.
    pub argmax: Vec<usize>,
}

impl DegreeProfile {
    pub fn max_is_unique(&self) -> bool {
        self.argmax.len() == 1
    }
}

pub fn degree_profile(g: &Graph) -> DegreeProfile {
    let degrees: Vec<f64> = (0..g.n)
        .map(|v| g.adj[v].iter().map(|&(_, w)| w).sum())
        .collect();
    let mut sorted = degrees.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let delta1 = sorted[0];
    // a single-node graph has no second degree
    let delta2 = sorted.get(1).copied().unwrap_or(0.0);
    let argmax = (0..g.n).filter(|&v| degrees[v] == delta1).collect();
    DegreeProfile {
        degrees,
        delta1,
        delta2,
        argmax,
    }
}

/// All-pairs unweighted hop distances by BFS from every node.
pub fn distances(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n).map(|s| bfs(g, s)).collect()
}

fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &g.adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn eccentricities(g: &Graph) -> Vec<usize> {
    distances(g)
        .iter()
        .map(|row| row.iter().copied().max().unwrap_or(0))
        .collect()
}

/// Nodes of minimum eccentricity, ascending.
pub fn center(g: &Graph) -> Vec<usize> {
    let ecc = eccentricities(g);
    let best = ecc.iter().copied().min().unwrap_or(0);
    (0..g.n).filter(|&v| ecc[v] == best).collect()
}
