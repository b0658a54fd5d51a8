//! Graph files, run configurations and report persistence.
//!
//! Graphs are read from an edge list (`i j [w]` per line, `#` comments) or
//! from JSON `{"n": 3, "edges": [[0, 1], [1, 2, 2.5]]}`. Node tokens that are
//! not all integers are treated as labels and numbered in order of first
//! appearance.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::dynamics::ControlLaw;
use crate::error::{Error, Result};
use crate::game::{GameMatrix, Sweep, SweepRow};
use crate::graph::{degree_profile, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a graph, choosing the format from the extension (`.json`) or the
/// first non-blank character.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    let is_json =
        path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    if is_json {
        parse_graph_json(&text)
    } else {
        parse_edge_list(&text)
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 2 || toks.len() > 3 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected `i j [w]`, got {} fields", toks.len()),
            });
        }
        let w = match toks.get(2) {
            Some(t) => t.parse::<f64>().map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: format!("bad weight `{t}`: {e}"),
            })?,
            None => 1.0,
        };
        raw.push((lineno + 1, toks[0].to_string(), toks[1].to_string(), w));
    }
    if raw.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no edges".into(),
        });
    }
    let numeric = raw
        .iter()
        .all(|(_, a, b, _)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());
    if numeric {
        let edges: Vec<(usize, usize, f64)> = raw
            .iter()
            .map(|(_, a, b, w)| (a.parse().unwrap(), b.parse().unwrap(), *w))
            .collect();
        let n = edges.iter().map(|&(i, j, _)| i.max(j)).max().unwrap() + 1;
        return Graph::new(n, edges);
    }
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for (_, a, b, w) in raw {
        let mut id = |s: String| {
            *ids.entry(s.clone()).or_insert_with(|| {
                names.push(s);
                names.len() - 1
            })
        };
        let i = id(a);
        let j = id(b);
        edges.push((i, j, w));
    }
    Graph::new(names.len(), edges)?.with_names(names)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<Vec<serde_json::Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    graph_from_json(raw)
}

fn graph_from_json(raw: GraphJson) -> Result<Graph> {
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (k, e) in raw.edges.iter().enumerate() {
        let bad = || Error::InvalidGraph(format!("edge #{k} must be [i, j] or [i, j, w]"));
        if e.len() < 2 || e.len() > 3 {
            return Err(bad());
        }
        let i = e[0].as_u64().ok_or_else(bad)? as usize;
        let j = e[1].as_u64().ok_or_else(bad)? as usize;
        let w = match e.get(2) {
            Some(v) => v.as_f64().ok_or_else(bad)?,
            None => 1.0,
        };
        edges.push((i, j, w));
    }
    let g = Graph::new(raw.n, edges)?;
    match raw.names {
        Some(names) => g.with_names(names),
        None => Ok(g),
    }
}

fn graph_to_json(g: &Graph) -> GraphJson {
    GraphJson {
        n: g.n(),
        edges: g
            .edges()
            .iter()
            .map(|e| {
                let mut v = vec![e.i.into(), e.j.into()];
                if e.w != 1.0 {
                    v.push(e.w.into());
                }
                v
            })
            .collect(),
        names: g.names().map(|n| n.to_vec()),
    }
}

/// Edge-list text. Unit weights are omitted; other weights use the shortest
/// representation that parses back to the same `f64`.
pub fn to_edge_list(g: &Graph) -> String {
    let label = |v: usize| match g.names() {
        Some(names) => names[v].clone(),
        None => v.to_string(),
    };
    let mut out = String::new();
    for e in g.edges() {
        if e.w == 1.0 {
            out.push_str(&format!("{} {}\n", label(e.i), label(e.j)));
        } else {
            out.push_str(&format!("{} {} {}\n", label(e.i), label(e.j), e.w));
        }
    }
    out
}

pub fn to_graph_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&graph_to_json(g)).expect("graph json")
}

pub fn write_graph(g: &Graph, path: &Path, format: GraphFormat) -> Result<()> {
    match format {
        GraphFormat::EdgeList => write(path, &to_edge_list(g)),
        GraphFormat::Json => write(path, &to_graph_json(g)),
    }
}

/// A graph given either as a file path or inline.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSource {
    Path(PathBuf),
    Inline {
        n: usize,
        edges: Vec<Vec<serde_json::Value>>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
}

impl GraphSource {
    /// Relative paths resolve against `base` when given.
    pub fn load(&self, base: Option<&Path>) -> Result<Graph> {
        match self {
            GraphSource::Path(p) => {
                let p = match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p.clone(),
                };
                load_graph(&p)
            }
            GraphSource::Inline { n, edges, names } => graph_from_json(GraphJson {
                n: *n,
                edges: edges.clone(),
                names: names.clone(),
            }),
        }
    }
}

/// Everything a command may need. Fields irrelevant to a command are ignored.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default)]
    pub graph: Option<GraphSource>,
    #[serde(default)]
    pub law: Option<ControlLaw>,
    #[serde(default)]
    pub gain: Option<f64>,
    #[serde(default)]
    pub gains: Option<Vec<f64>>,
    #[serde(default, alias = "budget")]
    pub f: Option<usize>,
    #[serde(default)]
    pub defense: Option<Vec<usize>>,
    #[serde(default)]
    pub attack: Option<Vec<usize>>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// What a command requires from a [`RunConfig`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Requirements {
    pub law: bool,
    pub gain: bool,
    pub gains: bool,
    pub budget: bool,
    pub attack: bool,
    /// Defender and attacker budgets must match when both sets are given.
    pub equal_budgets: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            msg: e.to_string(),
        })
    }

    /// Every violated constraint, given the loaded graph (if any).
    pub fn violations(&self, g: Option<&Graph>, req: Requirements) -> Vec<String> {
        let mut out = Vec::new();
        if req.law && self.law.is_none() {
            out.push("control law (--law 1|2) is required".to_string());
        }
        if req.gain {
            match self.gain {
                None => out.push("gain (--gain) is required".to_string()),
                Some(k) if !(k.is_finite() && k > 0.0) => {
                    out.push(format!("gain must be positive, got {k}"))
                }
                _ => {}
            }
        }
        if req.gains {
            match &self.gains {
                None => out.push("gain grid (--gains) is required".to_string()),
                Some(v) if v.is_empty() => out.push("gain grid is empty".to_string()),
                Some(v) => {
                    for k in v {
                        if !(k.is_finite() && *k > 0.0) {
                            out.push(format!("gain must be positive, got {k}"));
                        }
                    }
                }
            }
        }
        let n = g.map(|g| g.n());
        if req.budget {
            match (self.f, n) {
                (None, _) => out.push("budget (--f) is required".to_string()),
                (Some(0), _) => out.push("budget f must be at least 1".to_string()),
                (Some(f), Some(n)) if f > n => out.push(format!("budget f = {f} exceeds n = {n}")),
                _ => {}
            }
        }
        if req.attack && self.attack.as_ref().is_none_or(|a| a.is_empty()) {
            out.push("attack set (--attack) is required".to_string());
        }
        if self.law == Some(ControlLaw::RelVelocity)
            && req.attack
            && self.defense.as_ref().is_none_or(|d| d.is_empty())
        {
            out.push("control law 2 needs a nonempty defense set".to_string());
        }
        for (name, set) in [("defense", &self.defense), ("attack", &self.attack)] {
            if let (Some(set), Some(n)) = (set, n) {
                for &v in set {
                    if v >= n {
                        out.push(format!("{name} node {v} out of range for n = {n}"));
                    }
                }
                let mut s = set.clone();
                s.sort_unstable();
                s.dedup();
                if s.len() != set.len() {
                    out.push(format!("{name} set has repeated nodes"));
                }
            }
        }
        if req.equal_budgets {
            if let (Some(d), Some(a)) = (&self.defense, &self.attack) {
                if !d.is_empty() && d.len() != a.len() {
                    out.push(format!(
                        "defense budget {} differs from attack budget {}",
                        d.len(),
                        a.len()
                    ));
                }
            }
            if let (Some(f), Some(d)) = (self.f, &self.defense) {
                if d.len() != f {
                    out.push(format!("defense set has {} nodes, budget is {f}", d.len()));
                }
            }
        }
        out
    }
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    write(path, &(text + "\n"))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })
}

fn set_text(s: &[usize]) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_set(s: &str) -> std::result::Result<Vec<usize>, std::num::ParseIntError> {
    s.split_whitespace().map(|t| t.parse()).collect()
}

fn csv_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        msg: e.to_string(),
    }
}

/// Sweep table as CSV with header `kappa,defender,attacker,value`; node sets
/// are space-separated.
pub fn sweep_to_csv(s: &Sweep) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kappa", "defender", "attacker", "value"])
        .expect("in-memory csv");
    for r in &s.rows {
        w.write_record([
            r.kappa.to_string(),
            set_text(&r.defender),
            set_text(&r.attacker),
            r.value.to_string(),
        ])
        .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8")
}

pub fn read_sweep_csv(path: &Path) -> Result<Sweep> {
    let text = read(path)?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        if rec.len() != 4 {
            return Err(csv_error(path, "expected 4 columns"));
        }
        rows.push(SweepRow {
            kappa: rec[0].parse().map_err(|e| csv_error(path, e))?,
            defender: parse_set(&rec[1]).map_err(|e| csv_error(path, e))?,
            attacker: parse_set(&rec[2]).map_err(|e| csv_error(path, e))?,
            value: rec[3].parse().map_err(|e| csv_error(path, e))?,
        });
    }
    let switches = rows
        .windows(2)
        .filter(|w| w[0].attacker != w[1].attacker)
        .map(|w| crate::game::Switch {
            lo: w[0].kappa,
            hi: w[1].kappa,
            from: w[0].attacker.clone(),
            to: w[1].attacker.clone(),
        })
        .collect();
    Ok(Sweep { rows, switches })
}

/// Game matrix as CSV. Header and row labels are `rank:[nodes]`.
pub fn matrix_to_csv(m: &GameMatrix) -> String {
    let label = |r: usize| format!("{}:[{}]", r, set_text(&m.subset(r)));
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["defender\\attacker".to_string()];
    header.extend((0..m.size()).map(label));
    w.write_record(&header).expect("in-memory csv");
    for i in 0..m.size() {
        let mut rec = vec![label(i)];
        rec.extend((0..m.size()).map(|j| m.get(i, j).to_string()));
        w.write_record(&rec).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8")
}

/// Reads the values of a matrix CSV back, row-major.
pub fn read_matrix_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = read(path)?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let row = rec
            .iter()
            .skip(1)
            .map(|v| v.parse::<f64>().map_err(|e| csv_error(path, e)))
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    Ok(out)
}

pub fn write_text(text: &str, path: &Path) -> Result<()> {
    write(path, text)
}

/// Degree, distance and resistance centralities of a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityReport {
    pub n: usize,
    pub degrees: Vec<f64>,
    pub delta1: f64,
    pub delta2: f64,
    pub max_degree_nodes: Vec<usize>,
    pub nash_threshold: f64,
    pub eccentricities: Vec<usize>,
    pub center: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_eccentricities: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_center: Option<Vec<usize>>,
}

pub fn centrality_report(g: &Graph, effective: bool) -> CentralityReport {
    let prof = degree_profile(g);
    CentralityReport {
        n: g.n(),
        nash_threshold: (prof.delta1 - prof.delta2) / (prof.delta2 + 1.0),
        delta1: prof.delta1,
        delta2: prof.delta2,
        max_degree_nodes: prof.argmax.clone(),
        degrees: prof.degrees,
        eccentricities: crate::graph::eccentricities(g),
        center: crate::graph::center(g),
        effective_eccentricities: effective.then(|| crate::resistance::effective_eccentricities(g)),
        effective_center: effective.then(|| crate::resistance::effective_center(g)),
    }
}
