//! JSON formats.
//!
//! Graph: `{"vertices": [..], "edges": [{"u", "v", "mult"}]}` with `mult`
//! defaulting to 1. Signed graphs add `"signs": [1, -1, ..]` per edge.
//! Instances add `"lists": {vertex: [colors]}` and
//! `"matchings": [{"u", "v", "pairs": [[cu, cv], ..]}]`. Several entries
//! for one vertex pair are merged. Output is canonical: keys sorted,
//! vertices sorted, edges and matchings ordered by vertex index.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{Color, DPInstance, InstanceError, ListAssignment, MatchingAssignment, Transversal};
use crate::multigraph::{GraphError, Multigraph};
use crate::signed::{SignedError, SignedGraph};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Signed(#[from] SignedError),
    #[error("lists name unknown vertex {0}")]
    UnknownListVertex(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    u: String,
    v: String,
    #[serde(default = "one")]
    mult: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<Vec<i8>>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairsJson {
    u: String,
    v: String,
    pairs: Vec<(Color, Color)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileJson {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lists: Option<BTreeMap<String, BTreeSet<Color>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matchings: Option<Vec<PairsJson>>,
}

impl FileJson {
    fn graph(&self) -> Result<Multigraph, IoError> {
        let mut g = Multigraph::new(self.vertices.iter().map(String::as_str))?;
        for e in &self.edges {
            g.add_edge(&e.u, &e.v, e.mult)?;
        }
        Ok(g)
    }
}

fn graph_edges(g: &Multigraph) -> Vec<EdgeJson> {
    g.pairs()
        .map(|(u, v, mult)| EdgeJson { u: g.name(u).into(), v: g.name(v).into(), mult, signs: None })
        .collect()
}

fn canonical(value: &impl Serialize) -> String {
    // serde_json::Value keeps object keys in a BTreeMap
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_graph(text: &str) -> Result<Multigraph, IoError> {
    let f: FileJson = serde_json::from_str(text)?;
    f.graph()
}

pub fn graph_to_json(g: &Multigraph) -> String {
    canonical(&FileJson { vertices: g.vertices().to_vec(), edges: graph_edges(g), lists: None, matchings: None })
}

/// Parses an instance. Vertices missing from `"lists"` get empty lists.
/// The instance is not validated; see [`DPInstance::validate`].
pub fn parse_instance(text: &str) -> Result<DPInstance, IoError> {
    let f: FileJson = serde_json::from_str(text)?;
    let g = f.graph()?;
    let lists = parse_lists_map(&g, f.lists.unwrap_or_default())?;
    let mut m = MatchingAssignment::new();
    for p in f.matchings.unwrap_or_default() {
        let u = g.index(&p.u).ok_or_else(|| GraphError::UnknownVertex(p.u.clone()))?;
        let v = g.index(&p.v).ok_or_else(|| GraphError::UnknownVertex(p.v.clone()))?;
        if u == v {
            return Err(GraphError::Loop(p.u).into());
        }
        for (a, b) in p.pairs {
            m.insert(u, a, v, b);
        }
    }
    Ok(DPInstance::new(g, lists, m)?)
}

fn parse_lists_map(g: &Multigraph, map: BTreeMap<String, BTreeSet<Color>>) -> Result<ListAssignment, IoError> {
    let mut lists = vec![BTreeSet::new(); g.vertex_count()];
    for (name, l) in map {
        let u = g.index(&name).ok_or(IoError::UnknownListVertex(name))?;
        lists[u] = l;
    }
    Ok(ListAssignment::new(lists))
}

/// Lists file: `{vertex: [colors]}` over the vertices of `g`.
pub fn parse_lists(g: &Multigraph, text: &str) -> Result<ListAssignment, IoError> {
    parse_lists_map(g, serde_json::from_str(text)?)
}

pub fn instance_to_json(inst: &DPInstance) -> String {
    let g = inst.graph();
    let lists = (0..g.vertex_count()).map(|u| (g.name(u).to_string(), inst.list(u).clone())).collect();
    let matchings = inst
        .matching()
        .iter()
        .filter(|(_, p)| !p.is_empty())
        .map(|(&(u, v), p)| PairsJson { u: g.name(u).into(), v: g.name(v).into(), pairs: p.iter().copied().collect() })
        .collect();
    canonical(&FileJson {
        vertices: g.vertices().to_vec(),
        edges: graph_edges(g),
        lists: Some(lists),
        matchings: Some(matchings),
    })
}

pub fn parse_signed(text: &str) -> Result<SignedGraph, IoError> {
    let f: FileJson = serde_json::from_str(text)?;
    let g = f.graph()?;
    let mut signs: BTreeMap<(String, String), Vec<i8>> = BTreeMap::new();
    for e in &f.edges {
        let key = if e.u <= e.v { (e.u.clone(), e.v.clone()) } else { (e.v.clone(), e.u.clone()) };
        let entry = signs.entry(key).or_default();
        match &e.signs {
            Some(s) => entry.extend(s),
            None => entry.extend(std::iter::repeat_n(1, e.mult as usize)),
        }
    }
    Ok(SignedGraph::new(g, signs)?)
}

pub fn signed_to_json(s: &SignedGraph) -> String {
    let g = s.graph();
    let edges = g
        .pairs()
        .map(|(u, v, mult)| EdgeJson {
            u: g.name(u).into(),
            v: g.name(v).into(),
            mult,
            signs: Some(s.signs(u, v).to_vec()),
        })
        .collect();
    canonical(&FileJson { vertices: g.vertices().to_vec(), edges, lists: None, matchings: None })
}

pub fn transversal_to_json(t: &Transversal) -> String {
    canonical(t.as_map())
}

pub fn to_canonical_json(value: &impl Serialize) -> String {
    canonical(value)
}

pub fn read_file(path: &str) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.into(), source })
}

pub fn write_file(path: &str, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Write { path: path.into(), source })
}
