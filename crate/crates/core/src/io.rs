//! Graph JSON and DOT.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::{build_embedding, PlanarError, PlaneGraph};
use crate::universal::Truncation;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// `{"vertices":[id...],"edges":[[u,v]...],"rotation":{id:[neighbor...]}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<usize, Vec<usize>>>,
}

/// A plane graph with the external id of each internal vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: PlaneGraph,
    pub labels: Vec<usize>,
}

impl GraphJson {
    /// Labels `0..n` with the graph's rotation system.
    pub fn from_plane(g: &PlaneGraph) -> Self {
        GraphJson {
            vertices: (0..g.vertex_count()).collect(),
            edges: g.edges(),
            rotation: Some((0..g.vertex_count()).map(|v| (v, g.neighbors(v).to_vec())).collect()),
        }
    }

    /// Builds the plane graph, embedding it if no rotation is given. Ids are
    /// mapped to `0..n` in listed order.
    pub fn to_plane(&self) -> Result<LabeledGraph, IoError> {
        let index: HashMap<usize, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if index.len() != self.vertices.len() {
            return Err(IoError::Malformed("duplicate vertex id".into()));
        }
        let id = |v: &usize| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| IoError::Malformed(format!("unknown vertex {v}")))
        };
        let edges = self
            .edges
            .iter()
            .map(|(u, v)| Ok((id(u)?, id(v)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        let rotation = match &self.rotation {
            None => None,
            Some(r) => Some(
                self.vertices
                    .iter()
                    .map(|v| r.get(v).map_or(Ok(Vec::new()), |ns| ns.iter().map(id).collect()))
                    .collect::<Result<Vec<_>, IoError>>()?,
            ),
        };
        let graph = build_embedding(self.vertices.len(), &edges, rotation)?;
        Ok(LabeledGraph {
            graph,
            labels: self.vertices.clone(),
        })
    }
}

impl LabeledGraph {
    pub fn unlabeled(graph: PlaneGraph) -> Self {
        let labels = (0..graph.vertex_count()).collect();
        LabeledGraph { graph, labels }
    }

    pub fn to_json(&self) -> GraphJson {
        let g = &self.graph;
        let l = &self.labels;
        GraphJson {
            vertices: l.clone(),
            edges: g.edges().into_iter().map(|(u, v)| (l[u], l[v])).collect(),
            rotation: Some((0..g.vertex_count()).map(|v| (l[v], g.neighbors(v).iter().map(|&u| l[u]).collect())).collect()),
        }
    }
}

pub fn read_graph(text: &str) -> Result<LabeledGraph, IoError> {
    serde_json::from_str::<GraphJson>(text)?.to_plane()
}

/// Truncation export: graph JSON on vertex indices plus an address table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruncationJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub addresses: BTreeMap<usize, String>,
}

pub fn truncation_json(t: &Truncation) -> TruncationJson {
    TruncationJson {
        graph: GraphJson::from_plane(&t.graph()),
        addresses: t.addresses().iter().enumerate().map(|(i, a)| (i, a.to_string())).collect(),
    }
}

/// Undirected DOT; `names` labels the vertices when given.
pub fn to_dot(g: &PlaneGraph, names: Option<&[String]>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        match names {
            Some(n) => writeln!(s, "  {v} [label=\"{}\"];", n[v]).unwrap(),
            None => writeln!(s, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(s, "  {u} -- {v};").unwrap();
    }
    s.push_str("}\n");
    s
}
