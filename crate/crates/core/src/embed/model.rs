use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ears::ear_decomposition;
use crate::io::{GraphJson, LabeledGraph};
use crate::planar::{edge_key, PlaneGraph};
use crate::reduce::{edge_keyed, reduce};
use crate::universal::{FaceId, GAddress, Truncation};

use super::{EmbedError, EmbedOptions, Embedder, StepRecord};

/// Which faces of the universal graph the host truncation has expanded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostLevelMap {
    pub max_level: usize,
    pub expanded: Vec<FaceId>,
}

impl HostLevelMap {
    pub fn of(t: &Truncation) -> Self {
        let mut expanded: Vec<FaceId> = t.expanded_faces().cloned().collect();
        expanded.sort();
        HostLevelMap {
            max_level: expanded.iter().map(|f| f.depth() + 1).max().unwrap_or(0),
            expanded,
        }
    }

    /// Rebuilds the host by expanding the listed faces.
    pub fn rebuild(&self, cap: usize) -> Result<Truncation, crate::universal::UniversalError> {
        let mut t = Truncation::with_cap(cap);
        let mut faces = self.expanded.clone();
        faces.sort_by_key(|f| f.depth());
        for f in &faces {
            t.ensure_expanded(f)?;
        }
        Ok(t)
    }
}

/// Branch sets and branch paths of an inflated copy of `input` in the
/// universal graph. Keys are the input's vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    #[serde(with = "edge_keyed")]
    pub branch_paths: BTreeMap<(usize, usize), Vec<GAddress>>,
    pub branch_sets: BTreeMap<usize, Vec<GAddress>>,
    pub host_level_map: HostLevelMap,
    pub input: GraphJson,
}

impl MinorModel {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    /// Replaces internal vertex ids `0..n` by `labels`.
    pub fn relabel(mut self, labeled: &LabeledGraph) -> Self {
        let l = &labeled.labels;
        self.branch_sets = std::mem::take(&mut self.branch_sets).into_iter().map(|(v, s)| (l[v], s)).collect();
        self.branch_paths = std::mem::take(&mut self.branch_paths)
            .into_iter()
            .map(|((u, v), mut p)| {
                let (a, b) = (l[u], l[v]);
                if a > b {
                    p.reverse();
                    ((b, a), p)
                } else {
                    ((a, b), p)
                }
            })
            .collect();
        self.input = labeled.to_json();
        self
    }
}

/// A model together with the host it lives in and the per-step records.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub model: MinorModel,
    pub host: Truncation,
    pub steps: Vec<StepRecord>,
}

fn addresses(t: &Truncation, path: &[usize]) -> Vec<GAddress> {
    path.iter().map(|&v| t.address(v).clone()).collect()
}

/// Embeds a sub-cubic 2-connected plane graph.
pub fn embed(g: &PlaneGraph, opts: EmbedOptions) -> Result<Embedding, EmbedError> {
    let mut e = Embedder::new(g, opts)?;
    let dec = ear_decomposition(g, opts.edge_order)?;
    let mut steps = vec![e.base(&dec.base_cycle)?];
    for ear in &dec.ears {
        steps.push(e.ear(ear)?);
    }
    let host = e.host().clone();
    let model = MinorModel {
        branch_sets: (0..g.vertex_count()).map(|v| (v, addresses(&host, e.phi_vertex(v)))).collect(),
        branch_paths: e.phi_edges().iter().map(|(&k, p)| (k, addresses(&host, p))).collect(),
        host_level_map: HostLevelMap::of(&host),
        input: GraphJson::from_plane(g),
    };
    Ok(Embedding { model, host, steps })
}

/// Embeds any plane graph by reducing it first and pulling the model back
/// through the reduction witness.
pub fn embed_any(g: &PlaneGraph, opts: EmbedOptions) -> Result<Embedding, EmbedError> {
    let (reduced, witness) = reduce(g)?;
    let inner = embed(&reduced, opts)?;
    let sets = &inner.model.branch_sets;
    let paths = &inner.model.branch_paths;
    // Edge image oriented from the image of `a`.
    let edge_image = |a: usize, b: usize| -> Vec<GAddress> {
        let mut p = paths[&edge_key(a, b)].clone();
        if a > b {
            p.reverse();
        }
        p
    };

    let mut branch_sets = BTreeMap::new();
    for (&v, blow) in &witness.blowup {
        if g.degree(v) == 0 {
            branch_sets.insert(v, vec![sets[&blow[0]][0].clone()]);
            continue;
        }
        let mut set: Vec<GAddress> = Vec::new();
        for &x in blow {
            set.extend(sets[&x].iter().cloned());
        }
        for (i, &x) in blow.iter().enumerate() {
            for &y in &blow[i + 1..] {
                if reduced.has_edge(x, y) {
                    let p = edge_image(x, y);
                    set.extend(p[1..p.len() - 1].iter().cloned());
                }
            }
        }
        branch_sets.insert(v, set);
    }

    let mut branch_paths = BTreeMap::new();
    for (&(u, v), route) in &witness.edge_map {
        let mut out: Vec<GAddress> = Vec::new();
        for (k, w) in route.windows(2).enumerate() {
            let seg = edge_image(w[0], w[1]);
            if k > 0 {
                // Walk along the image of the shared vertex between the two
                // attachment points.
                let through = &sets[&w[0]];
                let a = through.iter().position(|x| x == out.last().unwrap()).unwrap();
                let b = through.iter().position(|x| *x == seg[0]).unwrap();
                let link: Vec<GAddress> = if a <= b {
                    through[a..=b].to_vec()
                } else {
                    through[b..=a].iter().rev().cloned().collect()
                };
                out.extend(link[1..].iter().cloned());
                out.extend(seg[1..].iter().cloned());
            } else {
                out = seg;
            }
        }
        branch_paths.insert((u, v), out);
    }

    let model = MinorModel {
        branch_sets,
        branch_paths,
        host_level_map: inner.model.host_level_map.clone(),
        input: GraphJson::from_plane(g),
    };
    Ok(Embedding {
        model,
        host: inner.host,
        steps: inner.steps,
    })
}
