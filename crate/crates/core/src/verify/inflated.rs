use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::embed::MinorModel;
use crate::io::GraphJson;
use crate::universal::GAddress;

use super::{HostGraph, VerifyError};

/// The four conditions on an inflated copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// Every branch set is non-empty and connected.
    #[serde(rename = "i")]
    Connected,
    /// Every branch path is a path joining the branch sets of its ends.
    #[serde(rename = "ii")]
    Paths,
    /// Branch sets and branch path interiors are pairwise disjoint.
    #[serde(rename = "iii")]
    Disjoint,
    /// Branch sets and paths correspond exactly to the vertices and edges of
    /// the input.
    #[serde(rename = "iv")]
    Covers,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Connected => "(i) branch sets connected",
            Condition::Paths => "(ii) branch paths",
            Condition::Disjoint => "(iii) pairwise disjoint",
            Condition::Covers => "(iv) image is the input",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub condition: Condition,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn verdict(&self, c: Condition) -> &Verdict {
        self.verdicts.iter().find(|v| v.condition == c).expect("all conditions reported")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            let status = if v.pass { "pass" } else { "FAIL" };
            match &v.witness {
                Some(w) => writeln!(f, "{status} {}: {w}", v.condition)?,
                None => writeln!(f, "{status} {}", v.condition)?,
            }
        }
        Ok(())
    }
}

fn verdict(condition: Condition, failure: Option<String>) -> Verdict {
    Verdict {
        condition,
        pass: failure.is_none(),
        witness: failure,
    }
}

/// Checks a model stored with universal-graph addresses against `g`.
pub fn check_inflated_copy<H: HostGraph<Vertex = GAddress>>(
    model: &MinorModel,
    g: &GraphJson,
    host: &H,
) -> Result<Report, VerifyError> {
    check_model(&model.branch_sets, &model.branch_paths, &g.vertices, &g.edges, host)
}

/// Checks branch sets and branch paths against the graph with the given
/// vertices and edges. Paths may run in either direction.
pub fn check_model<H: HostGraph>(
    sets: &BTreeMap<usize, Vec<H::Vertex>>,
    paths: &BTreeMap<(usize, usize), Vec<H::Vertex>>,
    vertices: &[usize],
    edges: &[(usize, usize)],
    host: &H,
) -> Result<Report, VerifyError> {
    for x in sets.values().flatten().chain(paths.values().flatten()) {
        if !host.contains(x) {
            return Err(VerifyError::DanglingAddress(x.to_string()));
        }
    }
    let verdicts = vec![
        verdict(Condition::Connected, connected(sets, host)),
        verdict(Condition::Paths, joined(sets, paths, host)),
        verdict(Condition::Disjoint, disjoint(sets, paths)),
        verdict(Condition::Covers, covers(sets, paths, vertices, edges)),
    ];
    Ok(Report { verdicts })
}

fn connected<H: HostGraph>(sets: &BTreeMap<usize, Vec<H::Vertex>>, host: &H) -> Option<String> {
    for (v, set) in sets {
        let set: Vec<H::Vertex> = set.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if set.is_empty() {
            return Some(format!("branch set of {v} is empty"));
        }
        let mut adj = vec![Vec::new(); set.len()];
        for (i, j) in host.edges_within(&set) {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; set.len()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Some(format!("branch set of {v}: {} is not connected to {}", set[i], set[0]));
        }
    }
    None
}

fn joined<H: HostGraph>(
    sets: &BTreeMap<usize, Vec<H::Vertex>>,
    paths: &BTreeMap<(usize, usize), Vec<H::Vertex>>,
    host: &H,
) -> Option<String> {
    let member = |v: usize, x: &H::Vertex| sets.get(&v).is_some_and(|s| s.contains(x));
    for (&(u, v), p) in paths {
        if p.len() < 2 {
            return Some(format!("path of {u}-{v} has {} vertices", p.len()));
        }
        let (a, b) = (&p[0], &p[p.len() - 1]);
        if !(member(u, a) && member(v, b) || member(v, a) && member(u, b)) {
            return Some(format!("path of {u}-{v} runs from {a} to {b}, not between the two branch sets"));
        }
        for w in p.windows(2) {
            if !host.is_edge(&w[0], &w[1]) {
                return Some(format!("path of {u}-{v}: {} and {} are not adjacent", w[0], w[1]));
            }
        }
        let mut seen = BTreeSet::new();
        for x in p {
            if !seen.insert(x) {
                return Some(format!("path of {u}-{v} repeats {x}"));
            }
        }
    }
    None
}

fn disjoint<V: Clone + Ord + fmt::Display>(
    sets: &BTreeMap<usize, Vec<V>>,
    paths: &BTreeMap<(usize, usize), Vec<V>>,
) -> Option<String> {
    let mut owner: BTreeMap<&V, String> = BTreeMap::new();
    for (v, set) in sets {
        for x in set.iter().collect::<BTreeSet<_>>() {
            if let Some(o) = owner.insert(x, format!("branch set of {v}")) {
                return Some(format!("{x} is in {o} and in the branch set of {v}"));
            }
        }
    }
    for (&(u, v), p) in paths {
        if p.len() < 2 {
            continue;
        }
        for x in &p[1..p.len() - 1] {
            if let Some(o) = owner.insert(x, format!("path of {u}-{v}")) {
                return Some(format!("{x} is in {o} and inside the path of {u}-{v}"));
            }
        }
    }
    None
}

fn covers<V>(
    sets: &BTreeMap<usize, Vec<V>>,
    paths: &BTreeMap<(usize, usize), Vec<V>>,
    vertices: &[usize],
    edges: &[(usize, usize)],
) -> Option<String> {
    let want_v: BTreeSet<usize> = vertices.iter().copied().collect();
    let have_v: BTreeSet<usize> = sets.keys().copied().collect();
    if let Some(v) = want_v.symmetric_difference(&have_v).next() {
        let which = if want_v.contains(v) { "has no branch set" } else { "is not an input vertex" };
        return Some(format!("vertex {v} {which}"));
    }
    let want_e: BTreeSet<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let have_e: BTreeSet<(usize, usize)> = paths.keys().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    if have_e.len() != paths.len() {
        return Some("an edge has two branch paths".into());
    }
    if let Some((u, v)) = want_e.symmetric_difference(&have_e).next() {
        let which = if want_e.contains(&(*u, *v)) { "has no branch path" } else { "is not an input edge" };
        return Some(format!("edge {u}-{v} {which}"));
    }
    None
}
