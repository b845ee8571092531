//! Turning a finite plane graph into a sub-cubic 2-connected plane graph that
//! contains it as a minor, together with an explicit witness.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::{biconnected_components, cut_vertices, edge_key, is_two_connected, PlaneGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph has no vertices")]
    Empty,
}

/// How an original graph sits inside a reduced one.
///
/// Contracting every `blowup` set and deleting `added` gives back the
/// original graph, with `edge_map` naming the reduced path for each edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionWitness {
    pub blowup: BTreeMap<usize, Vec<usize>>,
    #[serde(with = "edge_keyed")]
    pub edge_map: BTreeMap<(usize, usize), Vec<usize>>,
    pub added: Added,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Added {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Serializes `(u, v)`-keyed maps with `"u-v"` string keys.
pub(crate) mod edge_keyed {
    use std::collections::BTreeMap;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, T: Serialize>(m: &BTreeMap<(usize, usize), T>, s: S) -> Result<S::Ok, S::Error> {
        let keyed: BTreeMap<String, &T> = m.iter().map(|((u, v), p)| (format!("{u}-{v}"), p)).collect();
        keyed.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: Deserialize<'de>>(
        d: D,
    ) -> Result<BTreeMap<(usize, usize), T>, D::Error> {
        let keyed = BTreeMap::<String, T>::deserialize(d)?;
        keyed
            .into_iter()
            .map(|(k, p)| {
                let (u, v) = k.split_once('-').ok_or_else(|| D::Error::custom(format!("bad edge key `{k}`")))?;
                let u = u.parse().map_err(D::Error::custom)?;
                let v = v.parse().map_err(D::Error::custom)?;
                Ok(((u, v), p))
            })
            .collect()
    }
}

impl ReductionWitness {
    pub fn identity(g: &PlaneGraph) -> Self {
        ReductionWitness {
            blowup: (0..g.vertex_count()).map(|v| (v, vec![v])).collect(),
            edge_map: g.edges().into_iter().map(|(u, v)| ((u, v), vec![u, v])).collect(),
            added: Added::default(),
        }
    }

    /// Fills `added` with everything of `reduced` not used by the witness.
    fn finish(mut self, reduced: &PlaneGraph) -> Self {
        let mut used_vertices: HashSet<usize> = HashSet::new();
        let mut used_edges: HashSet<(usize, usize)> = HashSet::new();
        let mut owner = vec![usize::MAX; reduced.vertex_count()];
        for (&v, set) in &self.blowup {
            for &x in set {
                owner[x] = v;
                used_vertices.insert(x);
            }
        }
        for (u, v) in reduced.edges() {
            if owner[u] != usize::MAX && owner[u] == owner[v] {
                used_edges.insert((u, v));
            }
        }
        for path in self.edge_map.values() {
            used_vertices.extend(path.iter().copied());
            for w in path.windows(2) {
                used_edges.insert(edge_key(w[0], w[1]));
            }
        }
        self.added = Added {
            vertices: (0..reduced.vertex_count()).filter(|v| !used_vertices.contains(v)).collect(),
            edges: reduced.edges().into_iter().filter(|e| !used_edges.contains(e)).collect(),
        };
        self
    }

    /// The witness of `g -> outer` given `self: g -> mid` and `next: mid -> outer`.
    pub fn then(&self, next: &ReductionWitness, outer: &PlaneGraph) -> ReductionWitness {
        let blowup: BTreeMap<usize, Vec<usize>> = self
            .blowup
            .iter()
            .map(|(&v, set)| {
                let mut s: Vec<usize> = set.iter().flat_map(|x| next.blowup[x].iter().copied()).collect();
                s.sort_unstable();
                (v, s)
            })
            .collect();
        let edge_map = self
            .edge_map
            .iter()
            .map(|(&e, path)| (e, lift_path(path, next, outer)))
            .collect();
        ReductionWitness {
            blowup,
            edge_map,
            added: Added::default(),
        }
        .finish(outer)
    }
}

/// Maps a middle-graph path into the outer graph, joining consecutive edge
/// images through the blow-up of the shared vertex.
fn lift_path(path: &[usize], next: &ReductionWitness, outer: &PlaneGraph) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for w in path.windows(2) {
        let mut seg = next.edge_map[&edge_key(w[0], w[1])].clone();
        if !next.blowup[&w[0]].contains(&seg[0]) {
            seg.reverse();
        }
        if let Some(&last) = out.last() {
            let link = path_within(outer, last, seg[0], &next.blowup[&w[0]]).expect("blow-up sets are connected");
            out.extend(link.into_iter().skip(1));
            out.extend(seg.into_iter().skip(1));
        } else {
            out = seg;
        }
    }
    out
}

/// Shortest path from `a` to `b` using only vertices of `set`.
fn path_within(g: &PlaneGraph, a: usize, b: usize, set: &[usize]) -> Option<Vec<usize>> {
    let allowed: HashSet<usize> = set.iter().copied().collect();
    let mut prev = vec![usize::MAX; g.vertex_count()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        for &u in g.neighbors(v) {
            if allowed.contains(&u) && prev[u] == usize::MAX {
                prev[u] = v;
                queue.push_back(u);
            }
        }
    }
    if prev[b] == usize::MAX {
        return None;
    }
    let mut path = vec![b];
    let mut v = b;
    while v != a {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    Some(path)
}

/// Adds fresh vertex `w` on a path `a - w - b` placed in the face whose
/// boundary passes `a -> v -> b`.
fn add_corner_path(rotation: &mut Vec<Vec<usize>>, a: usize, v: usize, b: usize) -> usize {
    let w = rotation.len();
    rotation.push(vec![a, b]);
    let i = rotation[a].iter().position(|&x| x == v).unwrap();
    rotation[a].insert(i, w);
    let j = rotation[b].iter().position(|&x| x == v).unwrap();
    rotation[b].insert(j + 1, w);
    w
}

/// Makes `g` 2-connected by adding paths of length two through fresh
/// vertices. Original vertices keep their ids; new ones are appended.
pub fn make_two_connected(g: &PlaneGraph) -> Result<(PlaneGraph, ReductionWitness), ReduceError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(ReduceError::Empty);
    }
    if is_two_connected(g) {
        return Ok((g.clone(), ReductionWitness::identity(g)));
    }
    let mut rotation: Vec<Vec<usize>> = g.rotation().to_vec();
    match n {
        1 => {
            rotation = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
        }
        2 if g.has_edge(0, 1) => {
            rotation = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
        }
        2 => {
            rotation = vec![vec![2, 3], vec![3, 2], vec![0, 1], vec![1, 0]];
        }
        _ => {
            let comps = g.components();
            for pair in comps.windows(2) {
                let (x, y) = (pair[0][0], pair[1][0]);
                let w = rotation.len();
                rotation.push(vec![x, y]);
                rotation[x].push(w);
                rotation[y].push(w);
            }
            loop {
                let cur = PlaneGraph::from_rotation_unchecked(rotation.clone());
                let Some(&v) = cut_vertices(&cur).first() else {
                    break;
                };
                let edges = cur.edges();
                let (block, _) = biconnected_components(&cur);
                let block_of = |a: usize, b: usize| block[edges.binary_search(&edge_key(a, b)).unwrap()];
                let rot = &rotation[v];
                let k = (0..rot.len())
                    .find(|&k| block_of(v, rot[k]) != block_of(v, rot[(k + 1) % rot.len()]))
                    .expect("cut vertex spans two blocks");
                let (a, b) = (rot[k], rot[(k + 1) % rot.len()]);
                add_corner_path(&mut rotation, a, v, b);
            }
        }
    }
    let out = PlaneGraph::from_rotation_unchecked(rotation);
    let w = ReductionWitness {
        blowup: (0..n).map(|v| (v, vec![v])).collect(),
        edge_map: g.edges().into_iter().map(|(u, v)| ((u, v), vec![u, v])).collect(),
        added: Added::default(),
    }
    .finish(&out);
    Ok((out, w))
}

/// Replaces every vertex of degree `d >= 4` by a path of `d - 2` vertices
/// taking its edges in rotation order. The first spine vertex keeps the
/// original id.
pub fn make_subcubic(g: &PlaneGraph) -> Result<(PlaneGraph, ReductionWitness), ReduceError> {
    if !is_two_connected(g) {
        return Err(ReduceError::NotTwoConnected);
    }
    let n = g.vertex_count();
    let mut rotation: Vec<Vec<usize>> = g.rotation().to_vec();
    let mut blowup: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let rot = rotation[v].clone();
        let d = rot.len();
        if d <= 3 {
            blowup.insert(v, vec![v]);
            continue;
        }
        let first_new = rotation.len();
        let spine: Vec<usize> = std::iter::once(v).chain(first_new..first_new + d - 3).collect();
        rotation.resize(first_new + d - 3, Vec::new());
        let last = d - 3;
        for (k, &s) in spine.iter().enumerate() {
            rotation[s] = if k == 0 {
                vec![rot[0], rot[1], spine[1]]
            } else if k == last {
                vec![spine[k - 1], rot[d - 2], rot[d - 1]]
            } else {
                vec![spine[k - 1], rot[k + 1], spine[k + 1]]
            };
        }
        for (k, &u) in rot.iter().enumerate().skip(2) {
            let s = spine[(k - 1).min(last)];
            let i = rotation[u].iter().position(|&x| x == v).unwrap();
            rotation[u][i] = s;
        }
        blowup.insert(v, spine);
    }
    let out = PlaneGraph::from_rotation_unchecked(rotation);
    let mut owner = vec![usize::MAX; out.vertex_count()];
    for (&v, set) in &blowup {
        for &x in set {
            owner[x] = v;
        }
    }
    let mut edge_map = BTreeMap::new();
    for (a, b) in out.edges() {
        if owner[a] != owner[b] {
            let (u, v) = (owner[a], owner[b]);
            let path = if u < v { vec![a, b] } else { vec![b, a] };
            edge_map.insert(edge_key(u, v), path);
        }
    }
    let w = ReductionWitness {
        blowup,
        edge_map,
        added: Added::default(),
    }
    .finish(&out);
    Ok((out, w))
}

/// [`make_two_connected`] followed by [`make_subcubic`].
pub fn reduce(g: &PlaneGraph) -> Result<(PlaneGraph, ReductionWitness), ReduceError> {
    let (mid, w1) = make_two_connected(g)?;
    let (out, w2) = make_subcubic(&mid)?;
    let w = w1.then(&w2, &out);
    Ok((out, w))
}

/// Checks the witness directly: blow-up sets disjoint and connected, edge
/// paths joining the right sets with private interiors, and every used edge
/// present in `reduced`.
pub fn witness_is_valid(original: &PlaneGraph, reduced: &PlaneGraph, w: &ReductionWitness) -> bool {
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (&v, set) in &w.blowup {
        if set.is_empty() {
            return false;
        }
        for &x in set {
            if x >= reduced.vertex_count() || owner.insert(x, v).is_some() {
                return false;
            }
        }
        if set.iter().any(|&x| path_within(reduced, set[0], x, set).is_none()) {
            return false;
        }
    }
    if w.blowup.len() != original.vertex_count() || w.edge_map.len() != original.edge_count() {
        return false;
    }
    let mut interior_seen = HashSet::new();
    for (&(u, v), path) in &w.edge_map {
        if !original.has_edge(u, v) || path.len() < 2 {
            return false;
        }
        if path.windows(2).any(|p| !reduced.has_edge(p[0], p[1])) {
            return false;
        }
        if owner.get(&path[0]) != Some(&u) || owner.get(path.last().unwrap()) != Some(&v) {
            return false;
        }
        for x in &path[1..path.len() - 1] {
            if owner.contains_key(x) || !interior_seen.insert(*x) {
                return false;
            }
        }
    }
    true
}
