//! Ear decompositions of 2-connected plane graphs, each ear tagged with the
//! face of the current prefix that contains it.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::{disjoint_paths, edge_key, is_two_connected, PlaneGraph, Routing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EarError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("the two edges must differ")]
    SameEdge,
    #[error("ear {0:?} does not lie in a single face of the prefix")]
    EarNotInOneFace(Vec<usize>),
}

/// How the edges are ordered before decomposing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeOrder {
    #[default]
    Lexicographic,
    /// A ChaCha8 shuffle of the lexicographic order.
    Shuffled(u64),
}

pub fn ordered_edges(g: &PlaneGraph, order: EdgeOrder) -> Vec<(usize, usize)> {
    let mut edges = g.edges();
    if let EdgeOrder::Shuffled(seed) = order {
        edges.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    edges
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ear {
    /// Both ends lie in the prefix; every internal vertex is new.
    pub path: Vec<usize>,
    /// The face of the prefix containing the ear, as a boundary walk.
    pub face: Vec<usize>,
}

impl Ear {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.path.len() < 2
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.path[0], *self.path.last().unwrap())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub base_cycle: Vec<usize>,
    pub ears: Vec<Ear>,
}

/// A simple cycle containing both edges, as a cyclic vertex list.
pub fn cycle_through_two_edges(
    g: &PlaneGraph,
    e0: (usize, usize),
    e: (usize, usize),
) -> Result<Vec<usize>, EarError> {
    for (u, v) in [e0, e] {
        if !g.has_edge(u, v) {
            return Err(EarError::MissingEdge(u, v));
        }
    }
    if edge_key(e0.0, e0.1) == edge_key(e.0, e.1) {
        return Err(EarError::SameEdge);
    }
    let without = |skip: &[(usize, usize)], drop: Option<usize>| -> Vec<Vec<usize>> {
        (0..g.vertex_count())
            .map(|v| {
                if Some(v) == drop {
                    return Vec::new();
                }
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&u| Some(u) != drop && !skip.contains(&edge_key(u, v)))
                    .collect()
            })
            .collect()
    };
    let (a0, b0) = e0;
    let (a, b) = e;
    let shared = [a0, b0].into_iter().find(|x| *x == a || *x == b);
    if let Some(s) = shared {
        // The cycle is s, the far end of e0, a path avoiding s, the far end of e.
        let p = if a0 == s { b0 } else { a0 };
        let q = if a == s { b } else { a };
        let adj = without(&[edge_key(a0, b0), edge_key(a, b)], Some(s));
        let path = bfs(&adj, p, q).ok_or(EarError::NotTwoConnected)?;
        let mut cycle = vec![s];
        cycle.extend(path);
        return Ok(cycle);
    }
    let adj = without(&[edge_key(a0, b0), edge_key(a, b)], None);
    let Routing::Paths(ps) = disjoint_paths(&adj, &[a0, b0], &[a, b], 2, &[]) else {
        return Err(EarError::NotTwoConnected);
    };
    let from_a0 = ps.paths.iter().find(|p| p[0] == a0).unwrap();
    let from_b0 = ps.paths.iter().find(|p| p[0] == b0).unwrap();
    let mut cycle = from_a0.clone();
    cycle.extend(from_b0.iter().rev().copied());
    Ok(cycle)
}

fn bfs(adj: &[Vec<usize>], s: usize, t: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            let mut path = vec![t];
            let mut x = t;
            while x != s {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &u in &adj[v] {
            if prev[u] == usize::MAX {
                prev[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

/// The prefix subgraph with the rotations of `full` restricted to it.
fn restricted(full: &PlaneGraph, prefix: &HashSet<(usize, usize)>) -> Vec<Vec<usize>> {
    (0..full.vertex_count())
        .map(|v| {
            full.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| prefix.contains(&edge_key(u, v)))
                .collect()
        })
        .collect()
}

/// Face of the prefix (given by its edges) whose corner at the ear's end
/// `x` receives the ear's first edge `x -> w`.
fn corner_face(full: &PlaneGraph, sub: &[Vec<usize>], x: usize, w: usize) -> Vec<(usize, usize)> {
    let rot = full.neighbors(x);
    let start = rot.iter().position(|&u| u == w).unwrap();
    let p = (1..rot.len())
        .map(|k| rot[(start + rot.len() - k) % rot.len()])
        .find(|u| sub[x].contains(u))
        .expect("ear end lies in the prefix");
    let mut darts = vec![(p, x)];
    loop {
        let (u, v) = *darts.last().unwrap();
        let i = sub[v].iter().position(|&y| y == u).unwrap();
        let next = (v, sub[v][(i + 1) % sub[v].len()]);
        if next == darts[0] {
            return darts;
        }
        darts.push(next);
    }
}

/// The face of the embedded prefix that contains `ear`, computed from both
/// ends and required to agree. Returned as a boundary walk.
pub fn locate_ear_face(
    full: &PlaneGraph,
    prefix: &HashSet<(usize, usize)>,
    ear: &[usize],
) -> Result<Vec<usize>, EarError> {
    let sub = restricted(full, prefix);
    let k = ear.len();
    let from_x = corner_face(full, &sub, ear[0], ear[1]);
    let from_y = corner_face(full, &sub, ear[k - 1], ear[k - 2]);
    let set: HashSet<_> = from_x.iter().collect();
    if from_y.len() != from_x.len() || !from_y.iter().all(|d| set.contains(d)) {
        return Err(EarError::EarNotInOneFace(ear.to_vec()));
    }
    Ok(from_x.into_iter().map(|(u, _)| u).collect())
}

/// Shortest cycle through `e`, starting `e.0, e.1, ...`.
fn shortest_cycle_through(g: &PlaneGraph, e: (usize, usize)) -> Option<Vec<usize>> {
    let adj: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| edge_key(u, v) != edge_key(e.0, e.1))
                .collect()
        })
        .collect();
    let mut path = bfs(&adj, e.1, e.0)?;
    path.pop();
    let mut cycle = vec![e.0];
    cycle.extend(path);
    Some(cycle)
}

/// Decomposes `g` into a cycle through the least edge plus ears, each ear
/// covering the least edge not yet covered.
pub fn ear_decomposition(g: &PlaneGraph, order: EdgeOrder) -> Result<EarDecomposition, EarError> {
    if !is_two_connected(g) {
        return Err(EarError::NotTwoConnected);
    }
    let edges = ordered_edges(g, order);
    let e0 = edges[0];
    let base_cycle = shortest_cycle_through(g, e0).ok_or(EarError::NotTwoConnected)?;
    let mut in_prefix = vec![false; g.vertex_count()];
    let mut prefix: HashSet<(usize, usize)> = HashSet::new();
    for (i, &v) in base_cycle.iter().enumerate() {
        in_prefix[v] = true;
        prefix.insert(edge_key(v, base_cycle[(i + 1) % base_cycle.len()]));
    }
    let mut ears = Vec::new();
    for &e in &edges {
        if prefix.contains(&e) {
            continue;
        }
        let path = if in_prefix[e.0] && in_prefix[e.1] {
            vec![e.0, e.1]
        } else {
            let cycle = cycle_through_two_edges(g, e0, e)?;
            ear_from_cycle(&cycle, e, &in_prefix)
        };
        let face = locate_ear_face(g, &prefix, &path)?;
        for w in path.windows(2) {
            prefix.insert(edge_key(w[0], w[1]));
        }
        for &v in &path {
            in_prefix[v] = true;
        }
        ears.push(Ear { path, face });
    }
    Ok(EarDecomposition { base_cycle, ears })
}

/// The subpath of `cycle` through `e` meeting the prefix only at its ends.
fn ear_from_cycle(cycle: &[usize], e: (usize, usize), in_prefix: &[bool]) -> Vec<usize> {
    let n = cycle.len();
    let i = (0..n)
        .find(|&i| edge_key(cycle[i], cycle[(i + 1) % n]) == e)
        .expect("cycle contains e");
    let mut back = vec![cycle[i]];
    let mut k = i;
    while !in_prefix[*back.last().unwrap()] {
        k = (k + n - 1) % n;
        back.push(cycle[k]);
    }
    back.reverse();
    let mut k = (i + 1) % n;
    back.push(cycle[k]);
    while !in_prefix[*back.last().unwrap()] {
        k = (k + 1) % n;
        back.push(cycle[k]);
    }
    back
}
