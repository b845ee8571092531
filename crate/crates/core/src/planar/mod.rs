//! Finite embedded graphs.
//!
//! A [`PlaneGraph`] is a simple graph together with a rotation system: for
//! every vertex, the cyclic order of its neighbours. Faces are traced with the
//! combinatorial-map rule `next(u -> v) = (v -> succ_v(u))`, so every dart
//! belongs to exactly one face walk.

mod connectivity;
mod embedding;
mod flow;

pub use connectivity::{biconnected_components, cut_vertices, is_connected, is_subcubic, is_two_connected};
pub use embedding::build_embedding;
pub use flow::{disjoint_paths, local_connectivity, verify_cut, PathSet, Routing};

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

/// Directed edge `(tail, head)`.
pub type Dart = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("graph is not planar")]
    NonPlanar,
    #[error("rotation system is invalid: {0}")]
    InvalidRotation(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("graph is not simple: {0}")]
    NotSimple(String),
}

/// A simple graph on vertices `0..n` with a rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotation: Vec<Vec<usize>>,
}

/// A closed face boundary walk.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceCycle {
    pub darts: Vec<Dart>,
}

impl FaceCycle {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices in walk order (the tail of every dart).
    pub fn vertices(&self) -> Vec<usize> {
        self.darts.iter().map(|&(u, _)| u).collect()
    }

    pub fn contains_dart(&self, d: Dart) -> bool {
        self.darts.contains(&d)
    }
}

impl PlaneGraph {
    /// Wraps a rotation system after checking that it describes a simple
    /// graph with symmetric adjacency. Planarity is not checked here.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self, PlanarError> {
        let n = rotation.len();
        for (v, rot) in rotation.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &u in rot {
                if u >= n {
                    return Err(PlanarError::InvalidRotation(format!("vertex {v} lists unknown vertex {u}")));
                }
                if u == v {
                    return Err(PlanarError::NotSimple(format!("loop at {v}")));
                }
                if !seen.insert(u) {
                    return Err(PlanarError::NotSimple(format!("parallel edge {v}-{u}")));
                }
                if !rotation[u].contains(&v) {
                    return Err(PlanarError::InvalidRotation(format!("{v} lists {u} but not conversely")));
                }
            }
        }
        Ok(PlaneGraph { rotation })
    }

    pub(crate) fn from_rotation_unchecked(rotation: Vec<Vec<usize>>) -> Self {
        PlaneGraph { rotation }
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let rotation = (0..n).map(|v| vec![(v + n - 1) % n, (v + 1) % n]).collect();
        PlaneGraph { rotation }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbours of `v` in rotation order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// The rotation lists, which double as adjacency lists.
    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.rotation.len() && self.rotation[u].contains(&v)
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .rotation
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Successor of `u` in the rotation at `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&w| w == u).expect("dart not in graph");
        rot[(i + 1) % rot.len()]
    }

    /// Predecessor of `u` in the rotation at `v`.
    pub fn pred(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&w| w == u).expect("dart not in graph");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// Face walk containing dart `d`.
    pub fn face_of(&self, d: Dart) -> FaceCycle {
        let mut darts = vec![d];
        let (mut u, mut v) = d;
        loop {
            let w = self.succ(v, u);
            u = v;
            v = w;
            if (u, v) == d {
                break;
            }
            darts.push((u, v));
        }
        FaceCycle { darts }
    }

    /// All face walks, ordered by their first dart in (vertex, rotation) order.
    /// Isolated vertices contribute no walk.
    pub fn trace_faces(&self) -> Vec<FaceCycle> {
        let mut seen: HashMap<Dart, ()> = HashMap::with_capacity(2 * self.edge_count());
        let mut out = Vec::new();
        for (u, rot) in self.rotation.iter().enumerate() {
            for &v in rot {
                if seen.contains_key(&(u, v)) {
                    continue;
                }
                let face = self.face_of((u, v));
                for &d in &face.darts {
                    seen.insert(d, ());
                }
                out.push(face);
            }
        }
        out
    }

    /// Face walks of a connected graph.
    pub fn faces(&self) -> Result<Vec<FaceCycle>, PlanarError> {
        if !is_connected(self) {
            return Err(PlanarError::Disconnected);
        }
        Ok(self.trace_faces())
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for &u in &self.rotation[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// `true` when every connected component satisfies `V - E + F = 2`,
    /// counting one face for an isolated vertex.
    pub fn is_sphere_embedding(&self) -> bool {
        let faces = self.trace_faces();
        let mut face_count = vec![0usize; self.vertex_count()];
        let comps = self.components();
        let mut comp_of = vec![0; self.vertex_count()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        for f in &faces {
            face_count[comp_of[f.darts[0].0]] += 1;
        }
        comps.iter().enumerate().all(|(i, c)| {
            let v = c.len() as i64;
            let e = c.iter().map(|&x| self.degree(x)).sum::<usize>() as i64 / 2;
            let f = if e == 0 { 1 } else { face_count[i] as i64 };
            v - e + f == 2
        })
    }

    /// Replaces edge `{u, v}` by a path with `k` new internal vertices.
    /// New vertices are appended and take the positions of the old edge in
    /// both rotations.
    pub fn subdivide_edge(&self, u: usize, v: usize, k: usize) -> Result<PlaneGraph, PlanarError> {
        if !self.has_edge(u, v) {
            return Err(PlanarError::MissingEdge(u, v));
        }
        if k == 0 {
            return Ok(self.clone());
        }
        let mut rotation = self.rotation.clone();
        let first = rotation.len();
        let new: Vec<usize> = (first..first + k).collect();
        for (i, &w) in new.iter().enumerate() {
            let prev = if i == 0 { u } else { new[i - 1] };
            let next = if i + 1 == k { v } else { new[i + 1] };
            rotation.push(vec![prev, next]);
            debug_assert_eq!(rotation.len() - 1, w);
        }
        replace_neighbor(&mut rotation[u], v, new[0]);
        replace_neighbor(&mut rotation[v], u, new[k - 1]);
        Ok(PlaneGraph { rotation })
    }

    /// Same graph with every rotation reversed (the mirror embedding).
    pub fn mirrored(&self) -> PlaneGraph {
        PlaneGraph {
            rotation: self
                .rotation
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
        }
    }
}

pub(crate) fn replace_neighbor(rot: &mut [usize], old: usize, new: usize) {
    let i = rot.iter().position(|&w| w == old).expect("neighbor present");
    rot[i] = new;
}

/// Normalised undirected edge key.
pub fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
