use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Display;
use std::rc::Rc;

use crate::embed::HostLevelMap;
use crate::universal::{FaceId, GAddress, Root};

use super::VerifyError;

/// What the checker needs to know about a host graph.
pub trait HostGraph {
    type Vertex: Clone + Ord + Display;

    fn contains(&self, v: &Self::Vertex) -> bool;

    fn is_edge(&self, a: &Self::Vertex, b: &Self::Vertex) -> bool;

    /// Pairs `(i, j)` with `i < j` of positions in `set` joined by an edge.
    fn edges_within(&self, set: &[Self::Vertex]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                if self.is_edge(&set[i], &set[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A host given by adjacency lists on `0..n`.
#[derive(Debug, Clone)]
pub struct AdjacencyHost {
    pub adj: Vec<Vec<usize>>,
}

impl HostGraph for AdjacencyHost {
    type Vertex = usize;

    fn contains(&self, v: &usize) -> bool {
        *v < self.adj.len()
    }

    fn is_edge(&self, a: &usize, b: &usize) -> bool {
        self.adj.get(*a).is_some_and(|ns| ns.contains(b))
    }
}

/// A truncation of the universal graph described only by its expanded faces.
///
/// Every edge is a base triangle edge or lies on a spoke, so each edge is
/// recovered from the spoke vertex at one of its ends.
#[derive(Debug)]
pub struct AddressHost {
    expanded: BTreeSet<FaceId>,
    boundaries: RefCell<HashMap<FaceId, Rc<Vec<GAddress>>>>,
}

impl AddressHost {
    pub fn new<I: IntoIterator<Item = FaceId>>(expanded: I) -> Result<Self, VerifyError> {
        let expanded: BTreeSet<FaceId> = expanded.into_iter().collect();
        for f in &expanded {
            if !f.is_well_formed() {
                return Err(VerifyError::MalformedHost(format!("face {f} does not exist")));
            }
            if let Some(p) = f.parent() {
                if !expanded.contains(&p) {
                    return Err(VerifyError::MalformedHost(format!("{f} expanded but its parent {p} is not")));
                }
            }
        }
        Ok(AddressHost {
            expanded,
            boundaries: RefCell::new(HashMap::new()),
        })
    }

    pub fn from_level_map(map: &HostLevelMap) -> Result<Self, VerifyError> {
        Self::new(map.expanded.iter().cloned())
    }

    pub fn expanded(&self) -> &BTreeSet<FaceId> {
        &self.expanded
    }

    /// Boundary walk of a face, computed from its ancestors.
    pub fn boundary(&self, f: &FaceId) -> Rc<Vec<GAddress>> {
        if let Some(b) = self.boundaries.borrow().get(f) {
            return b.clone();
        }
        let walk = match f.parent() {
            None => {
                let order: [u8; 3] = match f.root {
                    Root::A => [0, 1, 2],
                    Root::B => [0, 2, 1],
                };
                order.iter().map(|&i| GAddress::Base(i)).collect()
            }
            Some(p) => {
                let outer = self.boundary(&p);
                let len = outer.len();
                let m = p.path.len() + 1;
                let c = *f.path.last().unwrap() as usize;
                let next = (c + 1) % len;
                let sub = |spoke: usize, pos: usize| GAddress::Sub {
                    face: p.clone(),
                    spoke: spoke as u16,
                    pos: pos as u16,
                };
                let mut w = vec![outer[c].clone(), outer[next].clone()];
                w.extend((1..=m).map(|i| sub(next, i)));
                w.push(GAddress::Center(p.clone()));
                w.extend((1..=m).rev().map(|i| sub(c, i)));
                w
            }
        };
        let walk = Rc::new(walk);
        self.boundaries.borrow_mut().insert(f.clone(), walk.clone());
        walk
    }

    /// Neighbours along the spoke or base triangle through `v`. Every edge
    /// shows up in this list for at least one of its ends.
    fn own_neighbors(&self, v: &GAddress) -> Vec<GAddress> {
        match v {
            GAddress::Base(i) => (0..3).filter(|j| j != i).map(GAddress::Base).collect(),
            GAddress::Center(f) => {
                let m = f.path.len() + 1;
                (0..self.boundary(f).len())
                    .map(|k| GAddress::Sub {
                        face: f.clone(),
                        spoke: k as u16,
                        pos: m as u16,
                    })
                    .collect()
            }
            GAddress::Sub { face, spoke, pos } => {
                let m = (face.path.len() + 1) as u16;
                let at = |p: u16| GAddress::Sub {
                    face: face.clone(),
                    spoke: *spoke,
                    pos: p,
                };
                let inner = if *pos == 1 {
                    self.boundary(face)[*spoke as usize].clone()
                } else {
                    at(pos - 1)
                };
                let outer = if *pos == m { GAddress::Center(face.clone()) } else { at(pos + 1) };
                vec![inner, outer]
            }
        }
    }
}

impl HostGraph for AddressHost {
    type Vertex = GAddress;

    fn contains(&self, v: &GAddress) -> bool {
        match v {
            GAddress::Base(i) => *i < 3,
            GAddress::Center(f) => self.expanded.contains(f),
            GAddress::Sub { face, spoke, pos } => {
                self.expanded.contains(face)
                    && (*spoke as usize) < self.boundary(face).len()
                    && *pos >= 1
                    && (*pos as usize) <= face.path.len() + 1
            }
        }
    }

    fn is_edge(&self, a: &GAddress, b: &GAddress) -> bool {
        a != b && self.contains(a) && self.contains(b) && (self.own_neighbors(a).contains(b) || self.own_neighbors(b).contains(a))
    }

    fn edges_within(&self, set: &[GAddress]) -> Vec<(usize, usize)> {
        let pos: HashMap<&GAddress, usize> = set.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut out = BTreeSet::new();
        for (i, v) in set.iter().enumerate() {
            for u in self.own_neighbors(v) {
                if let Some(&j) = pos.get(&u) {
                    if i != j {
                        out.insert((i.min(j), i.max(j)));
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}
