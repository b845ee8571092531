use std::collections::HashMap;

use crate::planar::PlaneGraph;

use super::address::{FaceId, GAddress};
use super::truncation::Truncation;
use super::UniversalError;

/// Which of the two parts of a face a diameter cuts off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    /// Children `i, i+1, .., j-1` for a diameter with ends `(i, j)`.
    Forward,
    /// Children `j, j+1, .., i-1`.
    Backward,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Forward => Side::Backward,
            Side::Backward => Side::Forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    pub ends: (usize, usize),
    pub side: Side,
}

/// A part of the plane bounded by a face of some truncation, optionally cut
/// along one of its diameters, with some sub-faces removed.
///
/// Open regions keep their boundary vertices but drop the edges between
/// them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub face: FaceId,
    pub cut: Option<Cut>,
    /// Faces whose open interiors are excluded.
    pub holes: Vec<FaceId>,
    pub closed: bool,
}

impl Region {
    pub fn face(face: FaceId) -> Self {
        Region {
            face,
            cut: None,
            holes: Vec::new(),
            closed: false,
        }
    }

    pub fn slice(face: FaceId, cut: Option<Cut>) -> Self {
        Region {
            face,
            cut,
            holes: Vec::new(),
            closed: false,
        }
    }
}

/// An n-slice materialized to a fixed number of extra levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceRef {
    pub face: FaceId,
    pub diameter: Option<(usize, usize)>,
    pub side: Side,
    pub depth: usize,
}

impl SliceRef {
    pub fn region(&self) -> Region {
        Region::slice(
            self.face.clone(),
            self.diameter.map(|ends| Cut { ends, side: self.side }),
        )
    }
}

/// A region's vertices with local adjacency lists in rotation order.
#[derive(Debug, Clone)]
pub struct LocalGraph {
    /// Truncation vertex of each local vertex; boundary vertices come first.
    pub vertices: Vec<usize>,
    pub boundary_count: usize,
    pub adj: Vec<Vec<usize>>,
    pub local: HashMap<usize, usize>,
}

impl LocalGraph {
    pub fn is_boundary(&self, local: usize) -> bool {
        local < self.boundary_count
    }
}

/// A materialized subgraph together with the address of each vertex.
#[derive(Debug, Clone)]
pub struct SubgraphView {
    pub graph: PlaneGraph,
    pub addresses: Vec<GAddress>,
}

/// `from, from+1, .., to-1` modulo `len`.
fn cyclic_range(from: usize, to: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = from;
    while k != to {
        out.push(k);
        k = (k + 1) % len;
    }
    out
}

impl Truncation {
    /// Child indices of the region's face that lie inside the region.
    fn region_children(&self, r: &Region, len: usize) -> Vec<usize> {
        match &r.cut {
            None => (0..len).collect(),
            Some(Cut { ends: (i, j), side: Side::Forward }) => cyclic_range(*i, *j, len),
            Some(Cut { ends: (i, j), side: Side::Backward }) => cyclic_range(*j, *i, len),
        }
    }

    fn check_cut(&self, r: &Region) -> Result<(), UniversalError> {
        let rec = self.face(&r.face).ok_or_else(|| UniversalError::UnknownFace(r.face.clone()))?;
        if let Some(cut) = &r.cut {
            let len = rec.boundary.len();
            let (i, j) = cut.ends;
            if i >= len || j >= len {
                return Err(UniversalError::BadIndex(i.max(j)));
            }
            if i == j {
                return Err(UniversalError::EqualEnds);
            }
            if rec.expansion.is_none() {
                return Err(UniversalError::NotExpanded(r.face.clone()));
            }
        }
        Ok(())
    }

    /// Boundary walk of the region with its interior on the left.
    pub fn region_boundary(&self, r: &Region) -> Result<Vec<usize>, UniversalError> {
        self.check_cut(r)?;
        let rec = self.face(&r.face).unwrap();
        let b = &rec.boundary;
        let len = b.len();
        let Some(cut) = &r.cut else {
            return Ok(b.clone());
        };
        let exp = rec.expansion.as_ref().unwrap();
        let (i, j) = cut.ends;
        let (from, to) = match cut.side {
            Side::Forward => (i, j),
            Side::Backward => (j, i),
        };
        let mut walk: Vec<usize> = cyclic_range(from, to, len).into_iter().map(|k| b[k]).collect();
        walk.push(b[to]);
        walk.extend(exp.spokes[to].iter().copied());
        walk.push(exp.center);
        walk.extend(exp.spokes[from].iter().rev().copied());
        Ok(walk)
    }

    /// Vertices strictly inside the region, excluding hole interiors.
    pub fn region_interior(&self, r: &Region) -> Result<Vec<usize>, UniversalError> {
        let mut out = Vec::new();
        if let Some(cut) = &r.cut {
            let exp = self.face(&r.face).unwrap().expansion.as_ref().unwrap();
            let len = exp.spokes.len();
            let (i, j) = cut.ends;
            let inner = match cut.side {
                Side::Forward => cyclic_range((i + 1) % len, j, len),
                Side::Backward => cyclic_range((j + 1) % len, i, len),
            };
            for k in inner {
                out.extend(exp.spokes[k].iter().copied());
            }
        }
        for fi in self.region_faces(r)? {
            if let Some(exp) = &self.face_at(fi).expansion {
                out.push(exp.center);
                for s in &exp.spokes {
                    out.extend(s.iter().copied());
                }
            }
        }
        Ok(out)
    }

    /// Unexpanded faces inside the region, holes excluded.
    pub fn region_leaves(&self, r: &Region) -> Result<Vec<FaceId>, UniversalError> {
        Ok(self
            .region_faces(r)?
            .into_iter()
            .map(|fi| self.face_at(fi))
            .filter(|rec| rec.expansion.is_none())
            .map(|rec| rec.id.clone())
            .collect())
    }

    /// Table indices of every present face inside the region, in preorder.
    /// The region's own face is included only when uncut.
    fn region_faces(&self, r: &Region) -> Result<Vec<usize>, UniversalError> {
        self.check_cut(r)?;
        let root = self.face_index_of(&r.face).unwrap();
        let mut stack = Vec::new();
        if r.cut.is_none() {
            stack.push(root);
        } else {
            let rec = self.face_at(root);
            let exp = rec.expansion.as_ref().unwrap();
            for c in self.region_children(r, rec.boundary.len()).into_iter().rev() {
                stack.push(exp.children[c]);
            }
        }
        let mut out = Vec::new();
        while let Some(fi) = stack.pop() {
            let rec = self.face_at(fi);
            if r.holes.contains(&rec.id) {
                continue;
            }
            out.push(fi);
            if let Some(exp) = &rec.expansion {
                stack.extend(exp.children.iter().rev().copied());
            }
        }
        Ok(out)
    }

    /// `true` if `f` is a present face lying inside the region.
    pub fn region_contains_face(&self, r: &Region, f: &FaceId) -> bool {
        if !f.is_within(&r.face) || r.holes.iter().any(|h| f.is_within(h)) {
            return false;
        }
        match &r.cut {
            None => true,
            Some(_) => {
                if f.depth() == r.face.depth() {
                    return false;
                }
                let c = f.path[r.face.depth()] as usize;
                self.region_children(r, r.face.boundary_len()).contains(&c)
            }
        }
    }

    /// The region's vertices and edges, with rotation-ordered adjacency.
    pub fn region_graph(&self, r: &Region) -> Result<LocalGraph, UniversalError> {
        let boundary = self.region_boundary(r)?;
        let interior = self.region_interior(r)?;
        let boundary_count = boundary.len();
        let vertices: Vec<usize> = boundary.into_iter().chain(interior).collect();
        let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|u| local.get(u).copied())
                    .filter(|&j| r.closed || i >= boundary_count || j >= boundary_count)
                    .collect()
            })
            .collect();
        Ok(LocalGraph {
            vertices,
            boundary_count,
            adj,
            local,
        })
    }

    /// Expands every face inside the region until all have depth `level`.
    pub fn materialize(&mut self, r: &Region, level: usize) -> Result<(), UniversalError> {
        self.ensure_present(&r.face)?;
        if r.cut.is_some() {
            self.ensure_expanded(&r.face)?;
        }
        loop {
            let todo: Vec<FaceId> = self
                .region_leaves(r)?
                .into_iter()
                .filter(|f| f.depth() < level)
                .collect();
            if todo.is_empty() {
                return Ok(());
            }
            for f in todo {
                self.expand_face(&f)?;
            }
        }
    }

    fn view(&self, lg: &LocalGraph) -> SubgraphView {
        SubgraphView {
            graph: PlaneGraph::from_rotation_unchecked(lg.adj.clone()),
            addresses: lg.vertices.iter().map(|&v| self.address(v).clone()).collect(),
        }
    }

    /// The slice materialized `s.depth` levels below its face.
    pub fn slice_subgraph(&mut self, s: &SliceRef) -> Result<SubgraphView, UniversalError> {
        if s.depth == 0 {
            return Err(UniversalError::ZeroDepth);
        }
        let r = s.region();
        self.materialize(&r, s.face.depth() + s.depth)?;
        Ok(self.view(&self.region_graph(&r)?))
    }

    /// The closed face `f` materialized `depth` levels below it, optionally
    /// with its boundary removed.
    pub fn piece(&mut self, f: &FaceId, strip: bool, depth: usize) -> Result<SubgraphView, UniversalError> {
        let r = Region {
            face: f.clone(),
            cut: None,
            holes: Vec::new(),
            closed: true,
        };
        self.materialize(&r, f.depth() + depth)?;
        let mut lg = self.region_graph(&r)?;
        if strip {
            let keep = lg.vertices.len() - lg.boundary_count;
            let offset = lg.boundary_count;
            lg = LocalGraph {
                vertices: lg.vertices[offset..].to_vec(),
                boundary_count: 0,
                adj: lg.adj[offset..]
                    .iter()
                    .map(|ns| ns.iter().filter(|&&u| u >= offset).map(|&u| u - offset).collect())
                    .collect(),
                local: HashMap::new(),
            };
            debug_assert_eq!(lg.vertices.len(), keep);
        }
        Ok(self.view(&lg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universal::Root;
    use std::collections::HashSet;

    fn fid(s: &str) -> FaceId {
        s.parse().unwrap()
    }

    #[test]
    fn level_zero_slice_depth_one() {
        let mut t = Truncation::new();
        let s = SliceRef {
            face: FaceId::root(Root::A),
            diameter: None,
            side: Side::Forward,
            depth: 1,
        };
        let v = t.slice_subgraph(&s).unwrap();
        assert_eq!(v.graph.vertex_count(), 7);
        assert_eq!(v.graph.edge_count(), 6);
        let base = v.addresses.iter().filter(|a| matches!(a, GAddress::Base(_))).count();
        assert_eq!(base, 3);
        for i in 0..3 {
            assert_eq!(v.graph.degree(i), 1);
        }
    }

    #[test]
    fn level_zero_slice_depth_two() {
        let mut t = Truncation::new();
        let s = SliceRef {
            face: FaceId::root(Root::A),
            diameter: None,
            side: Side::Forward,
            depth: 2,
        };
        let v = t.slice_subgraph(&s).unwrap();
        assert_eq!(v.graph.vertex_count(), 3 + 4 + 3 * 11);
    }

    #[test]
    fn side_slices_partition_interior() {
        let mut t = Truncation::generate(3, 1_000_000).unwrap();
        let face = fid("A.1");
        let whole = Region::face(face.clone());
        let all: HashSet<usize> = t.region_interior(&whole).unwrap().into_iter().collect();
        for i in 0..5 {
            for j in 0..5 {
                if i == j {
                    continue;
                }
                let d: HashSet<usize> = t.diameter(&face, i, j).unwrap().into_iter().collect();
                let mut seen = HashSet::new();
                for side in [Side::Forward, Side::Backward] {
                    let s = SliceRef { face: face.clone(), diameter: Some((i, j)), side, depth: 2 };
                    let part = t.region_interior(&s.region()).unwrap();
                    for v in part {
                        assert!(!d.contains(&v));
                        assert!(seen.insert(v));
                    }
                    let _ = t.slice_subgraph(&s).unwrap();
                }
                let expected: HashSet<usize> = all.difference(&d).copied().collect();
                assert_eq!(seen, expected);
            }
        }
    }

    #[test]
    fn region_boundary_is_a_closed_walk() {
        let t = Truncation::generate(2, 1_000_000).unwrap();
        let face = fid("B.2");
        for side in [Side::Forward, Side::Backward] {
            let r = Region::slice(face.clone(), Some(Cut { ends: (4, 1), side }));
            let walk = t.region_boundary(&r).unwrap();
            for k in 0..walk.len() {
                let (a, b) = (walk[k], walk[(k + 1) % walk.len()]);
                assert!(t.neighbors(a).contains(&b));
            }
            assert_eq!(walk.iter().collect::<HashSet<_>>().len(), walk.len());
        }
    }

    #[test]
    fn pieces() {
        let mut t = Truncation::new();
        let closed = t.piece(&FaceId::root(Root::A), false, 1).unwrap();
        assert_eq!((closed.graph.vertex_count(), closed.graph.edge_count()), (7, 9));
        assert!(closed.graph.is_sphere_embedding());
        let stripped = t.piece(&FaceId::root(Root::A), true, 1).unwrap();
        assert_eq!((stripped.graph.vertex_count(), stripped.graph.edge_count()), (4, 3));
    }

    #[test]
    fn holes_and_containment() {
        let t = Truncation::generate(2, 1_000_000).unwrap();
        let mut r = Region::slice(fid("A"), Some(Cut { ends: (0, 2), side: Side::Forward }));
        assert!(t.region_contains_face(&r, &fid("A.1.3")));
        assert!(!t.region_contains_face(&r, &fid("A.2.3")));
        assert!(!t.region_contains_face(&r, &fid("A")));
        r.holes.push(fid("A.0"));
        assert!(!t.region_contains_face(&r, &fid("A.0.4")));
        let leaves = t.region_leaves(&r).unwrap();
        assert_eq!(leaves.len(), 5);
        assert!(leaves.iter().all(|f| f.path[0] == 1));
    }
}
