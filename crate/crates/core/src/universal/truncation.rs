use std::collections::HashMap;

use crate::planar::{FaceCycle, PlaneGraph};

use super::address::{FaceId, GAddress, Root};
use super::UniversalError;

/// Default vertex cap for materialization.
pub const DEFAULT_VERTEX_CAP: usize = 10_000_000;

/// `(V, E, F)` of a full truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    pub vertices: u128,
    pub edges: u128,
    pub faces: u128,
}

/// Evaluates the level recurrences without building anything.
pub fn census(n: usize) -> Census {
    let mut c = Census {
        vertices: 3,
        edges: 3,
        faces: 2,
    };
    for level in 1..=n as u128 {
        let children = 2 * level + 1;
        c.vertices = c.vertices.saturating_add(c.faces.saturating_mul(1 + level * children));
        c.edges = c.edges.saturating_add(c.faces.saturating_mul(children * (level + 1)));
        c.faces = c.faces.saturating_mul(children);
    }
    c
}

#[derive(Debug, Clone)]
pub struct FaceRecord {
    pub id: FaceId,
    /// Canonical boundary walk (interior on the left), as vertex indices.
    pub boundary: Vec<usize>,
    pub expansion: Option<Expansion>,
}

#[derive(Debug, Clone)]
pub struct Expansion {
    pub center: usize,
    /// `spokes[k][p - 1]` is subdivision vertex `p` towards boundary vertex `k`.
    pub spokes: Vec<Vec<usize>>,
    /// Face-table indices of the children.
    pub children: Vec<usize>,
}

/// What one face expansion added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionDelta {
    pub vertices: Vec<GAddress>,
    pub edges: Vec<(GAddress, GAddress)>,
    pub children: Vec<FaceId>,
}

/// A finite, possibly non-uniform, truncation of the universal graph.
///
/// Starts as the base triangle and grows by expanding individual faces.
/// Eager truncations ([`Truncation::generate`]) are the closure that expands
/// every face below a level.
#[derive(Debug, Clone)]
pub struct Truncation {
    addrs: Vec<GAddress>,
    index: HashMap<GAddress, usize>,
    rotation: Vec<Vec<usize>>,
    faces: Vec<FaceRecord>,
    face_index: HashMap<FaceId, usize>,
    leaves_at: Vec<Vec<u32>>,
    cap: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self::new()
    }
}

impl Truncation {
    /// The base triangle with its two faces.
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(cap: usize) -> Self {
        let addrs: Vec<GAddress> = (0..3).map(GAddress::Base).collect();
        let index = addrs.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let rotation = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
        let faces = vec![
            FaceRecord {
                id: FaceId::root(Root::A),
                boundary: vec![0, 1, 2],
                expansion: None,
            },
            FaceRecord {
                id: FaceId::root(Root::B),
                boundary: vec![0, 2, 1],
                expansion: None,
            },
        ];
        let face_index = faces.iter().enumerate().map(|(i, f)| (f.id.clone(), i)).collect();
        Truncation {
            addrs,
            index,
            rotation,
            faces,
            face_index,
            leaves_at: vec![vec![0, 1]; 3],
            cap,
        }
    }

    /// Full truncation of level `n`: every face of depth `< n` expanded.
    pub fn generate(n: usize, cap: usize) -> Result<Self, UniversalError> {
        let projected = census(n).vertices;
        if projected > cap as u128 {
            return Err(UniversalError::TooLarge { projected, cap });
        }
        let mut t = Truncation::with_cap(cap);
        let mut next = 0;
        for depth in 0..n {
            let end = t.faces.len();
            for fi in next..end {
                debug_assert_eq!(t.faces[fi].id.depth(), depth);
                t.expand_index(fi)?;
            }
            next = end;
        }
        Ok(t)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn vertex_count(&self) -> usize {
        self.addrs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn address(&self, v: usize) -> &GAddress {
        &self.addrs[v]
    }

    pub fn addresses(&self) -> &[GAddress] {
        &self.addrs
    }

    pub fn vertex(&self, a: &GAddress) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// Snapshot as a plane graph on vertex indices.
    pub fn graph(&self) -> PlaneGraph {
        PlaneGraph::from_rotation_unchecked(self.rotation.clone())
    }

    pub fn face(&self, f: &FaceId) -> Option<&FaceRecord> {
        self.face_index.get(f).map(|&i| &self.faces[i])
    }

    pub(crate) fn face_index_of(&self, f: &FaceId) -> Option<usize> {
        self.face_index.get(f).copied()
    }

    pub(crate) fn face_at(&self, i: usize) -> &FaceRecord {
        &self.faces[i]
    }

    pub fn is_expanded(&self, f: &FaceId) -> bool {
        self.face(f).is_some_and(|r| r.expansion.is_some())
    }

    /// Faces that have not been expanded, in creation order.
    pub fn leaf_faces(&self) -> impl Iterator<Item = &FaceRecord> {
        self.faces.iter().filter(|f| f.expansion.is_none())
    }

    /// Expanded faces in creation order.
    pub fn expanded_faces(&self) -> impl Iterator<Item = &FaceId> {
        self.faces.iter().filter(|f| f.expansion.is_some()).map(|f| &f.id)
    }

    /// Unexpanded faces whose boundary contains `v`.
    pub fn leaves_at(&self, v: usize) -> impl Iterator<Item = &FaceRecord> + '_ {
        self.leaves_at[v].iter().map(|&i| &self.faces[i as usize])
    }

    pub(crate) fn leaf_indices_at(&self, v: usize) -> &[u32] {
        &self.leaves_at[v]
    }

    /// Largest `n` such that every face of depth `< n` is expanded.
    pub fn level(&self) -> usize {
        self.leaf_faces().map(|f| f.id.depth()).min().unwrap_or(0)
    }

    /// Deepest face present.
    pub fn max_depth(&self) -> usize {
        self.faces.iter().map(|f| f.id.depth()).max().unwrap_or(0)
    }

    /// Boundary walk of a present face as darts.
    pub fn face_cycle(&self, f: &FaceId) -> Option<FaceCycle> {
        let b = &self.face(f)?.boundary;
        let k = b.len();
        Some(FaceCycle {
            darts: (0..k).map(|i| (b[i], b[(i + 1) % k])).collect(),
        })
    }

    /// Canonical boundary addresses of a present face.
    pub fn boundary_addresses(&self, f: &FaceId) -> Option<Vec<GAddress>> {
        Some(self.face(f)?.boundary.iter().map(|&v| self.addrs[v].clone()).collect())
    }

    /// Expands `f`, which must be present and unexpanded.
    pub fn expand_face(&mut self, f: &FaceId) -> Result<ExpansionDelta, UniversalError> {
        let fi = *self
            .face_index
            .get(f)
            .ok_or_else(|| UniversalError::UnknownFace(f.clone()))?;
        let first_vertex = self.addrs.len();
        let first_face = self.faces.len();
        self.expand_index(fi)?;
        let rec = &self.faces[fi];
        let exp = rec.expansion.as_ref().unwrap();
        let mut edges = Vec::new();
        for (k, spoke) in exp.spokes.iter().enumerate() {
            let mut prev = rec.boundary[k];
            for &s in spoke.iter().chain(std::iter::once(&exp.center)) {
                edges.push((self.addrs[prev].clone(), self.addrs[s].clone()));
                prev = s;
            }
        }
        Ok(ExpansionDelta {
            vertices: self.addrs[first_vertex..].to_vec(),
            edges,
            children: self.faces[first_face..].iter().map(|r| r.id.clone()).collect(),
        })
    }

    /// Expands `f` and every missing ancestor so that `f` is present and
    /// expanded. Already expanded faces are left alone.
    pub fn ensure_expanded(&mut self, f: &FaceId) -> Result<(), UniversalError> {
        self.ensure_present(f)?;
        if !self.is_expanded(f) {
            self.expand_face(f)?;
        }
        Ok(())
    }

    /// Expands ancestors of `f` until `f` itself is present.
    pub fn ensure_present(&mut self, f: &FaceId) -> Result<(), UniversalError> {
        if !f.is_well_formed() {
            return Err(UniversalError::UnknownFace(f.clone()));
        }
        let mut cur = FaceId::root(f.root);
        for &c in &f.path {
            if !self.is_expanded(&cur) {
                self.expand_face(&cur)?;
            }
            cur = cur.child(c as usize);
        }
        Ok(())
    }

    pub(crate) fn expand_index(&mut self, fi: usize) -> Result<(), UniversalError> {
        if self.faces[fi].expansion.is_some() {
            return Err(UniversalError::AlreadyExpanded(self.faces[fi].id.clone()));
        }
        let id = self.faces[fi].id.clone();
        let boundary = self.faces[fi].boundary.clone();
        let len = boundary.len();
        let m = id.spoke_len();
        let added = 1 + len * m;
        if self.addrs.len() + added > self.cap {
            return Err(UniversalError::TooLarge {
                projected: (self.addrs.len() + added) as u128,
                cap: self.cap,
            });
        }

        let center = self.push_vertex(GAddress::Center(id.clone()));
        let mut spokes = Vec::with_capacity(len);
        for k in 0..len {
            let spoke: Vec<usize> = (1..=m)
                .map(|pos| {
                    self.push_vertex(GAddress::Sub {
                        face: id.clone(),
                        spoke: k as u16,
                        pos: pos as u16,
                    })
                })
                .collect();
            for (p, &s) in spoke.iter().enumerate() {
                let outer = if p == 0 { boundary[k] } else { spoke[p - 1] };
                let inner = if p + 1 == m { center } else { spoke[p + 1] };
                self.rotation[s] = vec![outer, inner];
            }
            spokes.push(spoke);
        }
        // Around the center the spokes appear in decreasing index order.
        self.rotation[center] = (0..len).rev().map(|k| spokes[k][m - 1]).collect();
        // At boundary vertex k the new spoke sits right after boundary
        // vertex k-1.
        for k in 0..len {
            let v = boundary[k];
            let before = boundary[(k + len - 1) % len];
            let rot = &mut self.rotation[v];
            let i = rot.iter().position(|&w| w == before).expect("boundary edge present");
            rot.insert(i + 1, spokes[k][0]);
        }

        let mut children = Vec::with_capacity(len);
        for c in 0..len {
            let next = (c + 1) % len;
            let mut b = Vec::with_capacity(2 * m + 3);
            b.push(boundary[c]);
            b.push(boundary[next]);
            b.extend(spokes[next].iter().copied());
            b.push(center);
            b.extend(spokes[c].iter().rev().copied());
            let child = FaceRecord {
                id: id.child(c),
                boundary: b,
                expansion: None,
            };
            let ci = self.faces.len();
            self.face_index.insert(child.id.clone(), ci);
            for &v in &child.boundary {
                self.leaves_at[v].push(ci as u32);
            }
            self.faces.push(child);
            children.push(ci);
        }
        for &v in &boundary {
            self.leaves_at[v].retain(|&x| x as usize != fi);
        }
        self.faces[fi].expansion = Some(Expansion {
            center,
            spokes,
            children,
        });
        Ok(())
    }

    fn push_vertex(&mut self, a: GAddress) -> usize {
        let v = self.addrs.len();
        self.index.insert(a.clone(), v);
        self.addrs.push(a);
        self.rotation.push(Vec::new());
        self.leaves_at.push(Vec::new());
        v
    }

    /// The diameter of expanded face `f` between boundary positions `i` and
    /// `j`: `b[i]`, spoke `i` inwards, center, spoke `j` outwards, `b[j]`.
    pub fn diameter(&self, f: &FaceId, i: usize, j: usize) -> Result<Vec<usize>, UniversalError> {
        let rec = self.face(f).ok_or_else(|| UniversalError::UnknownFace(f.clone()))?;
        let exp = rec
            .expansion
            .as_ref()
            .ok_or_else(|| UniversalError::NotExpanded(f.clone()))?;
        let len = rec.boundary.len();
        if i >= len || j >= len {
            return Err(UniversalError::BadIndex(i.max(j)));
        }
        if i == j {
            return Err(UniversalError::EqualEnds);
        }
        let mut path = vec![rec.boundary[i]];
        path.extend(exp.spokes[i].iter().copied());
        path.push(exp.center);
        path.extend(exp.spokes[j].iter().rev().copied());
        path.push(rec.boundary[j]);
        Ok(path)
    }

    /// Diameter as addresses.
    pub fn diameter_addresses(&self, f: &FaceId, i: usize, j: usize) -> Result<Vec<GAddress>, UniversalError> {
        Ok(self.diameter(f, i, j)?.into_iter().map(|v| self.addrs[v].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::is_two_connected;
    use std::collections::BTreeMap;

    #[test]
    fn census_small_levels() {
        let c = |n| {
            let c = census(n);
            (c.vertices, c.edges, c.faces)
        };
        assert_eq!(c(0), (3, 3, 2));
        assert_eq!(c(1), (11, 15, 6));
        assert_eq!(c(2), (77, 105, 30));
        assert_eq!(c(3), (737, 945, 210));
        for n in 0..=8 {
            let k = census(n);
            assert_eq!(k.vertices as i128 - k.edges as i128 + k.faces as i128, 2);
        }
    }

    #[test]
    fn generate_matches_census_and_traced_faces() {
        for n in 0..=3 {
            let t = Truncation::generate(n, DEFAULT_VERTEX_CAP).unwrap();
            let g = t.graph();
            let c = census(n);
            assert_eq!(g.vertex_count() as u128, c.vertices);
            assert_eq!(g.edge_count() as u128, c.edges);
            let traced = g.trace_faces();
            assert_eq!(traced.len() as u128, c.faces);
            assert!(traced.iter().all(|f| f.len() == 2 * n + 3));
            assert_eq!(t.leaf_faces().count() as u128, c.faces);
            assert_eq!(t.level(), n);
        }
    }

    #[test]
    fn leaf_face_records_match_traced_faces() {
        let t = Truncation::generate(2, DEFAULT_VERTEX_CAP).unwrap();
        let g = t.graph();
        for leaf in t.leaf_faces() {
            let cycle = t.face_cycle(&leaf.id).unwrap();
            assert_eq!(g.face_of(cycle.darts[0]), cycle);
        }
    }

    #[test]
    fn expand_root_face() {
        let mut t = Truncation::new();
        let delta = t.expand_face(&FaceId::root(Root::A)).unwrap();
        assert_eq!(delta.vertices.len(), 4);
        assert_eq!(delta.edges.len(), 6);
        assert_eq!(delta.children.len(), 3);
        assert!(matches!(
            t.expand_face(&FaceId::root(Root::A)),
            Err(UniversalError::AlreadyExpanded(_))
        ));
    }

    #[test]
    fn expanding_both_roots_reproduces_level_one() {
        let mut t = Truncation::new();
        t.expand_face(&FaceId::root(Root::B)).unwrap();
        t.expand_face(&FaceId::root(Root::A)).unwrap();
        let eager = Truncation::generate(1, DEFAULT_VERTEX_CAP).unwrap();
        let edges = |t: &Truncation| {
            let mut e: Vec<(String, String)> = t
                .graph()
                .edges()
                .into_iter()
                .map(|(u, v)| {
                    let (a, b) = (t.address(u).to_string(), t.address(v).to_string());
                    if a < b { (a, b) } else { (b, a) }
                })
                .collect();
            e.sort();
            e
        };
        assert_eq!(edges(&t), edges(&eager));
    }

    #[test]
    fn expand_level_one_face() {
        let mut t = Truncation::generate(1, DEFAULT_VERTEX_CAP).unwrap();
        let f: FaceId = "A.1".parse().unwrap();
        let delta = t.expand_face(&f).unwrap();
        assert_eq!((delta.vertices.len(), delta.edges.len(), delta.children.len()), (11, 15, 5));
    }

    #[test]
    fn degrees_follow_the_construction() {
        let t = Truncation::generate(3, DEFAULT_VERTEX_CAP).unwrap();
        for (v, a) in t.addresses().iter().enumerate() {
            let d = t.neighbors(v).len();
            match a {
                // Every incident face gains one spoke per later level, so
                // degrees double with each level.
                GAddress::Center(f) => assert_eq!(d, f.boundary_len() << (3 - (f.depth() + 1))),
                GAddress::Sub { face, .. } => assert_eq!(d, 2 << (3 - (face.depth() + 1))),
                GAddress::Base(_) => assert_eq!(d, 2 << 3),
            }
        }
    }

    #[test]
    fn lazy_expansion_is_order_independent() {
        let faces: Vec<FaceId> = ["A", "B", "A.0", "A.2", "B.1"].iter().map(|s| s.parse().unwrap()).collect();
        let snapshot = |order: &[usize]| {
            let mut t = Truncation::new();
            for &i in order {
                t.ensure_expanded(&faces[i]).unwrap();
            }
            let mut m: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for (v, a) in t.addresses().iter().enumerate() {
                let mut ns: Vec<String> = t.neighbors(v).iter().map(|&u| t.address(u).to_string()).collect();
                ns.sort();
                m.insert(a.to_string(), ns);
            }
            m
        };
        assert_eq!(snapshot(&[0, 1, 2, 3, 4]), snapshot(&[4, 3, 1, 2, 0]));
    }

    #[test]
    fn generate_respects_cap() {
        assert!(matches!(
            Truncation::generate(9, DEFAULT_VERTEX_CAP),
            Err(UniversalError::TooLarge { .. })
        ));
        assert!(Truncation::generate(2, 50).is_err());
    }

    #[test]
    fn diameters_have_expected_shape() {
        let t = Truncation::generate(2, DEFAULT_VERTEX_CAP).unwrap();
        let root = FaceId::root(Root::A);
        assert_eq!(t.diameter(&root, 0, 1).unwrap().len(), 5);
        assert_eq!(t.diameter(&"A.1".parse().unwrap(), 0, 3).unwrap().len(), 7);
        assert_eq!(t.diameter(&root, 1, 1), Err(UniversalError::EqualEnds));
        assert!(matches!(t.diameter(&"A.1.1".parse().unwrap(), 0, 1), Err(UniversalError::NotExpanded(_))));
        assert!(is_two_connected(&t.graph()));
    }
}
