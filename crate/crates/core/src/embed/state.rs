use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::ears::Ear;
use crate::planar::{edge_key, is_subcubic, is_two_connected, PlaneGraph};
use crate::universal::{Cut, FaceId, Region, Root, Side, Truncation};

use super::router::Router;
use super::{EmbedError, EmbedOptions};

/// A face of the current prefix together with the slice it is mapped to.
#[derive(Debug, Clone)]
pub struct ActiveFace {
    /// Boundary walk in the input graph.
    pub walk: Vec<usize>,
    pub slice: Region,
    /// Host vertex on the slice boundary for every input vertex of the walk
    /// that is still the end of an ear inside this face.
    pub terminals: BTreeMap<usize, usize>,
}

/// Bookkeeping for one base or ear step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    /// Level of the face the step routed into.
    pub level: usize,
    pub target: FaceId,
    pub terminals: usize,
    /// Expansion rounds spent on infeasible routings.
    pub rounds: usize,
    /// `|V_F'| + |V_F''|` and its bound `2L + l` (ear steps only).
    pub budget: Option<(usize, usize)>,
}

/// Builds the partial model one step at a time.
#[derive(Debug, Clone)]
pub struct Embedder<'g> {
    g: &'g PlaneGraph,
    opts: EmbedOptions,
    host: Truncation,
    phi_v: Vec<Vec<usize>>,
    phi_e: BTreeMap<(usize, usize), Vec<usize>>,
    faces: Vec<ActiveFace>,
    dart_face: HashMap<(usize, usize), usize>,
    prefix: HashSet<(usize, usize)>,
}

/// At most one cyclic descent.
fn cyclically_increasing(seq: &[usize]) -> bool {
    let n = seq.len();
    (0..n).filter(|&i| seq[i] >= seq[(i + 1) % n]).count() <= 1
}

/// `walk[a], walk[a+1], .., walk[b]` cyclically.
fn arc(walk: &[usize], a: usize, b: usize) -> Vec<usize> {
    let n = walk.len();
    let mut out = vec![walk[a]];
    let mut k = a;
    while k != b {
        k = (k + 1) % n;
        out.push(walk[k]);
    }
    out
}

impl<'g> Embedder<'g> {
    pub fn new(g: &'g PlaneGraph, opts: EmbedOptions) -> Result<Self, EmbedError> {
        if !is_subcubic(g) {
            return Err(EmbedError::NotSubcubic);
        }
        if !is_two_connected(g) {
            return Err(EmbedError::NotTwoConnected);
        }
        Ok(Embedder {
            g,
            opts,
            host: Truncation::with_cap(opts.vertex_cap),
            phi_v: vec![Vec::new(); g.vertex_count()],
            phi_e: BTreeMap::new(),
            faces: Vec::new(),
            dart_face: HashMap::new(),
            prefix: HashSet::new(),
        })
    }

    pub fn host(&self) -> &Truncation {
        &self.host
    }

    /// Image of input vertex `v` as a host path (empty before it is placed).
    pub fn phi_vertex(&self, v: usize) -> &[usize] {
        &self.phi_v[v]
    }

    /// Edge images keyed by `(min, max)`, running from the image of `min`.
    pub fn phi_edges(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.phi_e
    }

    pub fn faces(&self) -> &[ActiveFace] {
        &self.faces
    }

    pub fn prefix_edges(&self) -> &HashSet<(usize, usize)> {
        &self.prefix
    }

    /// The prefix neighbour met first when turning backwards from `u`
    /// around `v`.
    fn prev_prefix_neighbor(&self, v: usize, u: usize) -> usize {
        let rot = self.g.neighbors(v);
        let start = rot.iter().position(|&w| w == u).unwrap();
        (1..rot.len())
            .map(|k| rot[(start + rot.len() - k) % rot.len()])
            .find(|&w| self.prefix.contains(&edge_key(v, w)))
            .expect("vertex lies in the prefix")
    }

    /// Walk vertices with a missing edge that leaves into this face, in
    /// walk order.
    pub fn pending_ends(&self, walk: &[usize]) -> Vec<usize> {
        let n = walk.len();
        (0..n)
            .filter(|&i| {
                let v = walk[i];
                let before = walk[(i + n - 1) % n];
                self.g
                    .neighbors(v)
                    .iter()
                    .any(|&u| !self.prefix.contains(&edge_key(u, v)) && self.prev_prefix_neighbor(v, u) == before)
            })
            .map(|i| walk[i])
            .collect()
    }

    fn register_face(&mut self, index: Option<usize>, face: ActiveFace) {
        let w = &face.walk;
        let idx = index.unwrap_or(self.faces.len());
        for k in 0..w.len() {
            self.dart_face.insert((w[k], w[(k + 1) % w.len()]), idx);
        }
        match index {
            Some(i) => self.faces[i] = face,
            None => self.faces.push(face),
        }
    }

    /// Finds `k` disjoint paths inside `region`, expanding faces next to
    /// the blocking cut until routing succeeds.
    #[allow(clippy::too_many_arguments)]
    fn route(
        &mut self,
        region: &Region,
        sources: &[usize],
        sinks: &[usize],
        k: usize,
        forbidden: &[usize],
        target: &FaceId,
        level_cap: usize,
    ) -> Result<(Vec<Vec<usize>>, usize), EmbedError> {
        let mut router = Router::new(self.host.region_graph(region)?, sources, sinks, forbidden);
        let mut rounds = 0;
        loop {
            let cut = match router.saturate(k) {
                Ok(()) => return Ok((router.paths(), rounds)),
                Err(frontier) => frontier.cut,
            };
            rounds += 1;
            let exceeded = || EmbedError::DepthCapExceeded {
                face: target.clone(),
                cap: level_cap,
            };
            if rounds > self.opts.max_rounds {
                return Err(exceeded());
            }
            let mut todo = self.bridging_faces(region, &router, sources, &cut, level_cap);
            if todo.is_empty() {
                todo = cut
                    .iter()
                    .flat_map(|&c| self.host.leaves_at(router.vertices[c]).map(|r| r.id.clone()).collect::<Vec<_>>())
                    .filter(|f| f.depth() < level_cap && self.host.region_contains_face(region, f))
                    .collect();
            }
            if todo.is_empty() {
                let leaves = self.host.region_leaves(region)?;
                let shallowest = leaves.iter().map(FaceId::depth).min();
                todo = leaves
                    .into_iter()
                    .filter(|f| Some(f.depth()) == shallowest && f.depth() < level_cap)
                    .collect();
            }
            if todo.is_empty() {
                return Err(exceeded());
            }
            let before = self.host.vertex_count();
            for f in todo {
                self.host.expand_face(&f)?;
            }
            router.grow(&self.host, before);
        }
    }

    /// Unexpanded faces of the region whose boundary meets both the part
    /// reachable from the sources around the cut and some other free vertex.
    /// Expanding one of them opens a way around the cut.
    fn bridging_faces(
        &self,
        region: &Region,
        lg: &Router,
        sources: &[usize],
        cut: &[usize],
        level_cap: usize,
    ) -> BTreeSet<FaceId> {
        let n = lg.vertices.len();
        let mut blocked: Vec<bool> = (0..n).map(|v| lg.is_forbidden(v)).collect();
        for &c in cut {
            blocked[c] = true;
        }
        let mut reach = vec![false; n];
        let mut stack: Vec<usize> = sources.iter().map(|v| lg.local[v]).filter(|&v| !blocked[v]).collect();
        for &v in &stack {
            reach[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &u in lg.neighbors(v) {
                if !blocked[u] && !reach[u] {
                    reach[u] = true;
                    stack.push(u);
                }
            }
        }
        let far = |v: &usize| lg.local.get(v).is_some_and(|&x| !blocked[x] && !reach[x]);
        let mut seen = HashSet::new();
        let mut out = BTreeSet::new();
        for x in (0..n).filter(|&x| reach[x]) {
            for &i in self.host.leaf_indices_at(lg.vertices[x]) {
                if !seen.insert(i) {
                    continue;
                }
                let rec = self.host.face_at(i as usize);
                if rec.id.depth() < level_cap
                    && rec.boundary.iter().any(far)
                    && self.host.region_contains_face(region, &rec.id)
                {
                    out.insert(rec.id.clone());
                }
            }
        }
        if let Some(d) = out.iter().map(FaceId::depth).max() {
            out.retain(|f| f.depth() == d);
        }
        out
    }

    /// Places the base cycle: its vertices become disjoint paths between two
    /// level-`l0` faces, its edges arcs of the first face's boundary, and its
    /// two faces the slices of those two faces.
    pub fn base(&mut self, cycle: &[usize]) -> Result<StepRecord, EmbedError> {
        let l0 = cycle.len();
        let mut piece = FaceId::root(Root::A);
        while piece.depth() + 2 < l0 {
            piece = piece.child(0);
        }
        let c0 = piece.child(0).child(2);
        let c1 = piece.child(piece.boundary_len() / 2).child(2);
        self.host.ensure_present(&c0)?;
        self.host.ensure_present(&c1)?;
        let region = Region {
            face: piece,
            cut: None,
            holes: vec![c0.clone(), c1.clone()],
            closed: true,
        };
        self.host.materialize(&region, l0)?;
        let b0 = self.host.face(&c0).unwrap().boundary.clone();
        let b1 = self.host.face(&c1).unwrap().boundary.clone();
        let cap = l0 + self.opts.max_extra_depth;
        let (mut paths, rounds) = self.route(&region, &b0, &b1, l0, &[], &c1, cap)?;

        let pos0: HashMap<usize, usize> = b0.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let pos1: HashMap<usize, usize> = b1.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        paths.sort_by_key(|p| pos0[&p[0]]);
        let mut far: Vec<usize> = paths.iter().map(|p| pos1[p.last().unwrap()]).collect();
        far.reverse();
        if !cyclically_increasing(&far) {
            return Err(EmbedError::InternalOrderViolation(
                "base paths do not land in reverse order".into(),
            ));
        }

        for (k, p) in paths.iter().enumerate() {
            self.phi_v[cycle[k]] = p.clone();
        }
        let n0 = b0.len();
        for k in 0..l0 {
            let (u, v) = (cycle[k], cycle[(k + 1) % l0]);
            let (s, t) = (pos0[&paths[k][0]], pos0[&paths[(k + 1) % l0][0]]);
            let mut seg = arc(&b0, s, t);
            debug_assert!(seg.len() <= n0);
            if u > v {
                seg.reverse();
            }
            self.phi_e.insert(edge_key(u, v), seg);
            self.prefix.insert(edge_key(u, v));
        }

        let inner = cycle.to_vec();
        let outer: Vec<usize> = std::iter::once(cycle[0]).chain(cycle[1..].iter().rev().copied()).collect();
        for (walk, face, near) in [(inner, c0.clone(), true), (outer, c1.clone(), false)] {
            let terminals = self
                .pending_ends(&walk)
                .into_iter()
                .map(|v| {
                    let p = &self.phi_v[v];
                    (v, if near { p[0] } else { *p.last().unwrap() })
                })
                .collect();
            self.register_face(
                None,
                ActiveFace {
                    walk,
                    slice: Region::face(face),
                    terminals,
                },
            );
        }
        Ok(StepRecord {
            level: l0,
            target: c1,
            terminals: l0,
            rounds,
            budget: None,
        })
    }

    /// Adds one ear inside its face.
    pub fn ear(&mut self, ear: &Ear) -> Result<StepRecord, EmbedError> {
        let fi = *self
            .dart_face
            .get(&(ear.face[0], ear.face[1]))
            .ok_or_else(|| EmbedError::UnknownFace(ear.face.clone()))?;
        let face = self.faces[fi].clone();
        let walk = &face.walk;
        let (l, big_l) = (walk.len(), ear.len());
        let (x, y) = ear.ends();
        let ends = self.pending_ends(walk);
        if !ends.contains(&x) || !ends.contains(&y) || ends.iter().any(|v| !face.terminals.contains_key(v)) {
            return Err(EmbedError::InternalOrderViolation(format!(
                "terminals of face {walk:?} out of date"
            )));
        }

        let slice = face.slice.clone();
        let boundary = self.host.region_boundary(&slice)?;
        let bpos: HashMap<usize, usize> = boundary.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let sources: Vec<usize> = ends.iter().map(|v| face.terminals[v]).collect();
        if !cyclically_increasing(&sources.iter().map(|s| bpos[s]).collect::<Vec<_>>()) {
            return Err(EmbedError::InternalOrderViolation("terminals out of order on slice boundary".into()));
        }

        let level = (2 * big_l + l - 3).max(slice.face.depth() + 3);
        let first = match &slice.cut {
            None => 0,
            Some(Cut { ends: (i, _), side: Side::Forward }) => *i,
            Some(Cut { ends: (_, j), side: Side::Backward }) => *j,
        };
        let mut chain = vec![slice.face.child(first)];
        while chain.last().unwrap().depth() < level {
            let next = chain.last().unwrap().child(2);
            chain.push(next);
        }
        let target = chain.last().unwrap().clone();
        self.host.ensure_present(&target)?;
        let fb = self.host.face(&target).unwrap().boundary.clone();
        let fpos: HashMap<usize, usize> = fb.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let cap = level + self.opts.max_extra_depth;

        // Route one nested face at a time; each stage crosses a single annulus.
        let mut paths: Vec<Vec<usize>> = sources.iter().map(|&s| vec![s]).collect();
        let mut rounds = 0;
        let mut outer = slice.clone();
        let mut outer_boundary = boundary.clone();
        for x in &chain {
            let xb = self.host.face(x).unwrap().boundary.clone();
            let on_x: HashSet<usize> = xb.iter().copied().collect();
            let current: HashSet<usize> = paths.iter().map(|p| *p.last().unwrap()).collect();
            let mut forbidden: Vec<usize> = outer_boundary.iter().copied().filter(|v| !current.contains(v)).collect();
            let blocked: HashSet<usize> = forbidden.iter().copied().collect();
            let sinks: Vec<usize> = xb.iter().copied().filter(|v| !current.contains(v) && !blocked.contains(v)).collect();
            let movers: Vec<usize> = (0..paths.len()).filter(|&i| !on_x.contains(paths[i].last().unwrap())).collect();
            forbidden.extend(paths.iter().map(|p| *p.last().unwrap()).filter(|v| on_x.contains(v)));
            if !movers.is_empty() {
                let starts: Vec<usize> = movers.iter().map(|&i| *paths[i].last().unwrap()).collect();
                let mut region = outer.clone();
                region.holes.push(x.clone());
                let (found, r) = self.route(&region, &starts, &sinks, starts.len(), &forbidden, &target, cap)?;
                rounds += r;
                let by_start: HashMap<usize, Vec<usize>> = found.into_iter().map(|p| (p[0], p)).collect();
                for &i in &movers {
                    let step = &by_start[paths[i].last().unwrap()];
                    paths[i].extend(step[1..].iter().copied());
                }
            }
            outer = Region {
                face: x.clone(),
                cut: None,
                holes: Vec::new(),
                closed: false,
            };
            outer_boundary = xb;
        }

        let by_start: HashMap<usize, Vec<usize>> = paths.into_iter().map(|p| (p[0], p)).collect();
        let landing: HashMap<usize, usize> = ends
            .iter()
            .map(|v| (*v, *by_start[&face.terminals[v]].last().unwrap()))
            .collect();
        if !cyclically_increasing(&ends.iter().map(|v| fpos[&landing[v]]).collect::<Vec<_>>()) {
            return Err(EmbedError::InternalOrderViolation("landing order differs from terminal order".into()));
        }

        self.host.ensure_expanded(&target)?;
        let (i, j) = (fpos[&landing[&x]], fpos[&landing[&y]]);
        let d = self.host.diameter(&target, i, j)?;

        for v in &ends {
            let p = &by_start[&face.terminals[v]];
            let cur = &mut self.phi_v[*v];
            if cur.last() != Some(&p[0]) {
                cur.reverse();
            }
            debug_assert_eq!(cur.last(), Some(&p[0]));
            cur.extend(p[1..].iter().copied());
        }
        let span = d.len() - 1;
        let pos: Vec<usize> = (0..=big_l).map(|k| (2 * k * span + big_l) / (2 * big_l)).collect();
        for k in 1..big_l {
            self.phi_v[ear.path[k]] = vec![d[pos[k]]];
        }
        for k in 0..big_l {
            let (a, b) = (ear.path[k], ear.path[k + 1]);
            let mut seg = d[pos[k]..=pos[k + 1]].to_vec();
            if a > b {
                seg.reverse();
            }
            self.phi_e.insert(edge_key(a, b), seg);
            self.prefix.insert(edge_key(a, b));
        }

        let (px, py) = (
            walk.iter().position(|&v| v == x).unwrap(),
            walk.iter().position(|&v| v == y).unwrap(),
        );
        let internal = &ear.path[1..big_l];
        let mut walk1 = arc(walk, px, py);
        walk1.extend(internal.iter().rev().copied());
        let mut walk2: Vec<usize> = std::iter::once(x).chain(internal.iter().copied()).collect();
        let back = arc(walk, py, px);
        walk2.extend(back[..back.len() - 1].iter().copied());

        for k in 0..l {
            self.dart_face.remove(&(walk[k], walk[(k + 1) % l]));
        }
        let host_terminal = |s: &Self, v: usize| -> Option<usize> {
            if internal.contains(&v) {
                Some(s.phi_v[v][0])
            } else {
                landing.get(&v).copied()
            }
        };
        let mut budget = 0;
        for (slot, walk, side) in [(Some(fi), walk1, Side::Forward), (None, walk2, Side::Backward)] {
            let vs = self.pending_ends(&walk);
            budget += vs.len();
            let mut terminals = BTreeMap::new();
            for v in vs {
                let t = host_terminal(self, v).ok_or_else(|| {
                    EmbedError::InternalOrderViolation(format!("vertex {v} gained an ear end without a terminal"))
                })?;
                terminals.insert(v, t);
            }
            let slice = Region::slice(target.clone(), Some(Cut { ends: (i, j), side }));
            self.register_face(slot, ActiveFace { walk, slice, terminals });
        }
        if budget > 2 * big_l + l {
            return Err(EmbedError::InternalOrderViolation(format!(
                "slice budget {budget} exceeds {}",
                2 * big_l + l
            )));
        }
        Ok(StepRecord {
            level,
            target,
            terminals: ends.len(),
            rounds,
            budget: Some((budget, 2 * big_l + l)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_order_helper() {
        assert!(cyclically_increasing(&[3, 5, 0, 1]));
        assert!(cyclically_increasing(&[0, 1, 2]));
        assert!(!cyclically_increasing(&[0, 2, 1, 3]));
        assert!(cyclically_increasing(&[4]));
    }

    #[test]
    fn arcs_wrap() {
        assert_eq!(arc(&[10, 11, 12, 13], 2, 0), vec![12, 13, 10]);
        assert_eq!(arc(&[10, 11, 12, 13], 1, 1), vec![11]);
    }
}
