//! Planar embedding by path addition.
//!
//! Each block is embedded separately: start from a cycle, then repeatedly
//! pick a fragment (a chord, or a component of the unembedded part together
//! with its attachment edges), choose a face containing all of its
//! attachments (preferring fragments with a single admissible face), and
//! route one attachment-to-attachment path of the fragment through that face.
//! A fragment with no admissible face certifies non-planarity. Block
//! rotations are concatenated at cut vertices. Runs in `O(V * E)`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{biconnected_components, edge_key, PlanarError, PlaneGraph};

/// Builds a [`PlaneGraph`] on vertices `0..n`.
///
/// With `rotation` supplied it is validated (neighbour lists and the Euler
/// check per component); otherwise a planar rotation system is computed.
pub fn build_embedding(
    n: usize,
    edges: &[(usize, usize)],
    rotation: Option<Vec<Vec<usize>>>,
) -> Result<PlaneGraph, PlanarError> {
    let mut adjacency = vec![Vec::new(); n];
    let mut seen = HashSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(PlanarError::NotSimple(format!("edge {u}-{v} names an unknown vertex")));
        }
        if u == v {
            return Err(PlanarError::NotSimple(format!("loop at {u}")));
        }
        if !seen.insert(edge_key(u, v)) {
            return Err(PlanarError::NotSimple(format!("parallel edge {u}-{v}")));
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
    }

    if let Some(rotation) = rotation {
        if rotation.len() != n {
            return Err(PlanarError::InvalidRotation(format!(
                "rotation covers {} vertices, expected {n}",
                rotation.len()
            )));
        }
        for v in 0..n {
            let mut a: Vec<usize> = adjacency[v].clone();
            let mut b: Vec<usize> = rotation[v].clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(PlanarError::InvalidRotation(format!(
                    "rotation at {v} does not list exactly its neighbours"
                )));
            }
        }
        let g = PlaneGraph::from_rotation(rotation)?;
        if !g.is_sphere_embedding() {
            return Err(PlanarError::InvalidRotation("rotation system is not planar".into()));
        }
        return Ok(g);
    }

    if n >= 3 && edges.len() > 3 * n - 6 {
        return Err(PlanarError::NonPlanar);
    }

    // Sorted adjacency gives a deterministic starting point.
    for a in &mut adjacency {
        a.sort_unstable();
    }
    let plain = PlaneGraph::from_rotation_unchecked(adjacency);
    let all_edges = plain.edges();
    let (block_of, block_count) = biconnected_components(&plain);
    let mut block_edges = vec![Vec::new(); block_count];
    for (i, &e) in all_edges.iter().enumerate() {
        block_edges[block_of[i]].push(e);
    }

    let mut rotation = vec![Vec::new(); n];
    for edges in &block_edges {
        let local = if edges.len() == 1 {
            let (u, v) = edges[0];
            vec![(u, vec![v]), (v, vec![u])]
        } else {
            embed_block(edges)?
        };
        for (v, rot) in local {
            rotation[v].extend(rot);
        }
    }
    let g = PlaneGraph::from_rotation_unchecked(rotation);
    debug_assert!(g.is_sphere_embedding());
    Ok(g)
}

/// Embeds one 2-connected block given by its edge list. Returns the rotation
/// of every block vertex, in ascending vertex order.
fn embed_block(edges: &[(usize, usize)]) -> Result<Vec<(usize, Vec<usize>)>, PlanarError> {
    let verts: Vec<usize> = edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let m = verts.len();
    let local = |v: usize| verts.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); m];
    for &(u, v) in edges {
        let (a, b) = (local(u), local(v));
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }

    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut placed = vec![false; m];
    let mut embedded: HashSet<(usize, usize)> = HashSet::new();

    // Initial cycle through the first edge.
    let (a0, b0) = (local(edges[0].0), local(edges[0].1));
    let path = bfs_path(&adj, a0, |v| v == b0, |u, v| edge_key(u, v) != edge_key(a0, b0))
        .expect("block edge lies on a cycle");
    let k = path.len();
    for i in 0..k {
        let v = path[i];
        rot[v] = vec![path[(i + k - 1) % k], path[(i + 1) % k]];
        placed[v] = true;
        embedded.insert(edge_key(v, path[(i + 1) % k]));
    }

    while embedded.len() < edges.len() {
        let faces = trace(&rot);
        let face_sets: Vec<HashSet<usize>> = faces
            .iter()
            .map(|f| f.iter().map(|&(u, _)| u).collect())
            .collect();
        let fragments = fragments(&adj, &placed, &embedded);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| face_sets[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return Err(PlanarError::NonPlanar),
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("unembedded edges imply a fragment");
        let path = fragment_path(&adj, &placed, &fragments[fi]);
        insert_path(&mut rot, &faces[face], &path);
        for w in path.windows(2) {
            embedded.insert(edge_key(w[0], w[1]));
        }
        for &v in &path {
            placed[v] = true;
        }
    }

    Ok(verts.iter().enumerate().map(|(i, &v)| (v, rot[i].iter().map(|&u| verts[u]).collect())).collect())
}

struct Fragment {
    /// Unembedded vertices of the fragment (empty for a chord).
    inner: Vec<usize>,
    attachments: BTreeSet<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(adj: &[Vec<usize>], placed: &[bool], embedded: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let m = adj.len();
    let mut out = Vec::new();
    for u in 0..m {
        if !placed[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && placed[v] && !embedded.contains(&(u, v)) {
                out.push(Fragment {
                    inner: vec![],
                    attachments: [u, v].into_iter().collect(),
                    chord: Some((u, v)),
                });
            }
        }
    }
    let mut comp = vec![false; m];
    for s in 0..m {
        if placed[s] || comp[s] {
            continue;
        }
        comp[s] = true;
        let mut inner = vec![];
        let mut attachments = BTreeSet::new();
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            inner.push(v);
            for &u in &adj[v] {
                if placed[u] {
                    attachments.insert(u);
                } else if !comp[u] {
                    comp[u] = true;
                    stack.push(u);
                }
            }
        }
        inner.sort_unstable();
        out.push(Fragment {
            inner,
            attachments,
            chord: None,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachments.
fn fragment_path(adj: &[Vec<usize>], placed: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let first = *frag.attachments.iter().next().unwrap();
    let inner: HashSet<usize> = frag.inner.iter().copied().collect();
    let start = *adj[first].iter().find(|v| inner.contains(v)).unwrap();
    let target = |v: usize| adj[v].iter().any(|&a| placed[a] && a != first);
    let mid = bfs_path(adj, start, target, |_, v| inner.contains(&v)).expect("fragment has two attachments");
    let last = *mid.last().unwrap();
    let end = *adj[last].iter().find(|&&a| placed[a] && a != first).unwrap();
    let mut path = vec![first];
    path.extend(mid);
    path.push(end);
    path
}

fn bfs_path(
    adj: &[Vec<usize>],
    start: usize,
    is_target: impl Fn(usize) -> bool,
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if is_target(v) {
            let mut path = vec![v];
            let mut x = v;
            while x != start {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &u in &adj[v] {
            if prev[u] == usize::MAX && allowed(v, u) {
                prev[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

fn trace(rot: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let succ = |v: usize, u: usize| {
        let r = &rot[v];
        let i = r.iter().position(|&w| w == u).unwrap();
        r[(i + 1) % r.len()]
    };
    let mut seen = HashSet::new();
    let mut out = vec![];
    for (u, r) in rot.iter().enumerate() {
        for &v in r {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut face = vec![];
            let (mut a, mut b) = (u, v);
            loop {
                seen.insert((a, b));
                face.push((a, b));
                let c = succ(b, a);
                a = b;
                b = c;
                if (a, b) == (u, v) {
                    break;
                }
            }
            out.push(face);
        }
    }
    out
}

/// Routes `path` (ends already placed, interior new) through `face`.
fn insert_path(rot: &mut [Vec<usize>], face: &[(usize, usize)], path: &[usize]) {
    let a = path[0];
    let b = *path.last().unwrap();
    let k = path.len();
    let into = |x: usize| face.iter().find(|&&(_, h)| h == x).map(|&(t, _)| t).unwrap();
    let (za, zb) = (into(a), into(b));
    insert_after(&mut rot[a], za, path[1]);
    insert_after(&mut rot[b], zb, path[k - 2]);
    for i in 1..k - 1 {
        rot[path[i]] = vec![path[i - 1], path[i + 1]];
    }
}

fn insert_after(r: &mut Vec<usize>, anchor: usize, new: usize) {
    let i = r.iter().position(|&w| w == anchor).unwrap();
    r.insert(i + 1, new);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::is_two_connected;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
    }

    #[test]
    fn k4_embeds_with_four_faces() {
        let g = build_embedding(4, &complete(4), None).unwrap();
        assert_eq!(g.faces().unwrap().len(), 4);
        assert!(g.is_sphere_embedding());
    }

    #[test]
    fn k5_is_nonplanar() {
        assert_eq!(build_embedding(5, &complete(5), None), Err(PlanarError::NonPlanar));
    }

    #[test]
    fn k33_is_nonplanar() {
        let edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        assert_eq!(build_embedding(6, &edges, None), Err(PlanarError::NonPlanar));
    }

    #[test]
    fn subdivided_k33_is_nonplanar() {
        // K3,3 with edge 0-3 subdivided by vertex 6.
        let mut edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).filter(|&e| e != (0, 3)).collect();
        edges.extend([(0, 6), (6, 3)]);
        assert_eq!(build_embedding(7, &edges, None), Err(PlanarError::NonPlanar));
    }

    #[test]
    fn octahedron_embeds() {
        let edges: Vec<_> = complete(6).into_iter().filter(|&(u, v)| v != u + 3).collect();
        let g = build_embedding(6, &edges, None).unwrap();
        assert_eq!(g.faces().unwrap().len(), 8);
        assert!(is_two_connected(&g));
    }

    #[test]
    fn supplied_rotation_is_checked() {
        // K4 with a twisted rotation at vertex 0 is a torus embedding.
        let good = build_embedding(4, &complete(4), None).unwrap();
        let mut bad: Vec<Vec<usize>> = good.rotation().to_vec();
        bad[0].swap(0, 1);
        assert!(matches!(
            build_embedding(4, &complete(4), Some(bad)),
            Err(PlanarError::InvalidRotation(_))
        ));
        assert!(build_embedding(4, &complete(4), Some(good.rotation().to_vec())).is_ok());
    }

    #[test]
    fn cycle_with_any_rotation() {
        let g = build_embedding(3, &[(0, 1), (1, 2), (2, 0)], Some(vec![vec![2, 1], vec![0, 2], vec![1, 0]])).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.faces().unwrap().len()), (3, 3, 2));
    }

    #[test]
    fn forest_and_bowtie_embed() {
        let g = build_embedding(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (5, 6)], None).unwrap();
        assert!(g.is_sphere_embedding());
    }

    #[test]
    fn loops_and_parallels_rejected() {
        assert!(matches!(build_embedding(2, &[(0, 0)], None), Err(PlanarError::NotSimple(_))));
        assert!(matches!(build_embedding(2, &[(0, 1), (1, 0)], None), Err(PlanarError::NotSimple(_))));
    }
}
