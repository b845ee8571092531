//! Small named planar graphs.

use crate::planar::{build_embedding, PlaneGraph};

fn embed(n: usize, edges: &[(usize, usize)]) -> PlaneGraph {
    build_embedding(n, edges, None).expect("corpus graphs are planar")
}

pub fn cycle(n: usize) -> PlaneGraph {
    PlaneGraph::cycle(n)
}

pub fn path(n: usize) -> PlaneGraph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    embed(n, &edges)
}

pub fn complete4() -> PlaneGraph {
    embed(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// `K_{1,k}`; vertex 0 is the center.
pub fn star(k: usize) -> PlaneGraph {
    let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
    embed(k + 1, &edges)
}

/// Hub 0 joined to every vertex of the rim cycle `1..=k`.
pub fn wheel(k: usize) -> PlaneGraph {
    let mut edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
    edges.extend((1..=k).map(|v| (v, v % k + 1)));
    embed(k + 1, &edges)
}

/// Triangular prism.
pub fn prism() -> PlaneGraph {
    embed(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
}

pub fn cube() -> PlaneGraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    embed(8, &edges)
}

pub fn octahedron() -> PlaneGraph {
    let mut edges = Vec::new();
    for u in 0..6usize {
        for v in u + 1..6 {
            if v != u + 3 {
                edges.push((u, v));
            }
        }
    }
    embed(6, &edges)
}

pub fn truncated_tetrahedron() -> PlaneGraph {
    // Corner triangles {3c, 3c+1, 3c+2}; vertex 3c+k points at corner k'.
    let mut edges = Vec::new();
    let mut slot = [[0usize; 4]; 4];
    for c in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&o| o != c).collect();
        for (k, &o) in others.iter().enumerate() {
            slot[c][o] = 3 * c + k;
        }
        edges.push((3 * c, 3 * c + 1));
        edges.push((3 * c + 1, 3 * c + 2));
        edges.push((3 * c + 2, 3 * c));
    }
    for c in 0..4 {
        for o in c + 1..4 {
            edges.push((slot[c][o], slot[o][c]));
        }
    }
    embed(12, &edges)
}

/// Two degree-3 vertices joined by three internally disjoint paths with
/// the given numbers of internal vertices.
pub fn theta(a: usize, b: usize, c: usize) -> PlaneGraph {
    let mut edges = Vec::new();
    let mut next = 2;
    for len in [a, b, c] {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    embed(next, &edges)
}

pub fn single_vertex() -> PlaneGraph {
    embed(1, &[])
}

/// Every tree on `n` vertices given by a parent array with `parent[v] < v`,
/// up to relabeling duplicates.
pub fn trees(n: usize) -> Vec<PlaneGraph> {
    let mut out = Vec::new();
    let mut parent = vec![0usize; n];
    fn rec(v: usize, n: usize, parent: &mut Vec<usize>, out: &mut Vec<PlaneGraph>) {
        if v == n {
            let edges: Vec<_> = (1..n).map(|u| (parent[u], u)).collect();
            out.push(embed(n, &edges));
            return;
        }
        // Parents are non-decreasing, which still reaches every shape.
        let lo = if v > 1 { parent[v - 1] } else { 0 };
        for p in lo..v {
            parent[v] = p;
            rec(v + 1, n, parent, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(1, n, &mut parent, &mut out);
    out
}

/// Named graphs used by the CLI and tests.
pub fn by_name(name: &str) -> Option<PlaneGraph> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    Some(match name {
        "k4" => complete4(),
        "prism" => prism(),
        "cube" => cube(),
        "octahedron" => octahedron(),
        "truncated-tetrahedron" => truncated_tetrahedron(),
        "vertex" => single_vertex(),
        _ => {
            if let Some(n) = num("c").filter(|&n| n >= 3) {
                cycle(n)
            } else if let Some(n) = num("p").filter(|&n| n >= 1) {
                path(n)
            } else if let Some(k) = num("star").filter(|&k| k >= 1) {
                star(k)
            } else if let Some(k) = num("w").filter(|&k| k >= 3) {
                wheel(k)
            } else {
                return None;
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!((cube().vertex_count(), cube().edge_count()), (8, 12));
        assert_eq!((prism().vertex_count(), prism().edge_count()), (6, 9));
        assert_eq!(truncated_tetrahedron().edge_count(), 18);
        assert_eq!(truncated_tetrahedron().max_degree(), 3);
        assert_eq!(octahedron().edge_count(), 12);
        assert_eq!(wheel(6).edge_count(), 12);
        assert_eq!(theta(1, 2, 3).vertex_count(), 8);
        assert!(truncated_tetrahedron().is_sphere_embedding());
    }

    #[test]
    fn tree_shapes() {
        // Non-decreasing parent arrays are counted by Catalan numbers.
        assert_eq!(trees(4).len(), 5);
        assert!(trees(7).iter().all(|t| t.edge_count() == 6));
    }
}
