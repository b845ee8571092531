use std::collections::{BTreeSet, HashMap, HashSet};

use proptest::prelude::*;
use universal_minor::corpus;
use universal_minor::ears::{ear_decomposition, locate_ear_face, ordered_edges, EarDecomposition, EdgeOrder};
use universal_minor::planar::{edge_key, is_two_connected, PlaneGraph};
use universal_minor::reduce::reduce;

/// The subgraph on `edges`, relabeled densely, keeping `full`'s rotations.
fn subgraph(full: &PlaneGraph, edges: &BTreeSet<(usize, usize)>) -> (PlaneGraph, HashMap<usize, usize>) {
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let id: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rotation = verts
        .iter()
        .map(|&v| {
            full.neighbors(v)
                .iter()
                .filter(|&&u| edges.contains(&edge_key(u, v)))
                .map(|u| id[u])
                .collect()
        })
        .collect();
    (PlaneGraph::from_rotation(rotation).unwrap(), id)
}

fn check(g: &PlaneGraph, d: &EarDecomposition, order: EdgeOrder) {
    let edges = ordered_edges(g, order);
    let c = &d.base_cycle;
    assert!(c.iter().collect::<HashSet<_>>().len() == c.len() && c.len() >= 3);
    let mut prefix: BTreeSet<(usize, usize)> = (0..c.len()).map(|i| edge_key(c[i], c[(i + 1) % c.len()])).collect();
    assert!(prefix.contains(&edges[0]), "base cycle misses the least edge");
    assert_eq!(d.ears.len(), g.edge_count() - g.vertex_count());
    for ear in &d.ears {
        let inside: HashSet<usize> = prefix.iter().flat_map(|&(u, v)| [u, v]).collect();
        let (x, y) = ear.ends();
        assert!(x != y && inside.contains(&x) && inside.contains(&y));
        for v in &ear.path[1..ear.path.len() - 1] {
            assert!(!inside.contains(v), "ear interior meets prefix");
        }
        // The recorded face is a face of the embedded prefix through both ends.
        let (sub, id) = subgraph(g, &prefix);
        let walk: Vec<usize> = ear.face.iter().map(|v| id[v]).collect();
        let face = sub.face_of((walk[0], walk[1]));
        assert_eq!(face.vertices(), walk);
        assert!(ear.face.contains(&x) && ear.face.contains(&y));
        let least_missing = edges.iter().find(|e| !prefix.contains(e)).unwrap();
        for w in ear.path.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
            prefix.insert(edge_key(w[0], w[1]));
        }
        assert!(prefix.contains(least_missing), "step did not cover the least edge");
        let (sub, _) = subgraph(g, &prefix);
        assert!(is_two_connected(&sub), "prefix not 2-connected");
    }
    let all: BTreeSet<_> = g.edges().into_iter().collect();
    assert_eq!(prefix, all);
}

fn corpus_graphs() -> Vec<(String, PlaneGraph)> {
    let mut out: Vec<(String, PlaneGraph)> = (3..=8).map(|n| (format!("c{n}"), corpus::cycle(n))).collect();
    out.push(("k4".into(), corpus::complete4()));
    out.push(("prism".into(), corpus::prism()));
    out.push(("cube".into(), corpus::cube()));
    for k in 4..=6 {
        out.push((format!("w{k}"), reduce(&corpus::wheel(k)).unwrap().0));
    }
    out.push(("octahedron".into(), corpus::octahedron()));
    out
}

#[test]
fn corpus_decomposes_in_many_orders() {
    for (name, g) in corpus_graphs() {
        for order in std::iter::once(EdgeOrder::Lexicographic).chain((0..10).map(EdgeOrder::Shuffled)) {
            let d = ear_decomposition(&g, order).unwrap_or_else(|e| panic!("{name}: {e}"));
            check(&g, &d, order);
        }
    }
}

#[test]
fn prism_far_edge() {
    // Triangles 0,1,2 and 3,4,5 with rungs 0-3, 1-4, 2-5.
    let g = corpus::prism();
    let prefix: HashSet<_> = [(0, 1), (1, 4), (3, 4), (0, 3)].into_iter().collect();
    let face = locate_ear_face(&g, &prefix, &[0, 2, 5, 3]).unwrap();
    assert_eq!(face.len(), 4);
    let mut from_other_end = locate_ear_face(&g, &prefix, &[3, 5, 2, 0]).unwrap();
    let mut f = face.clone();
    f.sort();
    from_other_end.sort();
    assert_eq!(f, from_other_end);
}

#[test]
fn decomposition_json_roundtrip() {
    let d = ear_decomposition(&corpus::cube(), EdgeOrder::Shuffled(7)).unwrap();
    let s = serde_json::to_string(&d).unwrap();
    assert_eq!(serde_json::from_str::<EarDecomposition>(&s).unwrap(), d);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn any_order_works(seed in any::<u64>(), which in 0usize..14) {
        let graphs = corpus_graphs();
        let (_, g) = &graphs[which % graphs.len()];
        let order = EdgeOrder::Shuffled(seed);
        let d = ear_decomposition(g, order).unwrap();
        check(g, &d, order);
    }
}
