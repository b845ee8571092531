use std::collections::{BTreeMap, BTreeSet, HashMap};

use universal_minor::corpus;
use universal_minor::ears::{ear_decomposition, EdgeOrder};
use universal_minor::embed::{embed, embed_any, EmbedError, EmbedOptions, Embedder, MinorModel};
use universal_minor::io::GraphJson;
use universal_minor::planar::{edge_key, PlaneGraph};
use universal_minor::universal::GAddress;
use universal_minor::verify::{check_inflated_copy, check_model, AddressHost};

fn subgraph(full: &PlaneGraph, edges: &BTreeSet<(usize, usize)>) -> (PlaneGraph, Vec<usize>) {
    let verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect::<BTreeSet<_>>().into_iter().collect();
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
    (PlaneGraph::from_rotation(rotation).unwrap(), verts)
}

fn normalized(walk: &[usize]) -> Vec<usize> {
    let i = (0..walk.len()).min_by_key(|&i| walk[i]).unwrap();
    walk[i..].iter().chain(&walk[..i]).copied().collect()
}

fn assert_sound(name: &str, g: &PlaneGraph, model: &MinorModel) {
    let host = AddressHost::from_level_map(&model.host_level_map).unwrap();
    let report = check_inflated_copy(model, &GraphJson::from_plane(g), &host).unwrap();
    assert!(report.passed(), "{name}:\n{report}");
}

#[test]
fn small_corpus_models_verify() {
    let graphs = [
        ("c3", corpus::cycle(3)),
        ("c4", corpus::cycle(4)),
        ("c5", corpus::cycle(5)),
        ("k4", corpus::complete4()),
        ("prism", corpus::prism()),
    ];
    for (name, g) in graphs {
        let e = embed(&g, EmbedOptions::default()).unwrap_or_else(|err| panic!("{name}: {err}"));
        assert_sound(name, &g, &e.model);
        assert_eq!(e.steps.len(), 1 + g.edge_count() - g.vertex_count());
        let rebuilt = e.model.host_level_map.rebuild(e.host.vertex_count()).unwrap();
        assert_eq!(rebuilt.vertex_count(), e.host.vertex_count());
    }
}

#[test]
fn steps_keep_faces_and_partial_models_consistent() {
    for (name, g) in [("k4", corpus::complete4()), ("prism", corpus::prism())] {
        for order in [EdgeOrder::Lexicographic, EdgeOrder::Shuffled(3)] {
            let opts = EmbedOptions { edge_order: order, ..EmbedOptions::default() };
            let dec = ear_decomposition(&g, order).unwrap();
            let mut e = Embedder::new(&g, opts).unwrap();
            let mut steps = vec![e.base(&dec.base_cycle).unwrap()];
            let mut prefix: BTreeSet<(usize, usize)> = (0..dec.base_cycle.len())
                .map(|i| edge_key(dec.base_cycle[i], dec.base_cycle[(i + 1) % dec.base_cycle.len()]))
                .collect();
            let mut before: Option<(BTreeMap<usize, Vec<usize>>, BTreeMap<(usize, usize), Vec<usize>>)> = None;
            for k in 0..=dec.ears.len() {
                if k > 0 {
                    let ear = &dec.ears[k - 1];
                    steps.push(e.ear(ear).unwrap_or_else(|err| panic!("{name}: {err}")));
                    for w in ear.path.windows(2) {
                        prefix.insert(edge_key(w[0], w[1]));
                    }
                }
                // Active faces are exactly the faces of the embedded prefix.
                let (sub, verts) = subgraph(&g, &prefix);
                let traced: BTreeSet<Vec<usize>> = sub
                    .trace_faces()
                    .iter()
                    .map(|f| normalized(&f.vertices().iter().map(|&v| verts[v]).collect::<Vec<_>>()))
                    .collect();
                let active: BTreeSet<Vec<usize>> = e.faces().iter().map(|f| normalized(&f.walk)).collect();
                assert_eq!(active, traced, "{name} step {k}");
                assert_eq!(e.faces().len(), traced.len());

                // The partial model is an inflated copy of the prefix.
                let t = e.host();
                let sets: BTreeMap<usize, Vec<GAddress>> = verts
                    .iter()
                    .map(|&v| (v, e.phi_vertex(v).iter().map(|&x| t.address(x).clone()).collect()))
                    .collect();
                let paths: BTreeMap<(usize, usize), Vec<GAddress>> = e
                    .phi_edges()
                    .iter()
                    .map(|(&k, p)| (k, p.iter().map(|&x| t.address(x).clone()).collect()))
                    .collect();
                let host = AddressHost::new(t.expanded_faces().cloned()).unwrap();
                let edges: Vec<(usize, usize)> = prefix.iter().copied().collect();
                let report = check_model(&sets, &paths, &verts, &edges, &host).unwrap();
                assert!(report.passed(), "{name} step {k}:\n{report}");

                // Branch sets only grow and branch paths never change.
                let now_sets: BTreeMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, e.phi_vertex(v).to_vec())).collect();
                if let Some((old_sets, old_paths)) = &before {
                    for (v, old) in old_sets {
                        let new: BTreeSet<usize> = now_sets[v].iter().copied().collect();
                        assert!(old.iter().all(|x| new.contains(x)), "{name}: branch set of {v} shrank");
                    }
                    for (key, p) in old_paths {
                        assert_eq!(&e.phi_edges()[key], p, "{name}: path of {key:?} changed");
                    }
                }
                before = Some((now_sets, e.phi_edges().clone()));
            }
            for s in &steps[1..] {
                let (used, bound) = s.budget.unwrap();
                assert!(used <= bound);
                assert!(s.level >= s.target.depth());
            }
        }
    }
}

#[test]
fn embedding_is_deterministic() {
    for order in [EdgeOrder::Lexicographic, EdgeOrder::Shuffled(42)] {
        let opts = EmbedOptions { edge_order: order, ..EmbedOptions::default() };
        let a = embed(&corpus::prism(), opts).unwrap().model.to_json();
        let b = embed(&corpus::prism(), opts).unwrap().model.to_json();
        assert_eq!(a, b);
    }
}

#[test]
fn model_json_roundtrip() {
    let m = embed(&corpus::complete4(), EmbedOptions::default()).unwrap().model;
    let back: MinorModel = serde_json::from_str(&m.to_json()).unwrap();
    assert_eq!(back, m);
}

#[test]
fn embed_any_handles_general_inputs() {
    let mut graphs = vec![
        ("star3".to_string(), corpus::star(3)),
        ("w4".to_string(), corpus::wheel(4)),
        ("vertex".to_string(), corpus::single_vertex()),
        ("p2".to_string(), corpus::path(2)),
    ];
    for (i, t) in corpus::trees(5).into_iter().enumerate() {
        graphs.push((format!("tree5-{i}"), t));
    }
    for (name, g) in graphs {
        let e = embed_any(&g, EmbedOptions::default()).unwrap_or_else(|err| panic!("{name}: {err}"));
        assert_sound(&name, &g, &e.model);
    }
}

#[test]
fn embed_rejects_unreduced_inputs() {
    assert!(matches!(embed(&corpus::wheel(4), EmbedOptions::default()), Err(EmbedError::NotSubcubic)));
    assert!(matches!(embed(&corpus::star(3), EmbedOptions::default()), Err(EmbedError::NotTwoConnected)));
}
