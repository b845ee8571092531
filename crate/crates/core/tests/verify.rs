use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use universal_minor::corpus;
use universal_minor::embed::{embed, EmbedOptions};
use universal_minor::io::GraphJson;
use universal_minor::planar::PlaneGraph;
use universal_minor::universal::{FaceId, GAddress, Truncation};
use universal_minor::verify::{
    brute_force_minor, check_inflated_copy, check_model, slice_connectivity_probe, AddressHost, AdjacencyHost,
    BruteCaps, Condition, HostGraph, VerifyError,
};

fn adjacency(g: &PlaneGraph) -> Vec<Vec<usize>> {
    (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect()
}

fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != v && !adj[u].contains(&v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    adj
}

fn c3_model() -> (universal_minor::embed::MinorModel, AddressHost) {
    let e = embed(&corpus::cycle(3), EmbedOptions::default()).unwrap();
    let host = AddressHost::from_level_map(&e.model.host_level_map).unwrap();
    (e.model, host)
}

#[test]
fn address_host_matches_generated_truncations() {
    for n in 0..=3 {
        let t = Truncation::generate(n, 1 << 20).unwrap();
        let host = AddressHost::new(t.expanded_faces().cloned()).unwrap();
        let all: Vec<GAddress> = t.addresses().to_vec();
        assert!(all.iter().all(|a| host.contains(a)));
        let within: BTreeSet<(usize, usize)> = host.edges_within(&all).into_iter().collect();
        let truth: BTreeSet<(usize, usize)> = t.graph().edges().into_iter().collect();
        assert_eq!(within, truth, "n = {n}");
    }
}

#[test]
fn address_host_rejects_orphans() {
    let orphan = FaceId::root(universal_minor::universal::Root::A).child(1);
    assert!(matches!(AddressHost::new([orphan]), Err(VerifyError::MalformedHost(_))));
    let host = AddressHost::new([]).unwrap();
    assert!(!host.contains(&GAddress::Center(FaceId::root(universal_minor::universal::Root::A))));
    assert!(host.is_edge(&GAddress::Base(0), &GAddress::Base(2)));
}

#[test]
fn valid_c3_model_passes() {
    let (model, host) = c3_model();
    let g = GraphJson::from_plane(&corpus::cycle(3));
    let report = check_inflated_copy(&model, &g, &host).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.verdicts.len(), 4);
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(json["verdicts"][2]["condition"], "iii");
}

#[test]
fn shared_interior_vertex_fails_disjointness() {
    let (mut model, host) = c3_model();
    let g = GraphJson::from_plane(&corpus::cycle(3));
    // Pick an edge whose path has an interior vertex and move that vertex
    // into another branch set as well.
    let (key, path) = model.branch_paths.iter().find(|(_, p)| p.len() > 2).map(|(k, p)| (*k, p.clone())).unwrap();
    let x = path[1].clone();
    let other = (0..3).find(|v| *v != key.0 && *v != key.1).unwrap_or(key.0);
    model.branch_sets.get_mut(&other).unwrap().push(x.clone());
    let report = check_inflated_copy(&model, &g, &host).unwrap();
    let v = report.verdict(Condition::Disjoint);
    assert!(!v.pass);
    assert!(v.witness.as_ref().unwrap().contains(&x.to_string()));
}

#[test]
fn disconnected_branch_set_fails_connectivity() {
    let (mut model, host) = c3_model();
    let g = GraphJson::from_plane(&corpus::cycle(3));
    let (a, b) = model.branch_sets[&1]
        .iter()
        .flat_map(|a| model.branch_sets[&2].iter().map(move |b| (a.clone(), b.clone())))
        .find(|(a, b)| !host.is_edge(a, b))
        .unwrap();
    model.branch_sets.insert(0, vec![a, b]);
    let report = check_inflated_copy(&model, &g, &host).unwrap();
    assert!(!report.verdict(Condition::Connected).pass);
}

#[test]
fn missing_edge_fails_cover() {
    let (mut model, host) = c3_model();
    let g = GraphJson::from_plane(&corpus::cycle(3));
    model.branch_paths.pop_first();
    let report = check_inflated_copy(&model, &g, &host).unwrap();
    assert!(!report.verdict(Condition::Covers).pass);
    assert!(report.verdict(Condition::Connected).pass);
}

#[test]
fn dangling_address_is_an_error() {
    let (mut model, host) = c3_model();
    let g = GraphJson::from_plane(&corpus::cycle(3));
    let deep = FaceId::root(universal_minor::universal::Root::B).child(0).child(0).child(0);
    model.branch_sets.get_mut(&1).unwrap().push(GAddress::Center(deep));
    assert!(matches!(check_inflated_copy(&model, &g, &host), Err(VerifyError::DanglingAddress(_))));
}

#[test]
fn broken_path_fails_condition_two() {
    let host = AdjacencyHost { adj: from_edges(4, &[(0, 1), (1, 2), (2, 3)]) };
    let sets = BTreeMap::from([(0, vec![0]), (1, vec![3])]);
    let paths = BTreeMap::from([((0, 1), vec![0, 2, 3])]);
    let r = check_model(&sets, &paths, &[0, 1], &[(0, 1)], &host).unwrap();
    assert!(!r.verdict(Condition::Paths).pass);
    let paths = BTreeMap::from([((0, 1), vec![0, 1, 2, 3])]);
    assert!(check_model(&sets, &paths, &[0, 1], &[(0, 1)], &host).unwrap().passed());
}

#[test]
fn brute_force_examples() {
    let caps = BruteCaps::default();
    let k4 = adjacency(&corpus::complete4());
    let c3 = adjacency(&corpus::cycle(3));
    let c5 = adjacency(&corpus::cycle(5));
    assert!(brute_force_minor(&k4, &c3, caps).unwrap().is_some());
    assert!(brute_force_minor(&c5, &k4, caps).unwrap().is_none());
    let big = adjacency(&corpus::cycle(21));
    assert!(matches!(brute_force_minor(&big, &c3, caps), Err(VerifyError::CapExceeded { .. })));
    let seven = adjacency(&corpus::cycle(7));
    assert!(matches!(brute_force_minor(&k4, &seven, caps), Err(VerifyError::CapExceeded { .. })));
}

#[test]
fn brute_force_witnesses_check() {
    let g = corpus::complete4();
    let gadj = adjacency(&g);
    let host = adjacency(&corpus::cube());
    assert_eq!(brute_force_minor(&host, &gadj, BruteCaps::default()).unwrap().is_some(), !series_parallel(&host));
    let host = adjacency(&corpus::prism());
    let sets = brute_force_minor(&host, &gadj, BruteCaps::default()).unwrap().unwrap();
    let h = AdjacencyHost { adj: host };
    let paths: BTreeMap<(usize, usize), Vec<usize>> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = sets[&u]
                .iter()
                .flat_map(|&a| sets[&v].iter().map(move |&b| (a, b)))
                .find(|(a, b)| h.is_edge(a, b))
                .unwrap();
            ((u, v), vec![a, b])
        })
        .collect();
    let r = check_model(&sets, &paths, &[0, 1, 2, 3], &g.edges(), &h).unwrap();
    assert!(r.passed(), "{r}");
}

/// True when repeatedly deleting vertices of degree at most one, bypassing
/// vertices of degree two and merging parallel edges empties the graph.
fn series_parallel(adj: &[Vec<usize>]) -> bool {
    let mut nb: Vec<BTreeSet<usize>> = adj.iter().map(|ns| ns.iter().copied().collect()).collect();
    let mut alive: BTreeSet<usize> = (0..adj.len()).collect();
    loop {
        let Some(&v) = alive.iter().find(|&&v| nb[v].len() <= 2) else {
            return alive.is_empty();
        };
        let ns: Vec<usize> = nb[v].iter().copied().collect();
        for &u in &ns {
            nb[u].remove(&v);
        }
        if let [a, b] = ns[..] {
            nb[a].insert(b);
            nb[b].insert(a);
        }
        nb[v].clear();
        alive.remove(&v);
    }
}

fn has_cycle(adj: &[Vec<usize>]) -> bool {
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let mut comps = 0;
    let mut seen = vec![false; adj.len()];
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        comps += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    edges + comps > adj.len()
}

fn small_graph() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (4usize..9).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..(2 * n)).prop_map(move |es| from_edges(n, &es))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn brute_force_matches_cycle_oracle(host in small_graph()) {
        let c3 = adjacency(&corpus::cycle(3));
        let found = brute_force_minor(&host, &c3, BruteCaps::default()).unwrap();
        prop_assert_eq!(found.is_some(), has_cycle(&host));
    }

    #[test]
    fn brute_force_matches_series_parallel_oracle(host in small_graph()) {
        let k4 = adjacency(&corpus::complete4());
        let found = brute_force_minor(&host, &k4, BruteCaps::default()).unwrap();
        prop_assert_eq!(found.is_some(), !series_parallel(&host));
    }
}

#[test]
fn probe_reaches_the_bound() {
    for n in 0..=1 {
        let r = slice_connectivity_probe(n, 3, 20, 11).unwrap();
        assert!(r.monotone);
        assert_eq!(r.depths.len(), 3);
        assert!(r.depths.last().unwrap().min_cut >= n + 3, "{:?}", r.depths);
        assert!(r.sufficient_from().is_some());
        assert_eq!(slice_connectivity_probe(n, 3, 20, 11).unwrap(), r);
    }
}
