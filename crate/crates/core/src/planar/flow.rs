//! Vertex-disjoint path routing by unit-vertex-capacity maximum flow.

use std::collections::VecDeque;

/// Pairwise vertex-disjoint paths, each an ordered vertex list from a source
/// to a sink.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSet {
    pub paths: Vec<Vec<usize>>,
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks disjointness and that consecutive vertices are adjacent.
    pub fn is_valid_in(&self, adj: &[Vec<usize>]) -> bool {
        let mut used = std::collections::HashSet::new();
        self.paths.iter().all(|p| {
            !p.is_empty()
                && p.iter().all(|&v| used.insert(v))
                && p.windows(2).all(|w| adj[w[0]].contains(&w[1]))
        })
    }
}

/// Outcome of [`disjoint_paths`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Routing {
    Paths(PathSet),
    /// Fewer than `k` paths exist; `cut` is a vertex set of size `< k`
    /// separating the sources from the sinks.
    Infeasible { cut: Vec<usize>, flow: usize },
}

struct Arc {
    to: usize,
    cap: usize,
    rev: usize,
}

struct Network {
    arcs: Vec<Vec<Arc>>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network {
            arcs: (0..n).map(|_| Vec::new()).collect(),
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: usize) {
        let rf = self.arcs[to].len();
        let rt = self.arcs[from].len();
        self.arcs[from].push(Arc { to, cap, rev: rf });
        self.arcs[to].push(Arc { to: from, cap: 0, rev: rt });
    }

    /// One BFS augmentation of a single unit. Returns false when no
    /// augmenting path exists.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for (i, a) in self.arcs[u].iter().enumerate() {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    prev[a.to] = Some((u, i));
                    queue.push_back(a.to);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while let Some((u, i)) = prev[v] {
            self.arcs[u][i].cap -= 1;
            let rev = self.arcs[u][i].rev;
            self.arcs[v][rev].cap += 1;
            v = u;
        }
        true
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for a in &self.arcs[u] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}

/// Finds `k` vertex-disjoint paths from distinct `sources` to distinct
/// `sinks` avoiding `forbidden`, or a vertex cut of size `< k`.
///
/// Paths touch the source set only at their first vertex and the sink set
/// only at their last. The three vertex sets must be pairwise disjoint.
pub fn disjoint_paths(
    adj: &[Vec<usize>],
    sources: &[usize],
    sinks: &[usize],
    k: usize,
    forbidden: &[usize],
) -> Routing {
    let (paths, cut) = max_flow(adj, sources, sinks, k, forbidden);
    if paths.len() >= k {
        Routing::Paths(PathSet { paths })
    } else {
        Routing::Infeasible {
            flow: paths.len(),
            cut,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Plain,
    Source,
    Sink,
    Forbidden,
}

fn max_flow(
    adj: &[Vec<usize>],
    sources: &[usize],
    sinks: &[usize],
    limit: usize,
    forbidden: &[usize],
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = adj.len();
    let mut role = vec![Role::Plain; n];
    for &v in forbidden {
        role[v] = Role::Forbidden;
    }
    for &v in sources {
        assert!(role[v] == Role::Plain, "terminal sets must be disjoint");
        role[v] = Role::Source;
    }
    for &v in sinks {
        assert!(role[v] == Role::Plain, "terminal sets must be disjoint");
        role[v] = Role::Sink;
    }
    let big = limit + 1;
    let (s, t) = (2 * n, 2 * n + 1);
    let vin = |v: usize| 2 * v;
    let vout = |v: usize| 2 * v + 1;
    let mut net = Network::new(2 * n + 2);
    for v in 0..n {
        if role[v] == Role::Forbidden {
            continue;
        }
        net.add(vin(v), vout(v), 1);
        match role[v] {
            Role::Source => net.add(s, vin(v), big),
            Role::Sink => {
                net.add(vout(v), t, big);
                continue;
            }
            _ => {}
        }
        for &u in &adj[v] {
            if matches!(role[u], Role::Forbidden | Role::Source) {
                continue;
            }
            net.add(vout(v), vin(u), big);
        }
    }

    let mut flow = 0;
    while flow < limit && net.augment(s, t) {
        flow += 1;
    }

    // Walk each unit of flow from the super source.
    let mut paths = Vec::with_capacity(flow);
    let mut used_out = vec![false; net.arcs.len()];
    for &src in sources {
        let carries = net.arcs[vin(src)]
            .iter()
            .any(|a| a.to == vout(src) && a.cap == 0);
        if !carries {
            continue;
        }
        let mut path = vec![src];
        let mut v = src;
        while role[v] != Role::Sink {
            let node = vout(v);
            used_out[node] = true;
            let next = net.arcs[node]
                .iter()
                .find(|a| a.to < 2 * n && a.to % 2 == 0 && a.cap < big && is_forward(&net, node, a))
                .map(|a| a.to / 2)
                .expect("flow conservation");
            path.push(next);
            v = next;
        }
        paths.push(path);
    }
    paths.sort();

    let cut = if flow < limit {
        let reach = net.reachable(s);
        (0..n)
            .filter(|&v| role[v] != Role::Forbidden && reach[vin(v)] && !reach[vout(v)])
            .collect()
    } else {
        Vec::new()
    };
    (paths, cut)
}

// Forward arcs were created with positive capacity; residual twins start at
// zero. A forward arc `out(v) -> in(u)` carries flow iff its capacity dropped
// below `big`, and its twin then has positive capacity.
fn is_forward(net: &Network, from: usize, a: &Arc) -> bool {
    let twin = &net.arcs[a.to][a.rev];
    debug_assert_eq!(twin.to, from);
    twin.cap > 0 && from % 2 == 1
}

/// Independent check that removing `cut` (and `forbidden`) leaves no path
/// from any source to any sink.
pub fn verify_cut(
    adj: &[Vec<usize>],
    sources: &[usize],
    sinks: &[usize],
    forbidden: &[usize],
    cut: &[usize],
) -> bool {
    let mut blocked = vec![false; adj.len()];
    for &v in forbidden.iter().chain(cut) {
        blocked[v] = true;
    }
    let mut is_sink = vec![false; adj.len()];
    for &v in sinks {
        is_sink[v] = true;
    }
    let mut seen = blocked.clone();
    let mut stack: Vec<usize> = sources.iter().copied().filter(|&v| !blocked[v]).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(v) = stack.pop() {
        if is_sink[v] {
            return false;
        }
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    true
}

/// Maximum number of internally disjoint `s`-`t` paths for non-adjacent
/// `s`, `t`, together with a minimum separating vertex set. `None` when the
/// two vertices are adjacent or equal.
pub fn local_connectivity(adj: &[Vec<usize>], s: usize, t: usize) -> Option<(usize, Vec<usize>)> {
    if s == t || adj[s].contains(&t) {
        return None;
    }
    let common: Vec<usize> = adj[s].iter().copied().filter(|v| adj[t].contains(v)).collect();
    let sources: Vec<usize> = adj[s].iter().copied().filter(|v| !common.contains(v)).collect();
    let sinks: Vec<usize> = adj[t].iter().copied().filter(|v| !common.contains(v)).collect();
    let mut forbidden = common.clone();
    forbidden.extend([s, t]);
    let limit = sources.len().min(sinks.len());
    let (paths, mut cut) = max_flow(adj, &sources, &sinks, limit, &forbidden);
    if paths.len() == limit {
        // Saturated on one side: that side is itself a minimum cut.
        cut = if sources.len() <= sinks.len() { sources } else { sinks };
    }
    cut.extend(common.iter().copied());
    cut.sort_unstable();
    Some((paths.len() + common.len(), cut))
}
