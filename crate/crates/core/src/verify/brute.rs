use std::collections::BTreeMap;

use super::VerifyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteCaps {
    pub host: usize,
    pub pattern: usize,
}

impl Default for BruteCaps {
    fn default() -> Self {
        BruteCaps { host: 20, pattern: 6 }
    }
}

/// Decides whether `g` is a minor of `host` by exhaustive search over
/// labelings of the host vertices. Returns branch sets on success.
pub fn brute_force_minor(
    host: &[Vec<usize>],
    g: &[Vec<usize>],
    caps: BruteCaps,
) -> Result<Option<BTreeMap<usize, Vec<usize>>>, VerifyError> {
    if host.len() > caps.host {
        return Err(VerifyError::CapExceeded { what: "host", size: host.len(), cap: caps.host });
    }
    if g.len() > caps.pattern {
        return Err(VerifyError::CapExceeded { what: "pattern", size: g.len(), cap: caps.pattern });
    }
    if g.is_empty() {
        return Ok(Some(BTreeMap::new()));
    }
    if g.len() > host.len() {
        return Ok(None);
    }
    // When both graphs are connected, unused host vertices can always be
    // merged into a neighbouring branch set, so every vertex gets a label.
    let spare = !(is_connected(host) && is_connected(g));
    let mut s = Search::new(host, g, spare);
    Ok(s.run().then(|| {
        let mut sets: BTreeMap<usize, Vec<usize>> = (0..g.len()).map(|i| (i, Vec::new())).collect();
        for (v, &l) in s.label.iter().enumerate() {
            if l < g.len() {
                sets.get_mut(&l).unwrap().push(v);
            }
        }
        sets
    }))
}

fn is_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == adj.len()
}

const NONE: usize = usize::MAX;

struct Search<'a> {
    host: &'a [Vec<usize>],
    g: &'a [Vec<usize>],
    order: Vec<usize>,
    label: Vec<usize>,
    labels: usize,
}

impl<'a> Search<'a> {
    fn new(host: &'a [Vec<usize>], g: &'a [Vec<usize>], spare: bool) -> Self {
        // Breadth-first order so that labels close off early.
        let mut order = Vec::with_capacity(host.len());
        let mut seen = vec![false; host.len()];
        for s in 0..host.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                order.push(v);
                for &u in &host[v] {
                    if !seen[u] {
                        seen[u] = true;
                        q.push_back(u);
                    }
                }
            }
        }
        Search {
            host,
            g,
            order,
            label: vec![NONE; host.len()],
            labels: g.len() + usize::from(spare),
        }
    }

    fn run(&mut self) -> bool {
        self.assign(0)
    }

    fn assign(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return self.complete();
        }
        let v = self.order[i];
        for l in 0..self.labels {
            self.label[v] = l;
            if self.viable(i + 1) && self.assign(i + 1) {
                return true;
            }
        }
        self.label[v] = NONE;
        false
    }

    /// Rejects partial labelings where some label already has a finished
    /// component next to another component, or a finished set that misses
    /// a required neighbour.
    fn viable(&self, assigned: usize) -> bool {
        let k = self.g.len();
        if self.order.len() - assigned < (0..k).filter(|&l| !self.label.contains(&l)).count() {
            return false;
        }
        let mut comp = vec![NONE; self.host.len()];
        let mut comps: Vec<(usize, bool)> = Vec::new();
        for s in 0..self.host.len() {
            let l = self.label[s];
            if l >= k || comp[s] != NONE {
                continue;
            }
            let id = comps.len();
            comp[s] = id;
            let mut open = false;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &self.host[v] {
                    if self.label[u] == NONE {
                        open = true;
                    } else if self.label[u] == l && comp[u] == NONE {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
            comps.push((l, open));
        }
        for l in 0..k {
            let mine: Vec<bool> = comps.iter().filter(|c| c.0 == l).map(|c| c.1).collect();
            if mine.len() > 1 && mine.iter().any(|open| !open) {
                return false;
            }
            if mine == [false] && !self.neighbours_met(l) {
                return false;
            }
        }
        true
    }

    fn neighbours_met(&self, l: usize) -> bool {
        self.g[l].iter().all(|&m| {
            (0..self.host.len()).any(|v| self.label[v] == l && self.host[v].iter().any(|&u| self.label[u] == m))
        })
    }

    fn complete(&self) -> bool {
        let k = self.g.len();
        (0..k).all(|l| {
            let set: Vec<usize> = (0..self.host.len()).filter(|&v| self.label[v] == l).collect();
            !set.is_empty() && self.connected(&set) && self.neighbours_met(l)
        })
    }

    fn connected(&self, set: &[usize]) -> bool {
        let l = self.label[set[0]];
        let mut seen = vec![false; self.host.len()];
        seen[set[0]] = true;
        let mut stack = vec![set[0]];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.host[v] {
                if !seen[u] && self.label[u] == l {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == set.len()
    }
}
