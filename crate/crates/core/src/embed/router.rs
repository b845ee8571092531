//! Vertex-disjoint routing in a region that only grows between rounds.
//!
//! Paths found so far stay valid when faces are expanded, so each round only
//! searches for augmenting paths in the residual graph.

use std::collections::{HashMap, VecDeque};

use crate::universal::{LocalGraph, Truncation};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Plain,
    Source,
    Sink,
    Forbidden,
}

/// Where the last failed search got stuck.
pub(super) struct Frontier {
    /// Local vertices whose entry was reached but which cannot be passed.
    pub cut: Vec<usize>,
}

pub(super) struct Router {
    pub vertices: Vec<usize>,
    pub local: HashMap<usize, usize>,
    adj: Vec<Vec<usize>>,
    role: Vec<Role>,
    succ: Vec<usize>,
    pred: Vec<usize>,
    flow: usize,
}

impl Router {
    pub fn new(lg: LocalGraph, sources: &[usize], sinks: &[usize], forbidden: &[usize]) -> Self {
        let n = lg.vertices.len();
        let mut role = vec![Role::Plain; n];
        for v in forbidden {
            role[lg.local[v]] = Role::Forbidden;
        }
        for v in sources {
            debug_assert!(role[lg.local[v]] == Role::Plain);
            role[lg.local[v]] = Role::Source;
        }
        for v in sinks {
            debug_assert!(role[lg.local[v]] == Role::Plain);
            role[lg.local[v]] = Role::Sink;
        }
        Router {
            vertices: lg.vertices,
            local: lg.local,
            adj: lg.adj,
            role,
            succ: vec![NONE; n],
            pred: vec![NONE; n],
            flow: 0,
        }
    }

    /// Takes in host vertices `from..` created by expanding faces of the
    /// region. They are interior, so all their edges belong to the region.
    pub fn grow(&mut self, t: &Truncation, from: usize) {
        for v in from..t.vertex_count() {
            self.local.insert(v, self.vertices.len());
            self.vertices.push(v);
            self.adj.push(Vec::new());
            self.role.push(Role::Plain);
            self.succ.push(NONE);
            self.pred.push(NONE);
        }
        for v in from..t.vertex_count() {
            let i = self.local[&v];
            for u in t.neighbors(v) {
                if let Some(&j) = self.local.get(u) {
                    self.adj[i].push(j);
                    if *u < from {
                        self.adj[j].push(i);
                    }
                }
            }
        }
    }

    fn on_path(&self, v: usize) -> bool {
        self.succ[v] != NONE || self.pred[v] != NONE
    }

    /// One breadth-first search of the residual graph. Node `2v` is the entry
    /// of `v`, node `2v + 1` its exit.
    fn augment(&mut self) -> Result<(), Frontier> {
        let n = self.vertices.len();
        let mut parent = vec![NONE; 2 * n];
        let mut seen = vec![false; 2 * n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            if self.role[v] == Role::Source && !self.on_path(v) {
                seen[2 * v] = true;
                queue.push_back(2 * v);
            }
        }
        let mut end = NONE;
        'search: while let Some(x) = queue.pop_front() {
            let v = x / 2;
            let mut visit = |y: usize, seen: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    queue.push_back(y);
                }
            };
            if x % 2 == 0 {
                if self.role[v] == Role::Sink {
                    if self.pred[v] == NONE {
                        end = x;
                        break 'search;
                    }
                } else if !self.on_path(v) {
                    visit(x + 1, &mut seen, &mut queue);
                }
                if self.pred[v] != NONE {
                    visit(2 * self.pred[v] + 1, &mut seen, &mut queue);
                }
            } else {
                for &u in &self.adj[v] {
                    if matches!(self.role[u], Role::Forbidden | Role::Source) || self.succ[v] == u {
                        continue;
                    }
                    visit(2 * u, &mut seen, &mut queue);
                }
                if self.on_path(v) {
                    visit(x - 1, &mut seen, &mut queue);
                }
            }
        }
        if end == NONE {
            let cut = (0..n)
                .filter(|&v| self.role[v] != Role::Forbidden && seen[2 * v] && !seen[2 * v + 1])
                .collect();
            return Err(Frontier { cut });
        }

        let mut add = Vec::new();
        let mut remove = Vec::new();
        let mut y = end;
        while parent[y] != NONE {
            let x = parent[y];
            let (a, b) = (x / 2, y / 2);
            if a != b {
                if x % 2 == 1 {
                    add.push((a, b));
                } else {
                    // Entry of `a` back to the exit of its predecessor `b`.
                    remove.push((b, a));
                }
            }
            y = x;
        }
        for (a, b) in remove {
            self.succ[a] = NONE;
            self.pred[b] = NONE;
        }
        for (a, b) in add {
            self.succ[a] = b;
            self.pred[b] = a;
        }
        self.flow += 1;
        Ok(())
    }

    /// Augments until `k` paths exist or the search gets stuck.
    pub fn saturate(&mut self, k: usize) -> Result<(), Frontier> {
        while self.flow < k {
            self.augment()?;
        }
        Ok(())
    }

    /// The current paths as host vertices, sorted.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for s in 0..self.vertices.len() {
            if self.role[s] != Role::Source || self.succ[s] == NONE {
                continue;
            }
            let mut p = vec![self.vertices[s]];
            let mut v = s;
            while self.role[v] != Role::Sink {
                v = self.succ[v];
                p.push(self.vertices[v]);
            }
            out.push(p);
        }
        out.sort();
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_forbidden(&self, v: usize) -> bool {
        self.role[v] == Role::Forbidden
    }
}
