//! Dinic's algorithm on an integral residual graph.
//!
//! Arcs are stored in pairs: arc `2i` is the i-th forward arc, `2i + 1` its reverse.
//! Augmentation can be resumed after raising a capacity, which the greedy uses to
//! evaluate marginal gains without recomputing flow from zero.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: u64,
}

#[derive(Clone, Debug)]
pub struct Dinic {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    level: Vec<u32>,
    next: Vec<usize>,
}

impl Dinic {
    pub fn new(nodes: usize) -> Self {
        Dinic { adj: vec![Vec::new(); nodes], arcs: Vec::new(), level: vec![0; nodes], next: vec![0; nodes] }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds `from → to` and returns its forward arc index.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let idx = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.adj[from].push(idx);
        self.adj[to].push(idx + 1);
        idx
    }

    /// Flow currently pushed through forward arc `arc`.
    pub fn flow(&self, arc: usize) -> u64 {
        self.arcs[arc ^ 1].cap
    }

    pub fn residual(&self, arc: usize) -> u64 {
        self.arcs[arc].cap
    }

    /// Raises the capacity of forward arc `arc` by `delta`.
    pub fn raise_capacity(&mut self, arc: usize, delta: u64) {
        self.arcs[arc].cap += delta;
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && self.level[arc.to] == u32::MAX {
                    self.level[arc.to] = self.level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u64) -> u64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let a = self.adj[u][self.next[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    /// Augments from the current flow to a maximum flow; returns the amount added.
    pub fn augment(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|n| *n = 0);
            loop {
                let got = self.dfs(s, t, u64::MAX);
                if got == 0 {
                    break;
                }
                total += got;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        let mut g = Dinic::new(6);
        g.add_arc(0, 1, 10);
        g.add_arc(0, 2, 10);
        g.add_arc(1, 3, 4);
        g.add_arc(1, 4, 8);
        g.add_arc(2, 4, 9);
        g.add_arc(3, 5, 10);
        g.add_arc(4, 3, 6);
        g.add_arc(4, 5, 10);
        assert_eq!(g.augment(0, 5), 19);
        assert_eq!(g.augment(0, 5), 0);
    }

    #[test]
    fn disconnected() {
        let mut g = Dinic::new(4);
        g.add_arc(0, 1, 10);
        g.add_arc(2, 3, 5);
        assert_eq!(g.augment(0, 3), 0);
    }

    #[test]
    fn resumes_after_capacity_raise() {
        let mut g = Dinic::new(3);
        let a = g.add_arc(0, 1, 1);
        g.add_arc(1, 2, 5);
        assert_eq!(g.augment(0, 2), 1);
        g.raise_capacity(a, 3);
        assert_eq!(g.augment(0, 2), 3);
        assert_eq!(g.flow(a), 4);
    }
}
