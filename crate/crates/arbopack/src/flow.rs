//! Small max-flow solver on indexed nodes (shortest augmenting paths).
//!
//! Capacities are integral; parallel edges add up. Deterministic: adjacency
//! follows insertion order and callers insert in sorted order.

pub(crate) const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNet {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

impl FlowNet {
    pub fn new(n: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); n],
            arcs: Vec::new(),
        }
    }

    /// Adds a directed arc `u -> v` with capacity `cap` and its zero-capacity
    /// residual twin. The twin is always at index `arc ^ 1`.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: i64) {
        let i = self.arcs.len();
        self.arcs.push(Arc { to: v, cap });
        self.arcs.push(Arc { to: u, cap: 0 });
        self.adj[u].push(i);
        self.adj[v].push(i + 1);
    }

    fn bfs_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut pred: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    pred[arc.to] = Some(a);
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[t] {
            return None;
        }
        let mut path = Vec::new();
        let mut u = t;
        while u != s {
            let a = pred[u].expect("predecessor on augmenting path");
            path.push(a);
            u = self.arcs[a ^ 1].to;
        }
        path.reverse();
        Some(path)
    }

    /// Augments until either no path remains or the flow reaches `limit`.
    /// Returns the flow value found (possibly capped at `limit`).
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut flow = 0;
        while flow < limit {
            let Some(path) = self.bfs_path(s, t) else {
                break;
            };
            let mut bottleneck = limit - flow;
            for &a in &path {
                bottleneck = bottleneck.min(self.arcs[a].cap);
            }
            for &a in &path {
                self.arcs[a].cap -= bottleneck;
                self.arcs[a ^ 1].cap += bottleneck;
            }
            flow += bottleneck;
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network; after a maximal
    /// flow this is the source side of a minimum cut.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_arcs_add_up() {
        let mut net = FlowNet::new(2);
        net.add_arc(0, 1, 1);
        net.add_arc(0, 1, 1);
        assert_eq!(net.max_flow(0, 1, INF), 2);
    }

    #[test]
    fn limit_stops_early() {
        let mut net = FlowNet::new(2);
        net.add_arc(0, 1, 5);
        assert_eq!(net.max_flow(0, 1, 2), 2);
    }

    #[test]
    fn min_cut_side_after_flow() {
        // 0 -> 1 -> 2 with a bottleneck on the second arc.
        let mut net = FlowNet::new(3);
        net.add_arc(0, 1, 2);
        net.add_arc(1, 2, 1);
        assert_eq!(net.max_flow(0, 2, INF), 1);
        let side = net.residual_reachable(0);
        assert_eq!(side, vec![true, true, false]);
    }
}
