//! Primal network simplex for the dense transportation problem over
//! integers.
//!
//! Nodes `0..n` are sources, `n..n+m` sinks, and `n+m` is an artificial
//! root joined to every node. The spanning tree is kept strongly feasible
//! (every zero-flow tree arc points away from the root), which rules out
//! cycling for any entering rule. After each pivot the tree is rebuilt by a
//! breadth-first pass from the root; instances here have a few thousand
//! nodes, so this costs less than pricing.

use std::collections::VecDeque;

/// Choice of entering arc.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Most negative reduced cost within blocks of about `sqrt(arcs)` arcs,
    /// resuming where the previous search stopped.
    #[default]
    BlockSearch,
    /// Smallest arc index with negative reduced cost.
    Bland,
}

pub(crate) struct Solution {
    /// `(source, sink, flow)` for positive flows, in arc order.
    pub flows: Vec<(usize, usize, i128)>,
    /// Node potentials: `cost[i][j] >= pi[n + j] - pi[i]` with equality on
    /// tree arcs.
    pub pi: Vec<i128>,
}

#[derive(Clone, Copy)]
struct Arc {
    from: usize,
    to: usize,
    cost: i128,
}

struct Tree {
    parent: Vec<usize>,
    /// Arc joining a node to its parent.
    pred: Vec<usize>,
    /// Whether `pred` points from the node up to its parent.
    up: Vec<bool>,
    depth: Vec<usize>,
    pi: Vec<i128>,
}

/// Solves `min Σ c_ij f_ij` over `f >= 0` with row sums `supply` and column
/// sums `demand`. Totals must agree and all entries must be positive.
pub(crate) fn solve(supply: &[i128], demand: &[i128], cost: &[Vec<i128>], rule: PivotRule) -> Solution {
    let n = supply.len();
    let m = demand.len();
    let nodes = n + m;
    let root = nodes;
    let transport = n * m;

    let max_cost = cost.iter().flatten().map(|c| c.abs()).max().unwrap_or(0);
    let art = (max_cost + 1) * (nodes as i128 + 1);
    let mut arcs: Vec<Arc> = Vec::with_capacity(transport + nodes);
    for (i, row) in cost.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            arcs.push(Arc { from: i, to: n + j, cost: c });
        }
    }
    let mut flow = vec![0i128; transport + nodes];
    let mut in_tree = vec![false; transport + nodes];
    for (i, &s) in supply.iter().enumerate() {
        let a = arcs.len();
        arcs.push(Arc { from: i, to: root, cost: 0 });
        flow[a] = s;
        in_tree[a] = true;
    }
    for (j, &d) in demand.iter().enumerate() {
        let a = arcs.len();
        arcs.push(Arc { from: root, to: n + j, cost: art });
        flow[a] = d;
        in_tree[a] = true;
    }
    let mut tree_arcs: Vec<usize> = (transport..transport + nodes).collect();

    let mut tree = Tree {
        parent: vec![usize::MAX; nodes + 1],
        pred: vec![usize::MAX; nodes + 1],
        up: vec![false; nodes + 1],
        depth: vec![0; nodes + 1],
        pi: vec![0; nodes + 1],
    };
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes + 1];
    rebuild(&mut tree, &tree_arcs, &arcs, &mut adj, root);

    let block = ((transport as f64).sqrt().ceil() as usize).max(10).min(transport.max(1));
    let mut next = 0usize;
    loop {
        let entering = match rule {
            PivotRule::Bland => (0..transport).find(|&a| !in_tree[a] && reduced(&arcs[a], &tree.pi) < 0),
            PivotRule::BlockSearch => {
                let mut best: Option<(i128, usize)> = None;
                let mut scanned = 0;
                let mut a = next;
                while scanned < transport {
                    if !in_tree[a] {
                        let rc = reduced(&arcs[a], &tree.pi);
                        if rc < 0 && best.map_or(true, |(b, _)| rc < b) {
                            best = Some((rc, a));
                        }
                    }
                    scanned += 1;
                    a += 1;
                    if a == transport {
                        a = 0;
                    }
                    if scanned % block == 0 && best.is_some() {
                        break;
                    }
                }
                next = a;
                best.map(|(_, a)| a)
            }
        };
        let Some(e) = entering else { break };

        let first = arcs[e].from;
        let second = arcs[e].to;
        let join = lca(&tree, first, second);
        // flow goes first -> second, then up from second to join and down to first
        let mut delta = i128::MAX;
        let mut leave = usize::MAX;
        let mut u = first;
        while u != join {
            if tree.up[u] && flow[tree.pred[u]] < delta {
                delta = flow[tree.pred[u]];
                leave = u;
            }
            u = tree.parent[u];
        }
        let mut u = second;
        while u != join {
            if !tree.up[u] && flow[tree.pred[u]] <= delta {
                delta = flow[tree.pred[u]];
                leave = u;
            }
            u = tree.parent[u];
        }
        assert!(leave != usize::MAX, "transportation problem is bounded");

        flow[e] += delta;
        let mut u = first;
        while u != join {
            let a = tree.pred[u];
            flow[a] += if tree.up[u] { -delta } else { delta };
            u = tree.parent[u];
        }
        let mut u = second;
        while u != join {
            let a = tree.pred[u];
            flow[a] += if tree.up[u] { delta } else { -delta };
            u = tree.parent[u];
        }
        let out = tree.pred[leave];
        in_tree[out] = false;
        in_tree[e] = true;
        let pos = tree_arcs.iter().position(|&a| a == out).expect("leaving arc is a tree arc");
        tree_arcs[pos] = e;
        rebuild(&mut tree, &tree_arcs, &arcs, &mut adj, root);
    }

    debug_assert!((transport..transport + nodes).all(|a| flow[a] == 0), "balanced problem is feasible");
    let flows = (0..transport).filter(|&a| flow[a] > 0).map(|a| (a / m, a % m, flow[a])).collect();
    tree.pi.truncate(nodes);
    Solution { flows, pi: tree.pi }
}

fn reduced(a: &Arc, pi: &[i128]) -> i128 {
    a.cost + pi[a.from] - pi[a.to]
}

fn lca(t: &Tree, mut a: usize, mut b: usize) -> usize {
    while t.depth[a] > t.depth[b] {
        a = t.parent[a];
    }
    while t.depth[b] > t.depth[a] {
        b = t.parent[b];
    }
    while a != b {
        a = t.parent[a];
        b = t.parent[b];
    }
    a
}

fn rebuild(t: &mut Tree, tree_arcs: &[usize], arcs: &[Arc], adj: &mut [Vec<usize>], root: usize) {
    for v in adj.iter_mut() {
        v.clear();
    }
    for &a in tree_arcs {
        adj[arcs[a].from].push(a);
        adj[arcs[a].to].push(a);
    }
    t.parent[root] = root;
    t.depth[root] = 0;
    t.pi[root] = 0;
    let mut seen = vec![false; adj.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &a in &adj[u] {
            let arc = arcs[a];
            let (v, up) = if arc.from == u { (arc.to, false) } else { (arc.from, true) };
            if seen[v] {
                continue;
            }
            seen[v] = true;
            t.parent[v] = u;
            t.pred[v] = a;
            t.up[v] = up;
            t.depth[v] = t.depth[u] + 1;
            // reduced cost zero on tree arcs: pi_to = pi_from + cost
            t.pi[v] = if up { t.pi[u] - arc.cost } else { t.pi[u] + arc.cost };
            queue.push_back(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(sol: &Solution, cost: &[Vec<i128>]) -> i128 {
        sol.flows.iter().map(|&(i, j, f)| f * cost[i][j]).sum()
    }

    #[test]
    fn assignment_and_degenerate_cases() {
        let cost = vec![vec![4, 1, 3], vec![2, 0, 5], vec![3, 2, 2]];
        for rule in [PivotRule::BlockSearch, PivotRule::Bland] {
            let sol = solve(&[1, 1, 1], &[1, 1, 1], &cost, rule);
            assert_eq!(total(&sol, &cost), 5);
            for (i, row) in cost.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    assert!(c >= sol.pi[3 + j] - sol.pi[i]);
                }
            }
        }
        // all costs equal, heavily degenerate
        let flat = vec![vec![7; 5]; 4];
        let sol = solve(&[5, 5, 5, 5], &[4, 4, 4, 4, 4], &flat, PivotRule::Bland);
        assert_eq!(total(&sol, &flat), 140);
    }
}
