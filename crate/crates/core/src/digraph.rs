//! Small adjacency-list digraph helpers: cycle witnesses and deterministic
//! topological orders.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Returns the nodes of some directed cycle `v0 -> v1 -> ... -> vk -> v0`.
pub fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = adj.len();
    let mut mark = vec![Mark::New; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        // (node, next edge position)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < adj[v].len() {
                let w = adj[v][top.1];
                top.1 += 1;
                match mark[w] {
                    Mark::New => {
                        mark[w] = Mark::Open;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    Mark::Open => {
                        let mut cycle = vec![v];
                        let mut u = v;
                        while u != w {
                            u = parent[u];
                            cycle.push(u);
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}

/// Kahn's algorithm, always emitting the smallest available node first.
/// Every edge `u -> v` places `u` before `v`. On failure returns a cycle.
pub fn topological_order(adj: &[Vec<usize>]) -> Result<Vec<usize>, Vec<usize>> {
    let n = adj.len();
    let mut indegree = vec![0usize; n];
    for targets in adj {
        for &w in targets {
            indegree[w] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &adj[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(find_cycle(adj).expect("leftover nodes imply a cycle"))
    }
}
