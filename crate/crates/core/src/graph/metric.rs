use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

/// Breadth-first distances from `src`; unreachable vertices get `None`.
pub fn bfs_distances(g: &Graph, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[src] = Some(0);
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Exact diameter by a BFS from every vertex.
pub fn diameter(g: &Graph) -> Result<usize> {
    let mut best = 0;
    for s in 0..g.n() {
        for d in bfs_distances(g, s) {
            best = best.max(d.ok_or(Error::Disconnected)?);
        }
    }
    Ok(best)
}
