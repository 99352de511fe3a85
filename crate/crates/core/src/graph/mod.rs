//! Simple undirected graphs, quipu specifications and their builders.

mod build;
mod classify;
mod graph6;
mod metric;
mod spec;

pub use build::{build_closed_quipu, build_dagger, build_open_quipu};
pub use classify::{classify_shape, is_subgraph_of_laundry, is_subgraph_of_urchin, ShapeClass};
pub use graph6::{decode_graph6, encode_graph6, ingest_graph6};
pub use metric::{bfs_distances, diameter};
pub use spec::{ClosedQuipuSpec, GraphSpec, OpenQuipuSpec};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n` stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("repeated edge ({u},{v})")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph edges are simple")
    }

    /// Star with one center (vertex 0) and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are simple")
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        let pu = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pu, v);
        let pv = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pv, u);
    }

    /// Appends a fresh vertex and returns its index.
    pub(crate) fn push_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Hangs a path of `len` new vertices off `at` and returns the far end
    /// (or `at` itself when `len == 0`).
    pub(crate) fn attach_path(&mut self, at: usize, len: usize) -> usize {
        let mut last = at;
        for _ in 0..len {
            let v = self.push_vertex();
            self.insert_edge(last, v);
            last = v;
        }
        last
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Connected with exactly one cycle.
    pub fn is_unicyclic(&self) -> bool {
        self.n() > 0 && self.edge_count() == self.n() && self.is_connected()
    }

    /// Induced subgraph on the vertices not in `removed`, relabelled in
    /// increasing order.
    pub fn remove_vertices(&self, removed: &[usize]) -> Graph {
        let mut keep = vec![true; self.n()];
        for &v in removed {
            keep[v] = false;
        }
        let mut index = vec![usize::MAX; self.n()];
        let mut next = 0;
        for v in 0..self.n() {
            if keep[v] {
                index[v] = next;
                next += 1;
            }
        }
        let mut g = Graph::empty(next);
        for (u, v) in self.edges() {
            if keep[u] && keep[v] {
                g.insert_edge(index[u], index[v]);
            }
        }
        g
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if let Ok(p) = g.adj[u].binary_search(&v) {
            g.adj[u].remove(p);
        }
        if let Ok(p) = g.adj[v].binary_search(&u) {
            g.adj[v].remove(p);
        }
        g
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut edges = self.edges();
        edges.push((u, v));
        Graph::from_edges(self.n(), &edges)
    }

    /// Replaces edge `uv` by a path `u – w – v` through a new vertex `w`.
    pub fn subdivide_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!(
                "no edge ({u},{v}) to subdivide"
            )));
        }
        let mut g = self.remove_edge(u, v);
        let w = g.push_vertex();
        g.insert_edge(u, w);
        g.insert_edge(w, v);
        Ok(g)
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut a = vec![vec![0; n]; n];
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                a[u][v] = 1;
            }
        }
        a
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        g.adj.extend(
            other
                .adj
                .iter()
                .map(|nb| nb.iter().map(|&v| v + off).collect()),
        );
        g
    }
}
