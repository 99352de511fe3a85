use super::{ClosedQuipuSpec, Graph, OpenQuipuSpec};

/// Builds the open quipu: a spine through junctions `0..=r`, with `k[i]`
/// internal vertices between junctions `i−1` and `i`, a pendent path of
/// length `m[i]` at junction `i`, and the end legs `k[0]`, `k[r+1]`.
pub fn build_open_quipu(spec: &OpenQuipuSpec) -> Graph {
    let (k, m, r) = (spec.k(), spec.m(), spec.r());
    let mut g = Graph::empty(1);
    let mut junction = 0;
    g.attach_path(junction, k[0]);
    g.attach_path(junction, m[0]);
    for i in 1..=r {
        let before = g.attach_path(junction, k[i]);
        let next = g.push_vertex();
        g.insert_edge(before, next);
        junction = next;
        g.attach_path(junction, m[i]);
    }
    g.attach_path(junction, k[r + 1]);
    g
}

/// Builds the closed quipu: cycle of `r + Σk` vertices with junction `i`
/// followed by `k[i]` internal vertices, and a pendent path of length `m[i]`
/// at junction `i`.
pub fn build_closed_quipu(spec: &ClosedQuipuSpec) -> Graph {
    let (k, m, r) = (spec.k(), spec.m(), spec.r());
    let len = spec.cycle_len();
    let mut g = Graph::empty(len);
    for v in 0..len {
        g.insert_edge(v, (v + 1) % len);
    }
    let mut junction = 0;
    for i in 0..r {
        g.attach_path(junction, m[i]);
        junction += k[i] + 1;
    }
    g
}

/// The star `S5` with a path of `tail` edges attached to one leaf.
pub fn build_dagger(tail: usize) -> Graph {
    let mut g = Graph::star(4);
    g.attach_path(1, tail);
    g
}
