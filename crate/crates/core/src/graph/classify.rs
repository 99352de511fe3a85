use serde::Serialize;

use super::{ClosedQuipuSpec, Graph, OpenQuipuSpec};

/// Structural family of a connected graph, with the recovered canonical spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", content = "spec", rename_all = "snake_case")]
pub enum ShapeClass {
    Path,
    Cycle,
    Dagger { tail: usize },
    TShape(OpenQuipuSpec),
    OpenQuipu(OpenQuipuSpec),
    ClosedQuipu(ClosedQuipuSpec),
    Other,
}

impl ShapeClass {
    pub fn tag(&self) -> &'static str {
        match self {
            ShapeClass::Path => "path",
            ShapeClass::Cycle => "cycle",
            ShapeClass::Dagger { .. } => "dagger",
            ShapeClass::TShape(_) => "t_shape",
            ShapeClass::OpenQuipu(_) => "open_quipu",
            ShapeClass::ClosedQuipu(_) => "closed_quipu",
            ShapeClass::Other => "other",
        }
    }

    /// Dagger, open quipu (T-shapes included) or closed quipu.
    pub fn in_trichotomy(&self) -> bool {
        matches!(
            self,
            ShapeClass::Dagger { .. }
                | ShapeClass::TShape(_)
                | ShapeClass::OpenQuipu(_)
                | ShapeClass::ClosedQuipu(_)
        )
    }

    /// The open-quipu spec for T-shapes and open quipus.
    pub fn open_spec(&self) -> Option<&OpenQuipuSpec> {
        match self {
            ShapeClass::TShape(s) | ShapeClass::OpenQuipu(s) => Some(s),
            _ => None,
        }
    }
}

/// Recognizes paths, cycles, daggers, T-shapes, open and closed quipus;
/// everything else, including disconnected input, is `Other`.
pub fn classify_shape(g: &Graph) -> ShapeClass {
    if g.n() == 0 || !g.is_connected() {
        return ShapeClass::Other;
    }
    if g.is_tree() {
        classify_tree(g)
    } else if g.is_unicyclic() {
        classify_unicyclic(g)
    } else {
        ShapeClass::Other
    }
}

/// Length of the path leaving `from` through `first`, following vertices of
/// degree 2 until one of degree 1 or at least 3 is reached. Returns the edge
/// count and the stopping vertex.
fn walk(g: &Graph, from: usize, first: usize) -> (usize, usize) {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    while g.degree(cur) == 2 {
        let nb = g.neighbors(cur);
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        len += 1;
    }
    (len, cur)
}

fn classify_tree(g: &Graph) -> ShapeClass {
    let n = g.n();
    let maxd = g.max_degree();
    if maxd <= 2 {
        return ShapeClass::Path;
    }
    if maxd >= 5 {
        return ShapeClass::Other;
    }
    if maxd == 4 {
        let hubs: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
        if hubs.len() != 1 {
            return ShapeClass::Other;
        }
        let c = hubs[0];
        let mut legs: Vec<usize> = g.neighbors(c).iter().map(|&w| walk(g, c, w).0).collect();
        legs.sort_unstable();
        if legs[..3] == [1, 1, 1] {
            return ShapeClass::Dagger { tail: legs[3] - 1 };
        }
        return ShapeClass::Other;
    }

    // pendent paths: walk inward from every leaf to its junction
    let mut pendent: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut on_pendent = vec![false; n];
    for leaf in (0..n).filter(|&v| g.degree(v) == 1) {
        let mut prev = leaf;
        let mut cur = g.neighbors(leaf)[0];
        let mut len = 1;
        on_pendent[leaf] = true;
        while g.degree(cur) == 2 {
            on_pendent[cur] = true;
            let nb = g.neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
            len += 1;
        }
        pendent[cur].push(len);
    }
    let junctions: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 3).collect();
    if junctions.len() == 1 {
        let p = &pendent[junctions[0]];
        return match OpenQuipuSpec::t_shape(p[0], p[1], p[2]) {
            Ok(s) => ShapeClass::TShape(s.canonical()),
            Err(_) => ShapeClass::Other,
        };
    }

    // the rest must be a path whose ends are junctions
    let spine_deg = |v: usize| g.neighbors(v).iter().filter(|&&w| !on_pendent[w]).count();
    if (0..n).any(|v| !on_pendent[v] && spine_deg(v) > 2) {
        return ShapeClass::Other;
    }
    let Some(&start) = junctions.iter().find(|&&j| spine_deg(j) == 1) else {
        return ShapeClass::Other;
    };
    let mut k = Vec::new();
    let mut m = Vec::new();
    let p0 = &pendent[start];
    k.push(p0[0].max(p0[1]));
    m.push(p0[0].min(p0[1]));
    let (mut prev, mut cur) = (usize::MAX, start);
    let mut visited_junctions = 1;
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| !on_pendent[w] && w != prev);
        let Some(mut nx) = next else { break };
        let mut internal = 0;
        let mut pv = cur;
        while g.degree(nx) == 2 {
            internal += 1;
            let nb = g.neighbors(nx);
            let step = if nb[0] == pv { nb[1] } else { nb[0] };
            pv = nx;
            nx = step;
        }
        k.push(internal);
        visited_junctions += 1;
        let p = &pendent[nx];
        if spine_deg(nx) == 1 {
            m.push(p[0].min(p[1]));
            k.push(p[0].max(p[1]));
            break;
        }
        m.push(p[0]);
        prev = pv;
        cur = nx;
    }
    if visited_junctions != junctions.len() {
        return ShapeClass::Other;
    }
    match OpenQuipuSpec::new(k, m) {
        Ok(s) => ShapeClass::OpenQuipu(s.canonical()),
        Err(_) => ShapeClass::Other,
    }
}

fn classify_unicyclic(g: &Graph) -> ShapeClass {
    let n = g.n();
    if g.max_degree() > 3 {
        return ShapeClass::Other;
    }
    // strip leaves until only the cycle remains
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut on_cycle = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        on_cycle[v] = false;
        for &w in g.neighbors(v) {
            if on_cycle[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    if (0..n).any(|v| !on_cycle[v] && g.degree(v) > 2) {
        return ShapeClass::Other;
    }
    let junctions: Vec<usize> = (0..n)
        .filter(|&v| on_cycle[v] && g.degree(v) == 3)
        .collect();
    if junctions.is_empty() {
        return ShapeClass::Cycle;
    }
    let start = junctions[0];
    let pendent_len = |j: usize| {
        let w = g
            .neighbors(j)
            .iter()
            .copied()
            .find(|&w| !on_cycle[w])
            .expect("junction has a branch");
        walk(g, j, w).0
    };
    let mut k = Vec::new();
    let mut m = vec![pendent_len(start)];
    let mut prev = start;
    let mut cur = g
        .neighbors(start)
        .iter()
        .copied()
        .find(|&w| on_cycle[w])
        .expect("cycle neighbour");
    let mut internal = 0;
    loop {
        if cur == start {
            k.push(internal);
            break;
        }
        if g.degree(cur) == 3 {
            k.push(internal);
            internal = 0;
            m.push(pendent_len(cur));
        } else {
            internal += 1;
        }
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| on_cycle[w] && w != prev)
            .expect("cycle continues");
        prev = cur;
        cur = next;
    }
    match ClosedQuipuSpec::new(k, m) {
        Ok(s) => ShapeClass::ClosedQuipu(s.canonical()),
        Err(_) => ShapeClass::Other,
    }
}

/// Whether `g` embeds as a subgraph into the `m`-Urchin graph for some
/// number of junctions.
///
/// An Urchin is a cycle with a pendent path of length `m` at every vertex,
/// so a unicyclic graph embeds iff it is a cycle or a closed quipu with all
/// pendent paths of length at most `m`. A tree embeds by laying its spine
/// along a long enough cycle: every junction must send one branch into a
/// tooth, which bounds the shorter leg at each junction by `m`.
pub fn is_subgraph_of_urchin(g: &Graph, m: usize) -> bool {
    match classify_shape(g) {
        ShapeClass::Path | ShapeClass::Cycle => true,
        ShapeClass::ClosedQuipu(s) => s.m().iter().all(|&x| x <= m),
        ShapeClass::TShape(s) | ShapeClass::OpenQuipu(s) => s.m().iter().all(|&x| x <= m),
        ShapeClass::Dagger { .. } | ShapeClass::Other => false,
    }
}

/// Whether `g` embeds as a subgraph into the `m`-Laundry graph for some
/// number of internal paths.
///
/// Only trees can. Interior junctions use a tooth of length `m`; an end
/// junction either uses a tooth (`m_end ≤ m`) or sits at an end of the
/// Laundry spine, where both of its legs run into the two pendent paths of
/// length `m + 1`.
pub fn is_subgraph_of_laundry(g: &Graph, m: usize) -> bool {
    let end_fits = |leg_short: usize, leg_long: usize| leg_short <= m || leg_long <= m + 1;
    match classify_shape(g) {
        ShapeClass::Path => true,
        ShapeClass::TShape(s) => end_fits(s.m()[0], s.k()[0]),
        ShapeClass::OpenQuipu(s) => {
            let r = s.r();
            end_fits(s.m()[0], s.k()[0])
                && end_fits(s.m()[r], s.k()[r + 1])
                && s.m()[1..r].iter().all(|&x| x <= m)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_closed_quipu, build_dagger, build_open_quipu};

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn named_shapes() {
        assert_eq!(classify_shape(&Graph::cycle(9).unwrap()), ShapeClass::Cycle);
        assert_eq!(classify_shape(&Graph::path(4)), ShapeClass::Path);
        assert_eq!(classify_shape(&petersen()), ShapeClass::Other);
        assert_eq!(
            classify_shape(&build_dagger(3)),
            ShapeClass::Dagger { tail: 3 }
        );
        assert_eq!(
            classify_shape(&Graph::star(4)),
            ShapeClass::Dagger { tail: 0 }
        );
        assert_eq!(classify_shape(&Graph::star(5)), ShapeClass::Other);
    }

    #[test]
    fn open_round_trip() {
        let s = OpenQuipuSpec::new(vec![2, 1, 2], vec![2, 2]).unwrap();
        assert_eq!(
            classify_shape(&build_open_quipu(&s)),
            ShapeClass::OpenQuipu(s.canonical())
        );
        let s = OpenQuipuSpec::new(vec![5, 0, 3, 1], vec![1, 4, 1]).unwrap();
        assert_eq!(
            classify_shape(&build_open_quipu(&s)),
            ShapeClass::OpenQuipu(s.canonical())
        );
        let t = OpenQuipuSpec::t_shape(4, 1, 2).unwrap();
        assert_eq!(
            classify_shape(&build_open_quipu(&t)),
            ShapeClass::TShape(t.canonical())
        );
    }

    #[test]
    fn closed_round_trip() {
        let s = ClosedQuipuSpec::new(vec![3, 0, 2], vec![1, 2, 1]).unwrap();
        assert_eq!(
            classify_shape(&build_closed_quipu(&s)),
            ShapeClass::ClosedQuipu(s.canonical())
        );
        let z = ClosedQuipuSpec::new(vec![7, 7], vec![1, 0]).unwrap();
        assert_eq!(
            classify_shape(&build_closed_quipu(&z)),
            ShapeClass::ClosedQuipu(z.canonical())
        );
    }

    #[test]
    fn spine_junctions_must_be_collinear() {
        // three T-junctions around a centre junction
        let mut g = Graph::star(3);
        for leaf in 1..=3 {
            g.attach_path(leaf, 1);
            g.attach_path(leaf, 1);
        }
        assert_eq!(classify_shape(&g), ShapeClass::Other);
    }

    #[test]
    fn urchin_and_laundry_membership() {
        let winner = ClosedQuipuSpec::new(vec![7, 7], vec![1, 0])
            .unwrap()
            .build();
        assert!(is_subgraph_of_urchin(&winner, 1));
        assert!(!is_subgraph_of_urchin(&winner, 0));
        assert!(!is_subgraph_of_laundry(&winner, 1));
        let laundry = OpenQuipuSpec::laundry(2, 3).unwrap().build();
        assert!(is_subgraph_of_laundry(&laundry, 2));
        assert!(!is_subgraph_of_laundry(&laundry, 1));
        assert!(is_subgraph_of_urchin(
            &ClosedQuipuSpec::urchin(2, 5).unwrap().build(),
            2
        ));
    }
}
