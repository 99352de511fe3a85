use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::IntPoly;
use crate::graph::Graph;

static PATHS: OnceLock<RwLock<Vec<IntPoly>>> = OnceLock::new();

/// `φ_{P_n}`, memoized across threads; `φ_{P_0} = 1`.
pub fn path_poly(n: usize) -> IntPoly {
    let cache = PATHS.get_or_init(|| RwLock::new(vec![IntPoly::one(), IntPoly::x()]));
    if let Some(p) = cache.read().expect("path cache poisoned").get(n) {
        return p.clone();
    }
    let mut table = cache.write().expect("path cache poisoned");
    while table.len() <= n {
        let len = table.len();
        let next = &IntPoly::x() * &table[len - 1] - table[len - 2].clone();
        table.push(next);
    }
    table[n].clone()
}

/// Exact characteristic polynomial `det(λI − A)`.
///
/// Trees go through the rooted vertex-deletion recurrence, unicyclic graphs
/// through one cycle-edge deletion, everything else through Berkowitz's
/// division-free algorithm.
pub fn char_poly(g: &Graph) -> IntPoly {
    if g.n() == 0 {
        return IntPoly::one();
    }
    let m = g.edge_count();
    if m < g.n() {
        if g.is_connected() {
            return tree_poly(g);
        }
        return forest_poly(g);
    }
    if g.is_unicyclic() {
        return unicyclic_poly(g);
    }
    berkowitz(&g.adjacency_matrix())
}

fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            for &v in g.neighbors(u) {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                }
            }
            i += 1;
        }
        out.push(members);
    }
    out
}

/// Product of the component polynomials of an acyclic graph.
fn forest_poly(g: &Graph) -> IntPoly {
    let mut acc = IntPoly::one();
    for members in components(g) {
        let keep: std::collections::HashSet<usize> = members.iter().copied().collect();
        let removed: Vec<usize> = (0..g.n()).filter(|v| !keep.contains(v)).collect();
        let sub = g.remove_vertices(&removed);
        acc = &acc * &tree_poly(&sub);
    }
    acc
}

/// Rooted recurrence on a tree: with `F(v)` the polynomial of the subtree at
/// `v` and `H(v) = Π F(c)` that of the subtree minus `v`,
/// `F(v) = λ·H(v) − Σ_c H(c) Π_{c'≠c} F(c')`. Subtrees that are bare paths
/// hanging from their root are read from the path cache.
fn tree_poly(g: &Graph) -> IntPoly {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    order.push(0);
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &v in g.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                order.push(v);
            }
        }
        i += 1;
    }
    let mut f: Vec<Option<IntPoly>> = vec![None; n];
    let mut h: Vec<Option<IntPoly>> = vec![None; n];
    let mut chain: Vec<Option<usize>> = vec![None; n];
    for &v in order.iter().rev() {
        let children: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&c| parent[c] == v)
            .collect();
        match children.as_slice() {
            [] => {
                chain[v] = Some(1);
                f[v] = Some(path_poly(1));
                h[v] = Some(IntPoly::one());
            }
            [c] if chain[*c].is_some() => {
                let len = chain[*c].unwrap() + 1;
                chain[v] = Some(len);
                f[v] = Some(path_poly(len));
                h[v] = Some(path_poly(len - 1));
                f[*c] = None;
                h[*c] = None;
            }
            _ => {
                let fs: Vec<IntPoly> = children
                    .iter()
                    .map(|&c| f[c].take().expect("child done"))
                    .collect();
                let hs: Vec<IntPoly> = children
                    .iter()
                    .map(|&c| h[c].take().expect("child done"))
                    .collect();
                let k = fs.len();
                // prefix[i] = F(c_0)…F(c_{i−1}), suffix[i] = F(c_i)…F(c_{k−1})
                let mut prefix = vec![IntPoly::one()];
                for p in &fs {
                    let next = prefix.last().unwrap() * p;
                    prefix.push(next);
                }
                let mut suffix = vec![IntPoly::one(); k + 1];
                for j in (0..k).rev() {
                    suffix[j] = &fs[j] * &suffix[j + 1];
                }
                let hv = prefix[k].clone();
                let mut fv = hv.shift(1);
                for j in 0..k {
                    let others = &prefix[j] * &suffix[j + 1];
                    fv = fv - &hs[j] * &others;
                }
                f[v] = Some(fv);
                h[v] = Some(hv);
            }
        }
    }
    f[0].take().expect("root polynomial")
}

/// One cycle edge `uv`: `φ(G) = φ(G−uv) − φ(G−u−v) − 2φ(G−C)`.
fn unicyclic_poly(g: &Graph) -> IntPoly {
    let n = g.n();
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
    let cycle: Vec<usize> = (0..n).filter(|&v| on_cycle[v]).collect();
    let u = cycle[0];
    let v = *g
        .neighbors(u)
        .iter()
        .find(|&&w| on_cycle[w])
        .expect("cycle neighbour");
    let without_edge = tree_poly(&g.remove_edge(u, v));
    let without_ends = char_poly(&g.remove_vertices(&[u, v]));
    let without_cycle = char_poly(&g.remove_vertices(&cycle));
    without_edge - without_ends - without_cycle.scale(&BigInt::from(2))
}

/// Berkowitz's algorithm; returns `det(λI − A)` with integer arithmetic only.
pub fn berkowitz(a: &[Vec<i64>]) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::one();
    }
    let m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    // coefficient vector of det(λI − A_r), highest degree first
    let mut c: Vec<BigInt> = vec![BigInt::one(), -m[0][0].clone()];
    for r in 1..n {
        // R = A[r][0..r], S = A[0..r][r], M = A[0..r][0..r], a = A[r][r]
        let rows = |i: usize, j: usize| m[i][j].clone();
        // Toeplitz column: t = [1, −a, −R S, −R M S, …, −R M^{r−1} S]
        let mut t = vec![BigInt::one(), -rows(r, r)];
        let mut vec_s: Vec<BigInt> = (0..r).map(|i| rows(i, r)).collect();
        for _ in 0..r {
            let rs: BigInt = (0..r).map(|j| &m[r][j] * &vec_s[j]).sum();
            t.push(-rs);
            let next: Vec<BigInt> = (0..r)
                .map(|i| (0..r).map(|j| &m[i][j] * &vec_s[j]).sum())
                .collect();
            vec_s = next;
        }
        // c_new = T · c, with T lower-triangular Toeplitz of size (r+2)×(r+1)
        let mut nc = vec![BigInt::zero(); r + 2];
        for (i, slot) in nc.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    *slot += &t[i - j] * cj;
                }
            }
        }
        c = nc;
    }
    c.reverse();
    IntPoly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_closed_quipu, build_open_quipu, ClosedQuipuSpec, OpenQuipuSpec};

    #[test]
    fn small_polys() {
        assert_eq!(char_poly(&Graph::path(2)), IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(
            char_poly(&Graph::cycle(6).unwrap()),
            IntPoly::from_i64(&[-4, 0, 9, 0, -6, 0, 1])
        );
        assert_eq!(
            char_poly(&Graph::star(4)),
            IntPoly::from_i64(&[0, 0, 0, -4, 0, 1])
        );
        assert_eq!(
            char_poly(&Graph::complete(4)),
            IntPoly::from_roots(&[3, -1, -1, -1])
        );
    }

    #[test]
    fn recurrences_agree_with_berkowitz() {
        let graphs = [
            build_open_quipu(&OpenQuipuSpec::new(vec![2, 1, 0, 3], vec![1, 2, 2]).unwrap()),
            build_closed_quipu(&ClosedQuipuSpec::new(vec![1, 3, 0], vec![2, 0, 1]).unwrap()),
            Graph::cycle(7).unwrap(),
            Graph::from_edges(6, &[(0, 1), (2, 3), (3, 4)]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(
                char_poly(g),
                berkowitz(&g.adjacency_matrix()),
                "graph {g:?}"
            );
        }
    }

    #[test]
    fn path_cache_matches_recurrence() {
        assert_eq!(path_poly(3), IntPoly::from_i64(&[0, -2, 0, 1]));
        assert_eq!(
            path_poly(12),
            berkowitz(&Graph::path(12).adjacency_matrix())
        );
    }
}
