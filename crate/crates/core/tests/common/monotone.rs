//! Monotonicity suites for spectral radii under graph operations. Every
//! comparison records its numeric margin; strictness failures panic.

use std::cmp::Ordering;

use num_rational::BigRational;
use quipu_core::exactnum::{IntPoly, SturmChain};
use quipu_core::graph::{classify_shape, ClosedQuipuSpec, Graph, OpenQuipuSpec, ShapeClass};
use quipu_core::spectral::{
    char_poly, compare_largest_roots, rho_limit, rho_mk, spectral_radius, RadiusBracket,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{random_bounded_tree, random_connected};

pub const TOL: f64 = 1e-12;

fn rho(g: &Graph) -> RadiusBracket {
    spectral_radius(g, TOL).expect("radius of a small graph")
}

/// Outcome of one suite: how many strict comparisons were made and the
/// smallest certified gap among them.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub comparisons: usize,
    pub min_margin: f64,
    pub worst_case: String,
}

impl SuiteOutcome {
    fn new() -> Self {
        SuiteOutcome {
            comparisons: 0,
            min_margin: f64::INFINITY,
            worst_case: String::new(),
        }
    }

    /// Records `small < big`; panics unless the brackets are disjoint.
    fn strictly_less(
        &mut self,
        small: &RadiusBracket,
        big: &RadiusBracket,
        what: impl Fn() -> String,
    ) {
        let margin = big.lo - small.hi;
        assert!(
            margin > 0.0,
            "not strictly increasing: {} ({small:?} vs {big:?})",
            what()
        );
        self.comparisons += 1;
        if margin < self.min_margin {
            self.min_margin = margin;
            self.worst_case = what();
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{} comparisons, min margin {:.3e} at {}",
            self.comparisons, self.min_margin, self.worst_case
        )
    }
}

/// Removing any leaf of a random tree strictly lowers the spectral radius.
pub fn leaf_removal(trees: usize, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new();
    for t in 0..trees {
        let n = rng.gen_range(3..=30);
        let g = if t % 2 == 0 {
            random_bounded_tree(&mut rng, n, 3)
        } else {
            random_connected(&mut rng, n, 0)
        };
        let full = rho(&g);
        for leaf in (0..n).filter(|&v| g.degree(v) == 1) {
            let h = g.remove_vertices(&[leaf]);
            out.strictly_less(&rho(&h), &full, || {
                format!("tree #{t} (n={n}) minus leaf {leaf}")
            });
        }
    }
    out
}

/// Joins `(g, root)` to vertex `at` of `host`, returning the new graph.
fn attach(host: &Graph, at: usize, g: Option<&(Graph, usize)>) -> Graph {
    let Some((g, root)) = g else {
        return host.clone();
    };
    let offset = host.n();
    host.disjoint_union(g)
        .with_edge(at, offset + root)
        .expect("fresh edge")
}

/// `H(X, Y)`: path `v1 v2 v3`, a copy of `X` joined at `v1` and at `v3`,
/// and `Y` joined at `v2`. Rewiring swaps the roles of `X` and `Y`.
fn rewiring_graph(x: Option<&(Graph, usize)>, y: Option<&(Graph, usize)>) -> Graph {
    let mut h = Graph::path(3);
    h = attach(&h, 0, x);
    h = attach(&h, 2, x);
    attach(&h, 1, y)
}

/// `ρ(H1) = ρ(H2)` for random rooted `G1`, `G2`, possibly empty. Returns the
/// largest observed bracket distance.
pub fn rewiring_invariance(instances: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    for i in 0..instances {
        let mut rooted = || -> Option<(Graph, usize)> {
            if rng.gen_bool(0.15) {
                return None;
            }
            let n = rng.gen_range(1..=6);
            let extra = rng.gen_range(0..3);
            let g = random_connected(&mut rng, n, extra);
            let root = rng.gen_range(0..n);
            Some((g, root))
        };
        let g1 = rooted();
        let g2 = rooted();
        let h1 = rewiring_graph(g1.as_ref(), g2.as_ref());
        let h2 = rewiring_graph(g2.as_ref(), g1.as_ref());
        let (a, b) = (rho(&h1), rho(&h2));
        let gap = (a.mid() - b.mid()).abs();
        assert!(gap <= 1e-10, "instance {i}: ρ(H1) = {a:?}, ρ(H2) = {b:?}");
        worst = worst.max(gap);
    }
    worst
}

/// Whether edge `uv` lies on an internal path: walking away from it through
/// degree-2 vertices ends at vertices of degree at least 3 on both sides.
pub fn on_internal_path(g: &Graph, u: usize, v: usize) -> bool {
    let end = |from: usize, first: usize| {
        let (mut prev, mut cur) = (from, first);
        let mut steps = 0;
        while g.degree(cur) == 2 && steps <= g.n() {
            let nb = g.neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
            steps += 1;
        }
        g.degree(cur)
    };
    end(v, u) >= 3 && end(u, v) >= 3
}

fn is_smith_tree(g: &Graph) -> bool {
    let n = g.n();
    n >= 6
        && matches!(classify_shape(g), ShapeClass::OpenQuipu(s)
            if s == OpenQuipuSpec::new(vec![1, n - 6, 1], vec![1, 1]).expect("valid"))
}

/// Both subdivision directions on random connected graphs, every edge tested.
/// Returns `(outside, inside)` outcomes for non-internal and internal edges.
pub fn subdivision(graphs: usize, seed: u64) -> (SuiteOutcome, SuiteOutcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outside = SuiteOutcome::new();
    let mut inside = SuiteOutcome::new();
    let mut made = 0;
    while made < graphs {
        let n = rng.gen_range(4..=14);
        let extra = rng.gen_range(0..=2);
        let g = if rng.gen_bool(0.5) {
            random_bounded_tree(&mut rng, n, 3)
        } else {
            random_connected(&mut rng, n, extra)
        };
        if g.max_degree() <= 2 && g.edge_count() == g.n() {
            continue; // the cycle is excluded
        }
        made += 1;
        let before = rho(&g);
        for (u, v) in g.edges() {
            let after = rho(&g.subdivide_edge(u, v).expect("edge exists"));
            let label = || format!("graph #{made} (n={n}, edges {:?}) edge {u}-{v}", g.edges());
            if on_internal_path(&g, u, v) {
                if !is_smith_tree(&g) {
                    inside.strictly_less(&after, &before, label);
                }
            } else {
                outside.strictly_less(&before, &after, label);
            }
        }
    }
    (outside, inside)
}

/// Exact `largest real root of p < √5`.
pub fn largest_root_below_sqrt5(p: &IntPoly) -> bool {
    let w = IntPoly::from_i64(&[-5, 0, 1]);
    let sqf = p.squarefree_part();
    // x² − 5 is irreducible, so a shared factor makes √5 itself a root
    if sqf.gcd(&w).degree().unwrap_or(0) > 0 {
        return false;
    }
    let chain = SturmChain::from_squarefree(sqf);
    let wchain = SturmChain::from_squarefree(w);
    let mut lo = BigRational::from_integer(2.into());
    let mut hi = BigRational::from_integer(3.into());
    let two = BigRational::from_integer(2.into());
    loop {
        if chain.count_between_rational(&lo, &hi) == 0 {
            return chain.count_above_rational(&lo) == 0;
        }
        let mid = (&lo + &hi) / &two;
        if wchain.count_between_rational(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// `P_(m,0,m)^(m,m)`.
pub fn double_broom(m: usize) -> Graph {
    OpenQuipuSpec::new(vec![m, 0, m], vec![m, m])
        .expect("valid")
        .build()
}

/// Double-broom data for `m ≤ m_max`: exact certificates plus numeric margins.
#[derive(Clone, Debug)]
pub struct BroomOutcome {
    pub exact_below_sqrt5: bool,
    pub exact_increasing: bool,
    /// Smallest of `√5 − ρ_m` and `ρ_{m+1} − ρ_m` over the range, as brackets allow.
    pub min_margin: f64,
    /// First `m` whose margin to `√5` or to the next term is at most `1e-9`.
    pub first_thin: Option<usize>,
}

pub fn sqrt5_bound(m_max: usize) -> BroomOutcome {
    let polys: Vec<IntPoly> = (1..=m_max + 1)
        .map(|m| char_poly(&double_broom(m)))
        .collect();
    let radii: Vec<RadiusBracket> = (1..=m_max + 1).map(|m| rho(&double_broom(m))).collect();
    let sqrt5 = 5f64.sqrt();
    let mut out = BroomOutcome {
        exact_below_sqrt5: true,
        exact_increasing: true,
        min_margin: f64::INFINITY,
        first_thin: None,
    };
    for m in 1..=m_max {
        let i = m - 1;
        out.exact_below_sqrt5 &= largest_root_below_sqrt5(&polys[i]);
        out.exact_increasing &=
            compare_largest_roots(&polys[i], &polys[i + 1]).expect("comparable") == Ordering::Less;
        let margin = (sqrt5 - radii[i].hi).min(radii[i + 1].lo - radii[i].hi);
        out.min_margin = out.min_margin.min(margin);
        if margin <= 1e-9 && out.first_thin.is_none() {
            out.first_thin = Some(m);
        }
    }
    out
}

/// `C^(m1,m2)_(k1,k2)` strictly above `C^(m1,m2)_(k1+1,k2−1)` for `0 ≤ k1 ≤ k2−2`.
pub fn cycle_balance(m_max: usize, k_sum_max: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new();
    for m1 in 1..=m_max {
        for m2 in 1..=m_max {
            for total in 2..=k_sum_max {
                for k1 in 0..=total / 2 {
                    let k2 = total - k1;
                    if k1 + 2 > k2 {
                        continue;
                    }
                    let a = rho(&ClosedQuipuSpec::new(vec![k1, k2], vec![m1, m2])
                        .expect("valid")
                        .build());
                    let b = rho(&ClosedQuipuSpec::new(vec![k1 + 1, k2 - 1], vec![m1, m2])
                        .expect("valid")
                        .build());
                    out.strictly_less(&b, &a, || format!("m=({m1},{m2}) k=({k1},{k2})"));
                }
            }
        }
    }
    out
}

/// `ρ_{m+1} > ρ_{m,k}` for `k` from `2m+5` to `k_max`.
pub fn limit_ordering(m_max: usize, k_max: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new();
    for m in 1..=m_max {
        let next = rho_limit(m + 1, TOL).expect("limit root");
        for k in 2 * m + 5..=k_max {
            let r = rho_mk(m, k, TOL).expect("rho_mk root");
            out.strictly_less(&r, &next, || format!("ρ_{} vs ρ_({m},{k})", m + 1));
        }
    }
    out
}
