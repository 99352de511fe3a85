//! Strategies, independent oracles and check suites shared by the integration tests.
#![allow(dead_code)]

pub mod identities;
pub mod monotone;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use quipu_core::exactnum::IntPoly;
use quipu_core::graph::{ClosedQuipuSpec, Graph, OpenQuipuSpec};
use rand::Rng;

/// Open quipus with `1..=junctions` junctions and parameters up to `max`.
pub fn open_spec(junctions: usize, max: usize) -> impl Strategy<Value = OpenQuipuSpec> {
    (1..=junctions).prop_flat_map(move |j| {
        (
            1..=max,
            prop::collection::vec(0..=max, j - 1),
            1..=max,
            prop::collection::vec(1..=max, j),
        )
            .prop_map(|(first, mid, last, m)| {
                let mut k = vec![first];
                k.extend(mid);
                k.push(last);
                OpenQuipuSpec::new(k, m).expect("strategy builds valid specs")
            })
    })
}

/// Closed quipus with `1..=junctions` junctions; pendent lengths start at `min_m`.
pub fn closed_spec(
    junctions: usize,
    max: usize,
    min_m: usize,
) -> impl Strategy<Value = ClosedQuipuSpec> {
    (1..=junctions)
        .prop_flat_map(move |r| {
            (
                prop::collection::vec(0..=max, r),
                prop::collection::vec(min_m..=max, r),
            )
        })
        .prop_filter_map("cycle too short", |(k, m)| ClosedQuipuSpec::new(k, m).ok())
}

/// Random connected graph: a random recursive tree plus `extra` random chords.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let mut g = Graph::from_edges(n, &edges).expect("tree edges are valid");
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && !g.has_edge(u, v) {
                g = g.with_edge(u, v).expect("fresh edge");
            }
        }
    }
    g
}

/// Random tree with maximum degree at most `max_deg`.
pub fn random_bounded_tree<R: Rng>(rng: &mut R, n: usize, max_deg: usize) -> Graph {
    let mut deg = vec![0usize; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| deg[u] < max_deg).collect();
        let u = open[rng.gen_range(0..open.len())];
        deg[u] += 1;
        deg[v] += 1;
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges).expect("tree edges are valid")
}

/// All-pairs shortest paths by Floyd–Warshall; `None` when disconnected.
pub fn floyd_warshall_diameter(g: &Graph) -> Option<usize> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let best = d.iter().flatten().copied().max().unwrap_or(0);
    (best < inf).then_some(best)
}

/// Fraction-free Gaussian elimination (Bareiss) determinant.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(xI − A)` sampled at `x = 0..=n` and recovered by Lagrange interpolation.
pub fn charpoly_by_interpolation(g: &Graph) -> IntPoly {
    let n = g.n();
    let adj = g.adjacency_matrix();
    let xs: Vec<i64> = (0..=n as i64).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|&x| {
            let m = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| BigInt::from(if i == j { x } else { 0 } - adj[i][j]))
                        .collect()
                })
                .collect();
            bareiss_det(m)
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (&xi, yi) in xs.iter().zip(&ys) {
        // basis polynomial ∏_{j≠i} (x − x_j)/(x_i − x_j), built coefficientwise
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for &xj in xs.iter().filter(|&&xj| xj != xi) {
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from_integer(xj.into());
            }
            basis = next;
            denom *= BigRational::from_integer((xi - xj).into());
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    IntPoly::new(
        coeffs
            .into_iter()
            .map(|c| {
                assert!(
                    c.is_integer(),
                    "interpolated coefficient {c} is not an integer"
                );
                c.to_integer()
            })
            .collect(),
    )
}

/// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_largest_eigenvalue(g: &Graph) -> f64 {
    let n = g.n();
    let mut a: Vec<Vec<f64>> = g
        .adjacency_matrix()
        .iter()
        .map(|r| r.iter().map(|&x| x as f64).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (rp, rq) = a[p]
                    .iter()
                    .zip(&a[q])
                    .map(|(&x, &y)| (c * x - s * y, s * x + c * y))
                    .unzip();
                a[p] = rp;
                a[q] = rq;
            }
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::NEG_INFINITY, f64::max)
}

/// Relative difference `|a − b| / max(|a|, |b|, tiny)`.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// `p(x)` for a rational `x`, as `f64`.
pub fn eval_exact(p: &IntPoly, x: &BigRational) -> f64 {
    let v = p.eval_rational(x);
    if v.is_zero() {
        return 0.0;
    }
    let sign = if v.is_negative() { -1.0 } else { 1.0 };
    let abs = v.abs();
    // the numerator and denominator can exceed f64 range separately
    let bits = abs.numer().bits() as i64 - abs.denom().bits() as i64;
    let shift = bits - 60;
    let scaled = if shift > 0 {
        BigRational::new(abs.numer().clone(), abs.denom() << shift as usize)
    } else {
        BigRational::new(abs.numer() << (-shift) as usize, abs.denom().clone())
    };
    sign * scaled.to_f64().expect("finite") * 2f64.powi(shift as i32)
}
