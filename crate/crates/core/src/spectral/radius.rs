use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::char_poly;
use crate::error::{Error, Result};
use crate::exactnum::{
    dyadic_ceil, dyadic_floor, isolate_largest_in, isolate_largest_root, refine_isolated,
    width_for_tolerance, IntPoly, SturmChain,
};
use crate::graph::Graph;

/// Default bracket width for radius computations.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Evidence {
    /// Opposite floating signs of a root function at the two ends.
    SignChange,
    /// Collatz–Wielandt bounds from power iteration.
    PowerIterBound,
    /// Exact Sturm isolation of the largest root of `φ_G`.
    ExactSturm,
}

/// Exact rational isolating interval: the largest root lies in `(lo, hi]`
/// and is the only root of the squarefree polynomial there, or `lo == hi`
/// is the root itself.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactBracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl ExactBracket {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Interval `[lo, hi]` containing a spectral radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusBracket {
    pub lo: f64,
    pub hi: f64,
    pub evidence: Evidence,
    #[serde(skip)]
    pub exact: Option<ExactBracket>,
}

impl RadiusBracket {
    pub fn new(lo: f64, hi: f64, evidence: Evidence) -> Self {
        RadiusBracket {
            lo,
            hi,
            evidence,
            exact: None,
        }
    }

    fn from_exact(exact: ExactBracket) -> Self {
        RadiusBracket {
            lo: f64_below(&exact.lo),
            hi: f64_above(&exact.hi),
            evidence: Evidence::ExactSturm,
            exact: Some(exact),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &RadiusBracket) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// Largest `f64` not above `x`.
pub(crate) fn f64_below(x: &BigRational) -> f64 {
    let f = x.to_f64().expect("finite rational");
    match BigRational::from_float(f) {
        Some(back) if back > *x => f.next_down(),
        _ => f,
    }
}

/// Smallest `f64` not below `x`.
pub(crate) fn f64_above(x: &BigRational) -> f64 {
    let f = x.to_f64().expect("finite rational");
    match BigRational::from_float(f) {
        Some(back) if back < *x => f.next_up(),
        _ => f,
    }
}

/// Collatz–Wielandt bounds on `ρ(A)` from power iteration on `A + I`.
///
/// For a connected graph and a positive vector `x`,
/// `min_i (Ax)_i/x_i ≤ ρ ≤ max_i (Ax)_i/x_i`. Stops once the relative gap
/// falls below `rel_tol` or after `max_iter` steps.
pub fn power_iteration_bounds(g: &Graph, rel_tol: f64, max_iter: usize) -> Result<RadiusBracket> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut x = vec![1.0f64; n];
    let mut best = (0.0f64, g.max_degree() as f64);
    for _ in 0..max_iter {
        let ax: Vec<f64> = (0..n)
            .map(|v| g.neighbors(v).iter().map(|&w| x[w]).sum())
            .collect();
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for v in 0..n {
            let ratio = ax[v] / x[v];
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        best = (best.0.max(lo), best.1.min(hi));
        if best.1 - best.0 <= rel_tol * best.1.max(1.0) {
            break;
        }
        let scale = ax.iter().zip(&x).map(|(a, b)| a + b).fold(0.0f64, f64::max);
        for v in 0..n {
            x[v] = (ax[v] + x[v]) / scale;
        }
    }
    // guard the float rounding in the ratios
    let slack = 8.0 * f64::EPSILON * best.1.max(1.0);
    Ok(RadiusBracket::new(
        (best.0 - slack).max(0.0),
        best.1 + slack,
        Evidence::PowerIterBound,
    ))
}

/// Cycles and the trees `P_{(1,L,1)}^{(1,1)}` (the `D̃` Smith graphs) have
/// spectral radius exactly 2.
pub fn has_radius_two(g: &Graph) -> bool {
    let n = g.n();
    if !g.is_connected() || n < 3 {
        return false;
    }
    if g.edge_count() == n {
        return (0..n).all(|v| g.degree(v) == 2);
    }
    if !g.is_tree() {
        return false;
    }
    let hubs: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    let leaf_nbrs = |v: usize| g.neighbors(v).iter().filter(|&&w| g.degree(w) == 1).count();
    match hubs.as_slice() {
        [a, b] => {
            g.degree(*a) == 3 && g.degree(*b) == 3 && leaf_nbrs(*a) == 2 && leaf_nbrs(*b) == 2
        }
        // the two hubs merge: K_{1,4}
        [a] => g.degree(*a) == 4 && n == 5,
        _ => false,
    }
}

/// Exact isolating interval for the largest root of `chain.base()`, seeded
/// by a float bracket and widened until the Sturm counts confirm it.
pub(crate) fn isolate_with_seed(
    chain: &SturmChain,
    seed: (f64, f64),
    width: &BigRational,
) -> Option<ExactBracket> {
    const BITS: u32 = 52;
    let mut pad = ((seed.1 - seed.0) * 0.5).max(1e-9);
    for _ in 0..6 {
        let lo = dyadic_floor(seed.0 - pad, BITS);
        let hi = dyadic_ceil(seed.1 + pad, BITS);
        if let Some((lo, hi)) = isolate_largest_in(chain, lo, hi, width) {
            return Some(ExactBracket { lo, hi });
        }
        pad *= 64.0;
    }
    isolate_largest_root(chain, width).map(|(lo, hi)| ExactBracket { lo, hi })
}

/// Exact bracket of the largest real root of `p` with width at most `tol`.
pub fn largest_root_bracket(
    p: &IntPoly,
    seed: Option<(f64, f64)>,
    tol: f64,
) -> Result<RadiusBracket> {
    check_tol(tol)?;
    let chain = SturmChain::new(p)?;
    let mut width = width_for_tolerance(tol * 0.5);
    let exact = match seed {
        Some(s) => isolate_with_seed(&chain, s, &width),
        None => isolate_largest_root(&chain, &width).map(|(lo, hi)| ExactBracket { lo, hi }),
    }
    .ok_or_else(|| Error::RootNotLocated("polynomial has no real root".into()))?;
    let mut bracket = RadiusBracket::from_exact(exact);
    // outward rounding can cost a few ulps; tighten the exact side if needed
    while bracket.width() > tol {
        width /= BigRational::from_integer(1024.into());
        let e = bracket.exact.take().expect("exact bracket");
        let (lo, hi) = refine_isolated(chain.base(), e.lo, e.hi, &width);
        bracket = RadiusBracket::from_exact(ExactBracket { lo, hi });
        if width < BigRational::new(1.into(), num_bigint::BigInt::from(1u8) << 200u32) {
            return Err(Error::Config(format!(
                "tolerance {tol:e} is below f64 resolution"
            )));
        }
    }
    Ok(bracket)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Config(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Certified bracket of width at most `tol` around `ρ(G)`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<RadiusBracket> {
    check_tol(tol)?;
    if g.n() == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() == 1 {
        return Ok(point(BigRational::zero()));
    }
    if has_radius_two(g) {
        return Ok(point(BigRational::from_integer(2.into())));
    }
    let seed = power_iteration_bounds(g, 1e-10, 200 + 20 * g.n())?;
    largest_root_bracket(&char_poly(g), Some((seed.lo, seed.hi)), tol)
}

fn point(x: BigRational) -> RadiusBracket {
    RadiusBracket::from_exact(ExactBracket {
        lo: x.clone(),
        hi: x,
    })
}

/// Ordering of two radii decided from brackets alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RadiusOrdering {
    Less,
    Greater,
    /// Brackets overlap; use [`same_spectral_radius`] to decide a tie.
    Indistinguishable,
}

/// Compares `ρ(G1)` with `ρ(G2)` at bracket width `tol` each.
pub fn compare_radii(g1: &Graph, g2: &Graph, tol: f64) -> Result<RadiusOrdering> {
    let a = spectral_radius(g1, tol)?;
    let b = spectral_radius(g2, tol)?;
    Ok(order_brackets(&a, &b))
}

pub fn order_brackets(a: &RadiusBracket, b: &RadiusBracket) -> RadiusOrdering {
    if a.hi < b.lo {
        RadiusOrdering::Less
    } else if b.hi < a.lo {
        RadiusOrdering::Greater
    } else {
        RadiusOrdering::Indistinguishable
    }
}

/// Exact test that two polynomials share their largest real root.
///
/// With `g = gcd(p, q)`, the largest root of `p` is a root of `q` iff it is
/// a root of `g`, and then it is at most the largest root of `q`; equality
/// holds iff both largest roots are roots of `g`.
pub fn same_largest_root(p: &IntPoly, q: &IntPoly) -> Result<bool> {
    let sp = p.squarefree_part();
    let sq = q.squarefree_part();
    let g = sp.gcd(&sq);
    if g.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let gchain = SturmChain::from_squarefree(g.squarefree_part());
    let coarse = width_for_tolerance(1e-3);
    for s in [&sp, &sq] {
        let chain = SturmChain::from_squarefree(s.clone());
        let (lo, hi) = isolate_largest_root(&chain, &coarse)
            .ok_or_else(|| Error::RootNotLocated("no real root".into()))?;
        let hit = if lo == hi {
            g.sign_at_rational(&lo) == 0
        } else {
            gchain.count_between_rational(&lo, &hi) >= 1
        };
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact ordering of the largest real roots of `p` and `q`: shared-factor
/// test for equality, otherwise refinement until the isolating intervals
/// separate.
pub fn compare_largest_roots(p: &IntPoly, q: &IntPoly) -> Result<std::cmp::Ordering> {
    use std::cmp::Ordering;
    if same_largest_root(p, q)? {
        return Ok(Ordering::Equal);
    }
    let cp = SturmChain::new(p)?;
    let cq = SturmChain::new(q)?;
    let mut width = width_for_tolerance(1e-6);
    let none = || Error::RootNotLocated("no real root".into());
    let (mut a, mut b) = (
        isolate_largest_root(&cp, &width).ok_or_else(none)?,
        isolate_largest_root(&cq, &width).ok_or_else(none)?,
    );
    loop {
        if a.1 < b.0 {
            return Ok(Ordering::Less);
        }
        if b.1 < a.0 {
            return Ok(Ordering::Greater);
        }
        width /= BigRational::from_integer(65536.into());
        a = refine_isolated(cp.base(), a.0, a.1, &width);
        b = refine_isolated(cq.base(), b.0, b.1, &width);
    }
}

/// Exact `ρ(G1) = ρ(G2)` via the shared-factor test on characteristic polynomials.
pub fn same_spectral_radius(g1: &Graph, g2: &Graph) -> Result<bool> {
    for g in [g1, g2] {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
    }
    same_largest_root(&char_poly(g1), &char_poly(g2))
}
