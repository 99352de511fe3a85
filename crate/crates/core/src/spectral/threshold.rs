use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::char_poly;
use super::radius::power_iteration_bounds;
use crate::exactnum::{IntPoly, QSqrt2, SturmChain};
use crate::graph::Graph;

/// Float value of `λ* = (3/2)√2`.
pub const THRESHOLD_F64: f64 = 2.121_320_343_559_642_6;

/// Float value of `√(2+√5)`, the lower end of the dagger/quipu window.
pub const HOFFMAN_F64: f64 = 2.058_171_027_271_492_3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Certificate {
    SturmExact,
    /// `λ* − ρ̃` for a float estimate `ρ̃`; not a proof.
    NumericMargin(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdVerdict {
    pub below: bool,
    pub certificate: Certificate,
}

/// Exact `largest real root of p < λ*`, for `p` with positive leading
/// coefficient (every characteristic polynomial qualifies).
pub fn poly_below_threshold(p: &IntPoly) -> bool {
    let t = QSqrt2::threshold();
    let lead_pos = p
        .leading()
        .map(|c| c > &num_bigint::BigInt::zero())
        .unwrap_or(false);
    match p.sign_at(&t) {
        0 => return false,
        // opposite sign to the leading term: an odd number of roots above
        s if (s > 0) != lead_pos => return false,
        _ => {}
    }
    SturmChain::from_squarefree(p.squarefree_part()).count_above(&t) == 0
}

/// Exact verdict on `ρ(G) < λ*`.
pub fn is_below_threshold(g: &Graph) -> ThresholdVerdict {
    ThresholdVerdict {
        below: poly_below_threshold(&char_poly(g)),
        certificate: Certificate::SturmExact,
    }
}

/// As [`is_below_threshold`]; with `exact == false` the verdict comes from
/// power-iteration bounds and carries the numeric margin.
pub fn is_below_threshold_with(g: &Graph, exact: bool) -> ThresholdVerdict {
    if exact {
        return is_below_threshold(g);
    }
    match power_iteration_bounds(g, 1e-12, 200 + 20 * g.n()) {
        Ok(b) => {
            let rho = b.mid();
            ThresholdVerdict {
                below: rho < THRESHOLD_F64,
                certificate: Certificate::NumericMargin(THRESHOLD_F64 - rho),
            }
        }
        Err(_) => is_below_threshold(g),
    }
}

/// `λ⁴ − 4λ² − 1 = (λ² − 2)² − 5`, whose largest root is `√(2+√5)`.
pub fn hoffman_poly() -> IntPoly {
    IntPoly::from_i64(&[-1, 0, -4, 0, 1])
}

/// Exact test that `p` has a real root strictly above `√(2+√5)`.
pub fn exceeds_hoffman_limit(p: &IntPoly) -> bool {
    let w = hoffman_poly();
    let sqf = p.squarefree_part();
    // the real roots of w are ±√(2+√5); dropping them from p cannot remove a
    // root strictly above √(2+√5)
    let g = sqf.gcd(&w);
    let q = if g.degree().unwrap_or(0) > 0 {
        sqf.div_exact(&g).expect("gcd divides")
    } else {
        sqf
    };
    if q.degree().unwrap_or(0) == 0 {
        return false;
    }
    let qchain = SturmChain::from_squarefree(q);
    let wchain = SturmChain::from_squarefree(w.clone());
    let two = BigRational::from_integer(2.into());
    // (lo, hi] isolates √(2+√5) as a root of w
    let mut lo = BigRational::from_integer(2.into());
    let mut hi = BigRational::new(21.into(), 10.into());
    debug_assert_eq!(wchain.count_between_rational(&lo, &hi), 1);
    // q(√(2+√5)) ≠ 0, so shrinking eventually leaves no root of q inside
    for _ in 0..4096 {
        if qchain.count_between_rational(&lo, &hi) == 0 {
            return qchain.count_above_rational(&hi) > 0;
        }
        let mid = (&lo + &hi) / &two;
        if wchain.count_between_rational(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    unreachable!("root separation bound exceeded")
}

/// Exact test `√(2+√5) < ρ(G) < λ*`.
pub fn in_hoffman_window(g: &Graph) -> bool {
    let p = char_poly(g);
    poly_below_threshold(&p) && exceeds_hoffman_limit(&p)
}

/// `true` when the prefilter `ρ ≥ 2|E|/n > λ*` already settles the verdict.
pub fn edge_density_exceeds_threshold(g: &Graph) -> bool {
    let (n, e) = (g.n() as u128, g.edge_count() as u128);
    // 2e/n > 3/√2  ⟺  8e² > 9n²
    8 * e * e > 9 * n * n
}
