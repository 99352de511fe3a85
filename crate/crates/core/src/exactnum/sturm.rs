use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use super::qsqrt2::{int_sign, QSqrt2};
use crate::error::{Error, Result};

/// Signed remainder sequence of a squarefree polynomial, kept primitive at
/// every step. Only signs are consumed, so positive rescaling is harmless.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain of the squarefree part of `p`.
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::from_squarefree(p.squarefree_part()))
    }

    /// Builds the chain assuming `sqf` is already squarefree.
    pub fn from_squarefree(sqf: IntPoly) -> Self {
        let mut polys = vec![sqf.clone()];
        let d = sqf.derivative();
        if d.is_zero() {
            return SturmChain { polys };
        }
        polys.push(d.primitive_part());
        loop {
            let n = polys.len();
            let r = polys[n - 2].positive_prem(&polys[n - 1]);
            if r.is_zero() {
                break;
            }
            polys.push(-r.primitive_part());
        }
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    /// The squarefree polynomial the chain was built from.
    pub fn base(&self) -> &IntPoly {
        &self.polys[0]
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &QSqrt2) -> usize {
        let (a, b, d) = x.integer_form();
        Self::variations(
            self.polys
                .iter()
                .map(|p| p.sign_at_integer_form(&a, &b, &d)),
        )
    }

    pub fn variations_at_rational(&self, x: &BigRational) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at_rational(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.polys.iter().map(|p| int_sign(p.leading().unwrap())))
    }

    /// Number of distinct real roots strictly greater than `x`.
    pub fn count_above(&self, x: &QSqrt2) -> usize {
        self.variations_at(x) - self.variations_at_pos_inf()
    }

    pub fn count_above_rational(&self, x: &BigRational) -> usize {
        self.variations_at_rational(x) - self.variations_at_pos_inf()
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_between_rational(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at_rational(lo) - self.variations_at_rational(hi)
    }
}

/// Number of distinct real roots of `p` strictly greater than `x`.
pub fn sturm_count_above(p: &IntPoly, x: &QSqrt2) -> Result<usize> {
    Ok(SturmChain::new(p)?.count_above(x))
}

/// Exact bound `B` (a power of two) with every real root of `p` in `(−B, B)`.
pub fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // 1 + max|c_i|/|lc| rounded up to a power of two
    let ratio = BigRational::new(max, lc) + BigRational::one();
    let mut b = BigRational::one();
    while b <= ratio {
        b *= BigRational::from_integer(2.into());
    }
    b
}

/// Dyadic interval `(lo, hi]` that contains the largest real root of `p` and
/// no other root, refined until `hi − lo ≤ width`. `None` when `p` has no
/// real roots.
pub fn isolate_largest_root(
    chain: &SturmChain,
    width: &BigRational,
) -> Option<(BigRational, BigRational)> {
    let bound = cauchy_bound(chain.base());
    isolate_largest_in(chain, -bound.clone(), bound, width)
}

/// Like [`isolate_largest_root`] but starting from a caller-supplied
/// `(lo, hi]`. `None` unless no root exceeds `hi` and at least one exceeds `lo`.
pub fn isolate_largest_in(
    chain: &SturmChain,
    mut lo: BigRational,
    mut hi: BigRational,
    width: &BigRational,
) -> Option<(BigRational, BigRational)> {
    if chain.count_above_rational(&hi) != 0 || chain.count_above_rational(&lo) == 0 {
        return None;
    }
    let two = BigRational::from_integer(2.into());
    while chain.count_above_rational(&lo) > 1 {
        let mid = (&lo + &hi) / &two;
        if chain.count_above_rational(&mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(refine_isolated(chain.base(), lo, hi, width))
}

/// Refines an interval `(lo, hi]` known to isolate a simple root of the
/// squarefree `p` by bisection on exact signs.
pub fn refine_isolated(
    p: &IntPoly,
    mut lo: BigRational,
    mut hi: BigRational,
    width: &BigRational,
) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(2.into());
    let s_hi = p.sign_at_rational(&hi);
    if s_hi == 0 {
        return (hi.clone(), hi);
    }
    while (&hi - &lo) > *width {
        let mid = (&lo + &hi) / &two;
        let s = p.sign_at_rational(&mid);
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}
