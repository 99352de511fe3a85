//! Exact arithmetic: ℚ(√2), integer polynomials and Sturm root counting.

mod poly;
mod qsqrt2;
mod sturm;

pub use poly::IntPoly;
pub use qsqrt2::QSqrt2;
pub use sturm::{
    cauchy_bound, isolate_largest_in, isolate_largest_root, refine_isolated, sturm_count_above,
    SturmChain,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One};

/// Exact sign of `a + b√2`.
pub fn qsqrt2_sign(x: &QSqrt2) -> i32 {
    x.sign()
}

/// Exact value `p(x)` in ℚ(√2).
pub fn poly_eval_qsqrt2(p: &IntPoly, x: &QSqrt2) -> QSqrt2 {
    p.eval_qsqrt2(x)
}

/// `1 / 2^bits` as an exact rational.
pub fn dyadic_width(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// Smallest dyadic width `2^-k` not exceeding `tol`.
pub fn width_for_tolerance(tol: f64) -> BigRational {
    let mut bits = 0u32;
    while 2f64.powi(-(bits as i32)) > tol && bits < 1000 {
        bits += 1;
    }
    dyadic_width(bits)
}

/// Exact dyadic rational nearest below `x` with `bits` fractional bits.
pub fn dyadic_floor(x: f64, bits: u32) -> BigRational {
    let scaled = (x * 2f64.powi(bits as i32)).floor();
    BigRational::new(
        BigInt::from_f64(scaled).expect("finite"),
        BigInt::one() << bits,
    )
}

/// Exact dyadic rational nearest above `x` with `bits` fractional bits.
pub fn dyadic_ceil(x: f64, bits: u32) -> BigRational {
    let scaled = (x * 2f64.powi(bits as i32)).ceil();
    BigRational::new(
        BigInt::from_f64(scaled).expect("finite"),
        BigInt::one() << bits,
    )
}
