//! The `x1`/`x2` calculus: with `x1`, `x2` the roots of `x² − λx + 1`, the
//! pair `(p, q)` at a vertex `v` of `G` is defined by
//! `φ_G = p + q` and `φ_{G−v} = x2·p + x1·q`, and attaching structure to a
//! vertex acts on `(p, q)` by 2×2 matrices.
//!
//! Everything here is floating point, generic over [`num_traits::Float`];
//! the default working type is the double-double [`TwoFloat`] (106-bit
//! significand). Exact certificates live in the `spectral` module.

use std::ops::Mul;

use num_traits::Float;
pub use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::graph::OpenQuipuSpec;

/// Default working precision.
pub type Real = TwoFloat;

fn lit<T: Float>(x: f64) -> T {
    T::from(x).expect("representable constant")
}

/// `1/b` with one Newton step on top of the type's own reciprocal.
/// `TwoFloat` division only delivers about 53 correct bits; the step
/// restores full double-double accuracy and is harmless for `f64`.
pub fn recip<T: Float>(b: T) -> T {
    let r = b.recip();
    r + r * (T::one() - b * r)
}

/// `a / b` at full working precision, see [`recip`].
pub fn div<T: Float>(a: T, b: T) -> T {
    a * recip(b)
}

/// A spectral parameter `λ > 2` with its cached `x1 < 1 < x2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaPoint<T = Real> {
    lambda: T,
    x1: T,
    x2: T,
}

impl<T: Float> LambdaPoint<T> {
    /// Rejects `λ ≤ 2`, where `x1 = x2` and the calculus degenerates.
    pub fn new(lambda: T) -> Result<Self> {
        let two = lit::<T>(2.0);
        if lambda.partial_cmp(&two) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::LambdaOutOfRange(lambda.to_f64().unwrap_or(f64::NAN)));
        }
        let x2 = (lambda + (lambda * lambda - two * two).sqrt()) * lit::<T>(0.5);
        // x1 from the product avoids the cancellation in λ − √(λ²−4)
        let x1 = recip(x2);
        Ok(LambdaPoint { lambda, x1, x2 })
    }

    pub fn from_f64(lambda: f64) -> Result<Self> {
        LambdaPoint::new(lit(lambda))
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn x1(&self) -> T {
        self.x1
    }

    pub fn x2(&self) -> T {
        self.x2
    }

    /// `x2 − x1 = √(λ² − 4)`.
    pub fn gap(&self) -> T {
        self.x2 - self.x1
    }
}

fn powu<T: Float>(x: T, e: usize) -> T {
    x.powi(i32::try_from(e).expect("exponent fits in i32"))
}

/// `φ_{P_m}(λ) = (x2^{m+1} − x1^{m+1}) / (x2 − x1)`, with `φ_{P_0} = 1`.
///
/// Evaluated by the three-term recurrence, which is stable for `λ > 2`
/// because the growing solution dominates.
pub fn phi_path<T: Float>(m: usize, pt: &LambdaPoint<T>) -> T {
    let (mut a, mut b) = (T::zero(), T::one());
    for _ in 0..m {
        let c = pt.lambda * b - a;
        a = b;
        b = c;
    }
    b
}

/// `(p, q)` at a rooted graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PQPair<T = Real> {
    pub p: T,
    pub q: T,
}

impl<T: Float> PQPair<T> {
    /// The pair of a single vertex: `φ = λ`, `φ_{−v} = 1`.
    pub fn single_vertex(pt: &LambdaPoint<T>) -> Self {
        pq_split(pt.lambda, T::one(), pt)
    }

    pub fn scale(&self, s: T) -> Self {
        PQPair {
            p: self.p * s,
            q: self.q * s,
        }
    }
}

/// Solves `φ_G = p + q`, `φ_{G−v} = x2·p + x1·q` for `(p, q)`.
pub fn pq_split<T: Float>(phi_g: T, phi_g_minus_v: T, pt: &LambdaPoint<T>) -> PQPair<T> {
    let g = pt.gap();
    PQPair {
        p: div(phi_g_minus_v - pt.x1 * phi_g, g),
        q: div(pt.x2 * phi_g - phi_g_minus_v, g),
    }
}

/// Inverse of [`pq_split`]: returns `(φ_G, φ_{G−v})`.
pub fn pq_join<T: Float>(pair: &PQPair<T>, pt: &LambdaPoint<T>) -> (T, T) {
    (pair.p + pair.q, pt.x2 * pair.p + pt.x1 * pair.q)
}

/// `(p, q)` at the centre of the odd path `P_{2k+1}` in closed form.
pub fn pq_odd_path_centre<T: Float>(k: usize, pt: &LambdaPoint<T>) -> PQPair<T> {
    let (x1, x2) = (pt.x1, pt.x2);
    let pre = div(powu(x2, k + 1) - powu(x1, k + 1), pt.gap().powi(3));
    let two = lit::<T>(2.0);
    // x2^{k−1} and x1^{k−1}, using x1·x2 = 1 when k = 0
    let (x2km1, x1km1) = if k == 0 {
        (x1, x2)
    } else {
        (powu(x2, k - 1), powu(x1, k - 1))
    };
    let p = x2km1 - two * powu(x1, k + 1) + powu(x1, k + 3);
    let q = x1km1 - two * powu(x2, k + 1) + powu(x2, k + 3);
    PQPair {
        p: pre * p,
        q: pre * q,
    }
}

/// A 2×2 matrix acting on `(p, q)` column vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transfer2x2<T = Real> {
    pub a: [[T; 2]; 2],
}

impl<T: Float> Transfer2x2<T> {
    pub fn identity() -> Self {
        Transfer2x2::diag(T::one(), T::one())
    }

    pub fn diag(d1: T, d2: T) -> Self {
        Transfer2x2 {
            a: [[d1, T::zero()], [T::zero(), d2]],
        }
    }

    pub fn apply(&self, v: &PQPair<T>) -> PQPair<T> {
        PQPair {
            p: self.a[0][0] * v.p + self.a[0][1] * v.q,
            q: self.a[1][0] * v.p + self.a[1][1] * v.q,
        }
    }

    pub fn det(&self) -> T {
        self.a[0][0] * self.a[1][1] - self.a[0][1] * self.a[1][0]
    }

    pub fn scale(&self, s: T) -> Self {
        let mut a = self.a;
        for row in &mut a {
            for x in row.iter_mut() {
                *x = *x * s;
            }
        }
        Transfer2x2 { a }
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.a[i][j] - other.a[i][j]).abs());
            }
        }
        worst
    }
}

impl<T: Float> Mul for Transfer2x2<T> {
    type Output = Transfer2x2<T>;
    fn mul(self, rhs: Self) -> Self {
        let mut a = [[T::zero(); 2]; 2];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.a[i][0] * rhs.a[0][j] + self.a[i][1] * rhs.a[1][j];
            }
        }
        Transfer2x2 { a }
    }
}

/// `d_m^(1) = φ_{P_m} − x1^{m+2}`.
pub fn d1<T: Float>(m: usize, pt: &LambdaPoint<T>) -> T {
    phi_path(m, pt) - powu(pt.x1, m + 2)
}

/// `d_m^(2) = x2^{m+2} − φ_{P_m}`.
pub fn d2<T: Float>(m: usize, pt: &LambdaPoint<T>) -> T {
    powu(pt.x2, m + 2) - phi_path(m, pt)
}

/// `B_m`: the action of joining a new vertex `v` to the root `v'` and
/// hanging a pendent path of `m` vertices from `v`. `B_0 = diag(x1, x2)`.
pub fn transfer_b<T: Float>(m: usize, pt: &LambdaPoint<T>) -> Transfer2x2<T> {
    if m == 0 {
        return Transfer2x2::diag(pt.x1, pt.x2);
    }
    let prev = phi_path(m - 1, pt);
    Transfer2x2 {
        a: [[d1(m, pt), pt.x1 * prev], [-(pt.x2 * prev), d2(m, pt)]],
    }
    .scale(recip(pt.gap()))
}

/// `A^s = diag(x1^s, x2^s)`, the action of extending by a path of `s` vertices.
pub fn transfer_a<T: Float>(s: usize, pt: &LambdaPoint<T>) -> Transfer2x2<T> {
    Transfer2x2::diag(powu(pt.x1, s), powu(pt.x2, s))
}

/// The five expressions that share their largest root with `ρ_{m,k}`, each
/// arranged as `lhs − rhs`:
///
/// 0. `d2 − 2φ_{P_{m−1}} x1^k / (1 − x1^{k+1})`
/// 1. `d2 x2^k − d1 x1^k − 2φ_{P_{m−1}}`
/// 2. `d2 − 2φ_{P_{m−1}} x1^k − d1 x1^{2k}`
/// 3. `d2 − d1 x1^{k−1}`
/// 4. `d2 x2^{(k−1)/2} − d1 x1^{(k−1)/2}`
pub fn equivalent_forms<T: Float>(m: usize, k: usize, pt: &LambdaPoint<T>) -> [T; 5] {
    assert!(m >= 1 && k >= 1, "forms need m, k >= 1");
    let (x1, x2) = (pt.x1, pt.x2);
    let two = lit::<T>(2.0);
    let a = d1(m, pt);
    let b = d2(m, pt);
    let prev = phi_path(m - 1, pt);
    let x1k = powu(x1, k);
    // x^{(k−1)/2} as (√x)^{k−1}
    let (r1, r2) = (x1.sqrt(), x2.sqrt());
    [
        b - div(two * prev * x1k, T::one() - powu(x1, k + 1)),
        b * powu(x2, k) - a * x1k - two * prev,
        b - two * prev * x1k - a * powu(x1, 2 * k),
        b - a * powu(x1, k - 1),
        b * powu(r2, k - 1) - a * powu(r1, k - 1),
    ]
}

/// The root function of `ρ_{m,k}`: `d2 x2^{(k−1)/2} − d1 x1^{(k−1)/2}`.
pub fn rho_mk_function<T: Float>(m: usize, k: usize, pt: &LambdaPoint<T>) -> T {
    equivalent_forms(m, k, pt)[4]
}

/// A value represented as `mantissa · x2^exponent`, used to keep transfer
/// products in range for large graphs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled<T = Real> {
    pub mantissa: T,
    pub exponent: usize,
}

impl<T: Float> Scaled<T> {
    /// The represented value; may overflow to infinity for large exponents.
    pub fn value(&self, pt: &LambdaPoint<T>) -> T {
        self.mantissa * powu(pt.x2, self.exponent)
    }

    pub fn signum(&self) -> T {
        self.mantissa.signum()
    }
}

/// Applies `mat`, then divides by `x2^added` so the pair stays bounded.
fn step<T: Float>(
    v: PQPair<T>,
    mat: &Transfer2x2<T>,
    added: usize,
    pt: &LambdaPoint<T>,
) -> PQPair<T> {
    mat.apply(&v).scale(powu(pt.x1, added))
}

/// `φ_G(λ) / x2^n` of the open quipu by the left-to-right transfer product
/// `(1,1) A^{k_{r+1}} B_{m_r} ⋯ A^{k_1} B_{m_0} A^{k_0−1} (p_1, q_1)`,
/// starting at the leaf of the first end leg.
pub fn quipu_phi_transfer_scaled<T: Float>(spec: &OpenQuipuSpec, pt: &LambdaPoint<T>) -> Scaled<T> {
    let (k, m, r) = (spec.k(), spec.m(), spec.r());
    let mut v = PQPair::single_vertex(pt).scale(pt.x1);
    v = step(v, &transfer_a(k[0] - 1, pt), k[0] - 1, pt);
    for i in 0..=r {
        v = step(v, &transfer_b(m[i], pt), m[i] + 1, pt);
        v = step(v, &transfer_a(k[i + 1], pt), k[i + 1], pt);
    }
    Scaled {
        mantissa: v.p + v.q,
        exponent: spec.order(),
    }
}

/// `φ_G(λ)` of the open quipu via the transfer product.
pub fn quipu_phi_transfer<T: Float>(spec: &OpenQuipuSpec, pt: &LambdaPoint<T>) -> T {
    quipu_phi_transfer_scaled(spec, pt).value(pt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(l: f64) -> LambdaPoint {
        LambdaPoint::from_f64(l).unwrap()
    }

    fn close(a: Real, b: Real, rel: f64) -> bool {
        let scale = a.abs().max(b.abs()).max(Real::from(1.0));
        div((a - b).abs(), scale).hi() <= rel
    }

    #[test]
    fn refined_division() {
        let a = Real::from(3.25);
        let q = div(a, Real::from(7.0));
        assert!((q * Real::from(7.0) - a).abs().hi() < 1e-30);
    }

    #[test]
    fn lambda_point_invariants() {
        let p = pt(2.3);
        assert!(close(p.x1() * p.x2(), Real::from(1.0), 1e-30));
        assert!(close(p.x1() + p.x2(), p.lambda(), 1e-30));
        assert!(p.x1() < Real::from(1.0) && p.x2() > Real::from(1.0));
        assert!(LambdaPoint::<f64>::new(2.0).is_err());
        assert!(LambdaPoint::<f64>::new(1.5).is_err());
    }

    #[test]
    fn small_paths() {
        let p = pt(2.7);
        assert_eq!(phi_path(0, &p), Real::from(1.0));
        assert!(close(phi_path(1, &p), p.lambda(), 1e-30));
        assert!(close(
            phi_path(2, &p),
            p.lambda() * p.lambda() - Real::from(1.0),
            1e-30
        ));
        let closed = div(p.x2().powi(7) - p.x1().powi(7), p.gap());
        assert!(close(phi_path(6, &p), closed, 1e-28));
    }

    #[test]
    fn single_vertex_pair() {
        let p = pt(2.5);
        let v = PQPair::single_vertex(&p);
        assert!(close(v.p, div(-(p.x1() * p.x1()), p.gap()), 1e-30));
        assert!(close(v.q, div(p.x2() * p.x2(), p.gap()), 1e-30));
        let c = pq_odd_path_centre(0, &p);
        assert!(close(c.p, v.p, 1e-28) && close(c.q, v.q, 1e-28));
    }

    #[test]
    fn split_join_round_trip() {
        let p = pt(2.2);
        let (a, b) = (Real::from(3.25), Real::from(-1.5));
        let (x, y) = pq_join(&pq_split(a, b, &p), &p);
        assert!(close(x, a, 1e-28) && close(y, b, 1e-28));
    }

    #[test]
    fn b0_is_a1() {
        let p = pt(2.4);
        assert_eq!(transfer_b(0, &p), transfer_a(1, &p));
        assert_eq!(transfer_a(0, &p), Transfer2x2::identity());
        let prod = transfer_a(3, &p) * transfer_a(4, &p);
        assert!(prod.max_abs_diff(&transfer_a(7, &p)).hi() < 1e-25);
    }

    #[test]
    fn path_from_transfer() {
        // a path on n vertices rooted at an end is A^{n−1} applied to one vertex
        let p = pt(2.05);
        let v = transfer_a(9, &p).apply(&PQPair::single_vertex(&p));
        let (phi, phi_minus) = pq_join(&v, &p);
        assert!(close(phi, phi_path(10, &p), 1e-26));
        assert!(close(phi_minus, phi_path(9, &p), 1e-26));
    }

    #[test]
    fn h_graph_by_transfer() {
        // two copies of P3 joined at their centres; deleting that edge
        // gives φ = φ(P3)² − λ⁴
        let p = pt(2.3);
        let spec = OpenQuipuSpec::new(vec![1, 0, 1], vec![1, 1]).unwrap();
        let l = p.lambda();
        let p3 = phi_path(3, &p);
        let expect = p3 * p3 - l * l * l * l;
        assert!(close(quipu_phi_transfer(&spec, &p), expect, 1e-26));
    }
}
