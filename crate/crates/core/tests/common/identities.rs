//! Transfer-calculus identity checks; each panics on the first mismatch.

use super::{eval_exact, rel_diff};
use num_bigint::BigInt;
use num_rational::BigRational;
use quipu_core::graph::OpenQuipuSpec;
use quipu_core::spectral::char_poly;
use quipu_core::transfer::{
    d1, d2, div, equivalent_forms, phi_path, pq_odd_path_centre, pq_split,
    quipu_phi_transfer_scaled, transfer_a, transfer_b, LambdaPoint, Real, Transfer2x2,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(x: Real) -> f64 {
    x.hi() + x.lo()
}

/// Relative mismatch of `lhs = rhs`, scaled by the largest term involved.
fn mismatch(lhs: Real, rhs: Real, terms: &[Real]) -> f64 {
    let scale = terms
        .iter()
        .fold(lhs.abs().max(rhs.abs()), |m, t| m.max(t.abs()));
    f(div((lhs - rhs).abs(), scale))
}

fn powu(x: Real, e: usize) -> Real {
    x.powi(e as i32)
}

/// Closed form `(x2^{m+1} − x1^{m+1}) / (x2 − x1)`.
fn phi_closed(m: usize, pt: &LambdaPoint) -> Real {
    div(powu(pt.x2(), m + 1) - powu(pt.x1(), m + 1), pt.gap())
}

/// λ on a dyadic grid so that the `f64` value is the exact rational.
fn dyadic_lambda(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (f64, BigRational) {
    let steps = rng.gen_range((lo * 1024.0) as i64 + 1..(hi * 1024.0) as i64);
    let frac = rng.gen_range(0..1i64 << 30);
    let num = (steps << 30) + frac;
    let lambda = num as f64 / (1u64 << 40) as f64;
    (
        lambda,
        BigRational::new(BigInt::from(num), BigInt::from(1u64 << 40)),
    )
}

fn random_spec(rng: &mut ChaCha8Rng) -> OpenQuipuSpec {
    loop {
        let junctions = rng.gen_range(1..=5);
        let mut k = vec![rng.gen_range(1..=8)];
        k.extend((1..junctions).map(|_| rng.gen_range(0..=8)));
        k.push(rng.gen_range(1..=8));
        let m = (0..junctions).map(|_| rng.gen_range(1..=8)).collect();
        let spec = OpenQuipuSpec::new(k, m).unwrap();
        if spec.order() <= 40 {
            return spec;
        }
    }
}

pub fn transfer_product_matches_exact_charpoly() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51d3);
    let mut worst = 0f64;
    for _ in 0..200 {
        let spec = random_spec(&mut rng);
        let (lambda, exact_lambda) = dyadic_lambda(&mut rng, 2.01, 3.0);
        let pt = LambdaPoint::from_f64(lambda).unwrap();
        let scaled = quipu_phi_transfer_scaled(&spec, &pt);
        let transfer = f(scaled.value(&pt));
        let exact = eval_exact(&char_poly(&spec.build()), &exact_lambda);
        let err = (transfer - exact).abs();
        assert!(
            err <= 1e-9 * exact.abs(),
            "{spec} at λ={lambda}: transfer {transfer:e}, exact {exact:e}"
        );
        worst = worst.max(err / exact.abs());
    }
    assert!(worst < 1e-9);
}

pub fn pendent_path_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5677);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=30);
        let lambda = rng.gen_range(2.01..3.0);
        let pt = LambdaPoint::from_f64(lambda).unwrap();
        let (x1, x2) = (pt.x1(), pt.x2());
        let phi = phi_path(m, &pt);
        assert!(
            rel_diff(f(phi), f(phi_closed(m, &pt))) < 1e-25,
            "φ_P{m} at {lambda}"
        );
        let span = powu(x2, m + 2) - powu(x1, m + 2);

        let l5 = powu(x2, m + 2) * phi;
        let r5 = d1(m + 1, &pt) * powu(x1, m + 1);
        let rhs5 = span * d1(m, &pt);
        assert!(
            mismatch(l5 - r5, rhs5, &[l5, r5]) < 1e-12,
            "first pendent identity m={m} λ={lambda}"
        );

        let l6 = powu(x1, m + 2) * phi;
        let r6 = d2(m + 1, &pt) * powu(x2, m + 1);
        let rhs6 = span * d2(m, &pt);
        assert!(
            mismatch(l6 + r6, rhs6, &[l6, r6]) < 1e-12,
            "second pendent identity m={m} λ={lambda}"
        );

        let a = d1(m, &pt) * x2;
        let b = d2(m, &pt) * x1;
        let rhs7 = Real::from(2.0) * phi_path(m - 1, &pt);
        assert!(
            mismatch(a - b, rhs7, &[a, b]) < 1e-12,
            "difference identity m={m} λ={lambda}"
        );
    }
}

pub fn conjugated_b_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8888);
    for _ in 0..500 {
        let m = rng.gen_range(1..=12);
        let s = rng.gen_range(0..=10);
        let pt = LambdaPoint::from_f64(rng.gen_range(2.01..3.0)).unwrap();
        let k = 2 * s + 1;
        let lhs = transfer_a(s, &pt) * transfer_b(m, &pt) * transfer_a(s + 1, &pt);
        let prev = phi_path(m - 1, &pt);
        let rhs = Transfer2x2 {
            a: [
                [d1(m, &pt) * powu(pt.x1(), k), prev],
                [-prev, d2(m, &pt) * powu(pt.x2(), k)],
            ],
        }
        .scale(div(Real::from(1.0), pt.gap()));
        let scale = rhs
            .a
            .iter()
            .flatten()
            .fold(Real::from(0.0), |acc, x| acc.max(x.abs()));
        assert!(f(div(lhs.max_abs_diff(&rhs), scale)) < 1e-25, "m={m} s={s}");
    }
}

/// Largest sign change of `g` on `(2, 3)`: coarse scan from the right, then bisection.
fn largest_root(g: impl Fn(&LambdaPoint) -> Real) -> f64 {
    let sign = |x: f64| g(&LambdaPoint::from_f64(x).unwrap()) > Real::from(0.0);
    let top = sign(3.0);
    let mut hi = 3.0f64;
    let mut lo = hi;
    while lo > 2.0 + 1e-6 {
        lo = (hi - 1.0 / 2048.0).max(2.0 + 1e-6);
        if sign(lo) != top {
            break;
        }
        hi = lo;
    }
    assert_ne!(sign(lo), top, "no sign change found");
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if sign(mid) == top {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn equivalent_forms_share_their_largest_root() {
    for m in 1..=4 {
        for k in 3..=9 {
            let roots: Vec<f64> = (0..5)
                .map(|i| largest_root(|pt| equivalent_forms(m, k, pt)[i]))
                .collect();
            for (i, r) in roots.iter().enumerate() {
                assert!(
                    (r - roots[0]).abs() <= 1e-10,
                    "(m,k)=({m},{k}): form {i} root {r} vs {}",
                    roots[0]
                );
            }
        }
    }
}

pub fn odd_path_centre_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4444);
    for k in 0..=6 {
        for _ in 0..50 {
            let pt = LambdaPoint::from_f64(rng.gen_range(2.01..3.0)).unwrap();
            let pair = pq_odd_path_centre(k, &pt);
            let whole = phi_path(2 * k + 1, &pt);
            let halves = phi_path(k, &pt) * phi_path(k, &pt);
            assert!(
                mismatch(pair.p + pair.q, whole, &[pair.p, pair.q]) < 1e-25,
                "p+q, k={k}"
            );
            let joined = pt.x2() * pair.p + pt.x1() * pair.q;
            assert!(
                mismatch(joined, halves, &[pair.p, pair.q]) < 1e-25,
                "x2p+x1q, k={k}"
            );
            let split = pq_split(whole, halves, &pt);
            assert!(
                mismatch(split.p, pair.p, &[pair.q]) < 1e-25
                    && mismatch(split.q, pair.q, &[pair.p]) < 1e-25
            );
        }
    }
}
