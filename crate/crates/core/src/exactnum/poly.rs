use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qsqrt2::{int_sign, zsqrt2_sign, QSqrt2};

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored in ascending degree. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    /// `∏ (x − r)` over the given integer roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(IntPoly::one(), |acc, &r| {
            &acc * &IntPoly::from_i64(&[-r, 1])
        })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by `x^s`.
    pub fn shift(&self, s: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content; the sign of the leading coefficient is preserved.
    pub fn primitive_part(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder scaled by a *positive* power of `|lc(divisor)|`, so the
    /// result is a positive multiple of the true remainder.
    pub fn positive_prem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor
            .degree()
            .expect("pseudo-division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let lc_abs = lc.abs();
        let lc_sign = BigInt::from(int_sign(&lc));
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let factor = &lr * &lc_sign;
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc_abs).collect();
            let off = rd - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                coeffs[i + off] -= &factor * c;
            }
            r = IntPoly::new(coeffs);
        }
        r
    }

    /// gcd up to a unit: primitive, positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.positive_prem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(|c| c.is_negative()) {
            a = -a;
        }
        a
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder or a non-integer coefficient.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        let lc = divisor.leading().unwrap();
        let mut r = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if sd < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let top = &r[i + dd];
            if top.is_zero() {
                continue;
            }
            let (quot, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                r[i + j] -= &quot * c;
            }
            q[i] = quot;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// `self / gcd(self, self′)`, primitive with the sign of `self`'s leading
    /// coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        let p = self.primitive_part();
        if g.degree() == Some(0) {
            return p;
        }
        p.div_exact(&g).expect("gcd divides the polynomial")
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let (acc, dpow) = self.horner_int(x.numer(), x.denom());
        BigRational::new(acc, dpow)
    }

    /// Sign of the value at a rational point (exact).
    pub fn sign_at_rational(&self, x: &BigRational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (acc, _) = self.horner_int(x.numer(), x.denom());
        int_sign(&acc)
    }

    /// `(Σ c_i num^i den^(n−i), den^n)`.
    fn horner_int(&self, num: &BigInt, den: &BigInt) -> (BigInt, BigInt) {
        let n = self.coeffs.len() - 1;
        let mut acc = self.coeffs[n].clone();
        let mut dpow = BigInt::one();
        for i in (0..n).rev() {
            dpow *= den;
            acc = acc * num + &self.coeffs[i] * &dpow;
        }
        (acc, dpow)
    }

    /// `(P, Q, d^n)` with `p(x) = (P + Q√2)/d^n` for `x = (A + B√2)/d`.
    fn horner_zsqrt2(&self, a: &BigInt, b: &BigInt, d: &BigInt) -> (BigInt, BigInt, BigInt) {
        let n = self.coeffs.len() - 1;
        let mut p = self.coeffs[n].clone();
        let mut q = BigInt::zero();
        let mut dpow = BigInt::one();
        let b_zero = b.is_zero();
        for i in (0..n).rev() {
            dpow *= d;
            if b_zero {
                p *= a;
                q *= a;
            } else {
                let np = &p * a + (&q * b) * 2;
                let nq = &p * b + &q * a;
                p = np;
                q = nq;
            }
            p += &self.coeffs[i] * &dpow;
        }
        (p, q, dpow)
    }

    /// Exact value in ℚ(√2).
    pub fn eval_qsqrt2(&self, x: &QSqrt2) -> QSqrt2 {
        if self.is_zero() {
            return QSqrt2::zero();
        }
        let (a, b, d) = x.integer_form();
        let (p, q, dpow) = self.horner_zsqrt2(&a, &b, &d);
        QSqrt2::new(BigRational::new(p, dpow.clone()), BigRational::new(q, dpow))
    }

    /// Exact sign of the value at a point of ℚ(√2).
    pub fn sign_at(&self, x: &QSqrt2) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (a, b, d) = x.integer_form();
        let (p, q, _) = self.horner_zsqrt2(&a, &b, &d);
        zsqrt2_sign(&p, &q)
    }

    pub(crate) fn sign_at_integer_form(&self, a: &BigInt, b: &BigInt, d: &BigInt) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (p, q, _) = self.horner_zsqrt2(a, b, d);
        zsqrt2_sign(&p, &q)
    }

    /// Floating-point Horner evaluation; coefficients are rounded to `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = BigInt::zero();
            if let Some(x) = self.coeffs.get(i) {
                c += x;
            }
            if let Some(y) = rhs.coeffs.get(i) {
                c += y;
            }
            out.push(c);
        }
        IntPoly::new(out)
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = BigInt::zero();
            if let Some(x) = self.coeffs.get(i) {
                c += x;
            }
            if let Some(y) = rhs.coeffs.get(i) {
                c -= y;
            }
            out.push(c);
        }
        IntPoly::new(out)
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
