use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact element `a + b·√2` of the field ℚ(√2).
///
/// Both rationals are kept in lowest terms with positive denominators, which
/// `BigRational` maintains on every operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QSqrt2::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    /// `a_num/a_den + (b_num/b_den)·√2`.
    pub fn from_fracs(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        QSqrt2::new(
            BigRational::new(a_num.into(), a_den.into()),
            BigRational::new(b_num.into(), b_den.into()),
        )
    }

    pub fn rational(a: BigRational) -> Self {
        QSqrt2::new(a, BigRational::zero())
    }

    pub fn zero() -> Self {
        QSqrt2::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        QSqrt2::rational(BigRational::one())
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(BigRational::zero(), BigRational::one())
    }

    /// The threshold λ* = (3/2)√2.
    pub fn threshold() -> Self {
        QSqrt2::from_fracs(0, 1, 3, 2)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Sign of the real number `a + b√2`, decided without any floating point.
    pub fn sign(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        match (sa, sb) {
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                // opposite signs: compare a² with 2b²
                let a2 = &self.a * &self.a;
                let two_b2 = &self.b * &self.b * BigRational::from_integer(2.into());
                match a2.cmp(&two_b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => 0,
                }
            }
        }
    }

    /// Conjugate `a − b√2`.
    pub fn conj(&self) -> Self {
        QSqrt2::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(2.into())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QSqrt2::new(&self.a / &n, -(&self.b / &n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QSqrt2::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Integer form `(A + B√2) / d` with `d > 0` the least common denominator.
    pub(crate) fn integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let d = self.a.denom().lcm(self.b.denom());
        let a = self.a.numer() * (&d / self.a.denom());
        let b = self.b.numer() * (&d / self.b.denom());
        (a, b, d)
    }
}

fn rat_sign(x: &BigRational) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Sign of `p + q√2` for integers `p`, `q`.
pub(crate) fn zsqrt2_sign(p: &BigInt, q: &BigInt) -> i32 {
    let sp = int_sign(p);
    let sq = int_sign(q);
    match (sp, sq) {
        (0, s) | (s, 0) => s,
        (1, 1) => 1,
        (-1, -1) => -1,
        _ => {
            let p2 = p * p;
            let two_q2: BigInt = q * q * 2;
            match p2.cmp(&two_q2) {
                Ordering::Greater => sp,
                Ordering::Less => sq,
                Ordering::Equal => 0,
            }
        }
    }
}

pub(crate) fn int_sign(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl From<BigRational> for QSqrt2 {
    fn from(a: BigRational) -> Self {
        QSqrt2::rational(a)
    }
}

impl From<i64> for QSqrt2 {
    fn from(a: i64) -> Self {
        QSqrt2::from_ints(a, 0)
    }
}

impl<'a> Add<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(2.into());
        QSqrt2::new(
            &self.a * &rhs.a + &self.b * &rhs.b * two,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: QSqrt2) -> QSqrt2 {
        &self + &rhs
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: QSqrt2) -> QSqrt2 {
        &self - &rhs
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: QSqrt2) -> QSqrt2 {
        &self * &rhs
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt2", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*sqrt2", self.a, -self.b.clone())
                } else {
                    write!(f, "{} + {}*sqrt2", self.a, self.b)
                }
            }
        }
    }
}
