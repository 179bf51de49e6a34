//! Exact elements a + b*sqrt(q) of Q(sqrt q).

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// a + b*sqrt(q) with exact rational components. Ring operations stay inside
/// Q(sqrt q); equality is exact and componentwise. The carried q keeps
/// mixed-field arithmetic from slipping through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtQNumber {
    pub q: u64,
    pub a: BigRational,
    pub b: BigRational,
}

impl SqrtQNumber {
    pub fn new(q: u64, a: BigRational, b: BigRational) -> Self {
        SqrtQNumber { q, a, b }
    }

    pub fn zero(q: u64) -> Self {
        SqrtQNumber { q, a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn from_rational(q: u64, a: BigRational) -> Self {
        SqrtQNumber { q, a, b: BigRational::zero() }
    }

    pub fn from_integer(q: u64, n: i64) -> Self {
        Self::from_rational(q, super::big(n))
    }

    /// sqrt(q)^n: integral power of the generator.
    pub fn sqrt_q_pow(q: u64, n: u32) -> Self {
        let half = BigRational::from_integer(num_bigint::BigInt::from(q)).pow((n / 2) as i32);
        if n % 2 == 0 {
            SqrtQNumber { q, a: half, b: BigRational::zero() }
        } else {
            SqrtQNumber { q, a: BigRational::zero(), b: half }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn assert_same_q(&self, other: &Self) {
        assert_eq!(self.q, other.q, "mixed sqrt(q) fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_q(other);
        SqrtQNumber { q: self.q, a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_q(other);
        SqrtQNumber { q: self.q, a: &self.a - &other.a, b: &self.b - &other.b }
    }

    pub fn neg(&self) -> Self {
        SqrtQNumber { q: self.q, a: -self.a.clone(), b: -self.b.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_q(other);
        let qr = BigRational::from_integer(num_bigint::BigInt::from(self.q));
        SqrtQNumber {
            q: self.q,
            a: &self.a * &other.a + (&self.b * &other.b) * &qr,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        SqrtQNumber { q: self.q, a: &self.a * c, b: &self.b * c }
    }

    /// Multiplicative inverse via the conjugate; panics on zero.
    pub fn inv(&self) -> Self {
        let qr = BigRational::from_integer(num_bigint::BigInt::from(self.q));
        let norm = &self.a * &self.a - (&self.b * &self.b) * &qr;
        assert!(!norm.is_zero(), "inverse of zero in Q(sqrt q)");
        SqrtQNumber { q: self.q, a: &self.a / &norm, b: -(&self.b / &norm) }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.q as f64).sqrt()
    }
}

impl fmt::Display for SqrtQNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q)
    }
}
