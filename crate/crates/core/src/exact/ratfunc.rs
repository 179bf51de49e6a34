//! Univariate polynomials and rational functions in a formal u over Q.
//!
//! u stands in for q^{1/2}; keeping it formal lets the (u-1)^2 divisions in
//! the even-character reduction be verified exactly instead of floated.

use super::multipoly::Coeff;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Dense polynomial in u over Q, low-first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(Vec<BigRational>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![BigRational::one()])
    }

    pub fn u() -> Self {
        UPoly(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            UPoly(vec![c])
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other.0.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    /// Long division; panics on zero divisor.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.0.last().expect("nonzero").recip();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        while r.len() > dd {
            let c = r.last().expect("nonempty") * &lead_inv;
            let shift = r.len() - 1 - dd;
            q[shift] = c.clone();
            for (k, dc) in d.0.iter().enumerate() {
                let v = &c * dc;
                r[shift + k] -= v;
            }
            while r.last().map_or(false, |x| x.is_zero()) {
                r.pop();
            }
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    pub fn into_monic(self) -> Self {
        match self.0.last() {
            None => self,
            Some(lead) if lead.is_one() => self,
            Some(lead) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * u + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn eval_rational(&self, u: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }
}

/// Reduced rational function num/den in u: den monic, gcd(num, den) = 1.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RatFunc { num, den };
        rf.reduce();
        rf
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc { num: p, den: UPoly::one() }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn u() -> Self {
        Self::from_poly(UPoly::u())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = UPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() != Some(0) {
            let (qn, rn) = self.num.divmod(&g);
            debug_assert!(rn.is_zero());
            let (qd, rd) = self.den.divmod(&g);
            debug_assert!(rd.is_zero());
            self.num = qn;
            self.den = qd;
        }
        // normalise: monic denominator
        let lead = self.den.0.last().expect("nonzero den").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.num.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    /// Bounded as u -> infinity, i.e. numerator degree <= denominator degree.
    pub fn bounded_at_infinity(&self) -> bool {
        self.num.degree().unwrap_or(0) <= self.den.degree().unwrap_or(0) || self.num.is_zero()
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.num.eval_f64(u) / self.den.eval_f64(u)
    }

    pub fn eval_rational(&self, u: &BigRational) -> BigRational {
        self.num.eval_rational(u) / self.den.eval_rational(u)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        // both reduced with monic denominators
        self.num == other.num && self.den == other.den
    }
}

impl Coeff for RatFunc {
    fn ring_zero() -> Self {
        Self::from_poly(UPoly::zero())
    }
    fn ring_one() -> Self {
        Self::from_poly(UPoly::one())
    }
    fn is_ring_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn poly_str(p: &UPoly) -> String {
            if p.is_zero() {
                return "0".into();
            }
            let mut parts = Vec::new();
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let sign = if c.is_negative() { "-" } else { "" };
                let mag = c.abs();
                parts.push(match i {
                    0 => format!("{sign}{mag}"),
                    1 => format!("{sign}{mag}u"),
                    _ => format!("{sign}{mag}u^{i}"),
                });
            }
            parts.join("+").replace("+-", "-")
        }
        if self.den == UPoly::one() {
            write!(f, "{}", poly_str(&self.num))
        } else {
            write!(f, "({})/({})", poly_str(&self.num), poly_str(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::big;

    #[test]
    fn reduction_and_arith() {
        // (u^2 - 1)/(u - 1) reduces to u + 1
        let num = UPoly::from_coeffs(vec![big(-1), big(0), big(1)]);
        let den = UPoly::from_coeffs(vec![big(-1), big(1)]);
        let r = RatFunc::new(num, den);
        assert_eq!(r, RatFunc::from_poly(UPoly::from_coeffs(vec![big(1), big(1)])));
        assert!(!r.bounded_at_infinity());

        let u = RatFunc::u();
        let one = RatFunc::from_rational(big(1));
        let frac = u.div(&u.sub(&one)); // u/(u-1): bounded at infinity
        assert!(frac.bounded_at_infinity());
        assert!((frac.eval_f64(3.0) - 1.5).abs() < 1e-15);
        assert_eq!(frac.eval_rational(&big(3)), big(3) / big(2));
    }

    #[test]
    fn divmod_exactness() {
        let a = UPoly::from_coeffs(vec![big(2), big(-3), big(1)]); // (u-1)(u-2)
        let d = UPoly::from_coeffs(vec![big(-1), big(1)]);
        let (q, r) = a.divmod(&d);
        assert!(r.is_zero());
        assert_eq!(q, UPoly::from_coeffs(vec![big(-2), big(1)]));
    }
}
