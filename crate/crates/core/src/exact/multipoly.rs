//! Sparse multivariate polynomials over an exact coefficient ring.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

/// Variable universe for the weight polynomials and integrands.
/// X, Y, Z are the f_k slots; I, J, D index coefficient pairs and deg Q;
/// A1..A4 are the region-integral variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    I,
    J,
    D,
    A1,
    A2,
    A3,
    A4,
}

pub const REGION_VARS: [Var; 4] = [Var::A1, Var::A2, Var::A3, Var::A4];

/// Exponent vector over the fixed [`Var`] universe (dense, tiny).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u16; 10]);

impl Monomial {
    fn one() -> Self {
        Monomial([0; 10])
    }

    fn var(v: Var) -> Self {
        let mut m = Self::one();
        m.0[v as usize] = 1;
        m
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; 10];
        for i in 0..10 {
            out[i] = self.0[i] + other.0[i];
        }
        Monomial(out)
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v as usize]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
}

/// Coefficient ring contract: exact, commutative, unital.
pub trait Coeff: Clone + PartialEq {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Coeff for BigRational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        num_traits::One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
}

/// Sparse multivariate polynomial: monomial -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<C: Coeff = BigRational> {
    terms: HashMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly { terms: HashMap::new() }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = HashMap::new();
        if !c.is_ring_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(C::ring_one())
    }

    pub fn var(v: Var) -> Self {
        let mut terms = HashMap::new();
        terms.insert(Monomial::var(v), C::ring_one());
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    fn insert(&mut self, m: Monomial, c: C) {
        if c.is_ring_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_ring_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_ring_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, v)| (*m, v.mul_ref(c))).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute each listed variable by a polynomial; unlisted variables
    /// stay as themselves.
    pub fn substitute(&self, subs: &[(Var, MultiPoly<C>)]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = VAR_ORDER[i];
                let base = subs
                    .iter()
                    .find(|(sv, _)| *sv == v)
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| Self::var(v));
                term = term.mul(&base.pow(e as u32));
            }
            out = out.add(&term);
        }
        out
    }

    /// Total degree, or None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Largest combined exponent over the given variables.
    pub fn degree_in(&self, vars: &[Var]) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exponent(v) as u32).sum())
            .max()
    }

    /// Coefficients in a canonical (sorted-monomial) order, for comparisons.
    pub fn sorted_terms(&self) -> Vec<(Monomial, C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|(m, _)| *m);
        v
    }

    /// Map every coefficient into another ring.
    pub fn map_coeffs<C2: Coeff>(&self, f: impl Fn(&C) -> C2) -> MultiPoly<C2> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.insert(*m, f(c));
        }
        out
    }
}

const VAR_ORDER: [Var; 10] =
    [Var::X, Var::Y, Var::Z, Var::I, Var::J, Var::D, Var::A1, Var::A2, Var::A3, Var::A4];

impl MultiPoly<BigRational> {
    pub fn from_integer(n: i64) -> Self {
        Self::constant(super::big(n))
    }

    /// Evaluate at a rational point; missing variables default to zero.
    pub fn eval_rational(&self, point: &[(Var, BigRational)]) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = VAR_ORDER[i];
                let x = point
                    .iter()
                    .find(|(pv, _)| *pv == v)
                    .map(|(_, x)| x.clone())
                    .unwrap_or_else(BigRational::zero);
                term *= x.pow(e as i32);
            }
            total += term;
        }
        total
    }

    pub fn eval_f64(&self, point: &[(Var, f64)]) -> f64 {
        let lookup = |v: Var| point.iter().find(|(pv, _)| *pv == v).map(|(_, x)| *x).unwrap_or(0.0);
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut term = c.to_f64().unwrap_or(f64::NAN);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= lookup(VAR_ORDER[i]).powi(e as i32);
                }
            }
            total += term;
        }
        total
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        MultiPoly::add(self, rhs)
    }
}
impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        MultiPoly::sub(self, rhs)
    }
}
impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        MultiPoly::mul(self, rhs)
    }
}
impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly::neg(self)
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z", "i", "j", "D", "a1", "a2", "a3", "a4"];
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (idx, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", names[idx])?,
                    _ => write!(f, "*{}^{}", names[idx], e)?,
                }
            }
        }
        Ok(())
    }
}
