//! Exact symbolic layer: big rationals, elements of Q(sqrt q), sparse
//! multivariate polynomials, rational functions in a formal u = q^{1/2},
//! region integration over the fourth-moment domain, and the limiting
//! constants D_m.

mod bounds;
mod integrate;
mod multipoly;
mod ratfunc;
mod sqrtq;
mod weights;

pub use bounds::{exp_bound_check, ExpBoundReport};
pub use integrate::{
    cross_term, d_constant, dm_asymptotic_table, fourth_main_coefficient, monomial_integral,
    region_integral_monte_carlo, region_integrate, region_volume_monte_carlo, DmRow,
};
pub use multipoly::{MultiPoly, Var};
pub use ratfunc::{RatFunc, UPoly};
pub use sqrtq::SqrtQNumber;
pub use weights::{f_poly, f_poly_ij, gh_even, gh_odd, inv_sqrt_q_minus_one, p_ki_values, EvenWeights};

pub use num_rational::BigRational;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// n! as a big integer.
pub(crate) fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient as a big rational.
pub(crate) fn binomial(n: u64, k: u64) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    BigRational::from_integer(factorial(n) / (factorial(k) * factorial(n - k)))
}
