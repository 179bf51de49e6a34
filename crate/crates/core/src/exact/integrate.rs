//! Exact integration over the region
//! { a1..a4 >= 0, 2a1 + a3 + a4 < 1, 2a2 + a3 + a4 < 1 }
//! and the limiting fourth-moment constants D_m.

use super::multipoly::{MultiPoly, Var};
use super::{big, f_poly, factorial};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Exact integral of a1^e1 a2^e2 a3^e3 a4^e4 over the region.
///
/// Integrating a1, a2 over [0, (1-a3-a4)/2) and then the (a3, a4) simplex:
/// e3! e4! (e1+e2+2)! / [(e1+1)(e2+1) 2^{e1+e2+2} (e1+e2+e3+e4+4)!].
pub fn monomial_integral(e1: u64, e2: u64, e3: u64, e4: u64) -> BigRational {
    let num = factorial(e3) * factorial(e4) * factorial(e1 + e2 + 2);
    let den = BigInt::from((e1 + 1) * (e2 + 1))
        * BigInt::from(2u64).pow((e1 + e2 + 2) as u32)
        * factorial(e1 + e2 + e3 + e4 + 4);
    BigRational::new(num, den)
}

/// Exact integral of a polynomial in a1..a4 over the region, term by term.
pub fn region_integrate(p: &MultiPoly<BigRational>) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        for v in [Var::X, Var::Y, Var::Z, Var::I, Var::J, Var::D] {
            if m.exponent(v) != 0 {
                return Err(Error::InvalidArgument(
                    "integrand must use only the region variables a1..a4".into(),
                ));
            }
        }
        total += c
            * monomial_integral(
                m.exponent(Var::A1) as u64,
                m.exponent(Var::A2) as u64,
                m.exponent(Var::A3) as u64,
                m.exponent(Var::A4) as u64,
            );
    }
    Ok(total)
}

fn a(v: Var) -> MultiPoly<BigRational> {
    MultiPoly::var(v)
}

/// f_k(a1+a3, a1+a4, 1) — the first factor of the fourth-moment integrand.
fn f_factor_left(k: u32) -> MultiPoly<BigRational> {
    f_poly(k).substitute(&[
        (Var::X, a(Var::A1).add(&a(Var::A3))),
        (Var::Y, a(Var::A1).add(&a(Var::A4))),
        (Var::Z, MultiPoly::one()),
    ])
}

/// f_l(a2+a4, a2+a3, 1) — the second factor.
fn f_factor_right(l: u32) -> MultiPoly<BigRational> {
    f_poly(l).substitute(&[
        (Var::X, a(Var::A2).add(&a(Var::A4))),
        (Var::Y, a(Var::A2).add(&a(Var::A3))),
        (Var::Z, MultiPoly::one()),
    ])
}

/// The leading fourth-moment coefficient: the exact region integral of
/// f_k(a1+a3, a1+a4, 1) f_l(a2+a4, a2+a3, 1). Symmetric in (k, l).
pub fn fourth_main_coefficient(k: u32, l: u32) -> BigRational {
    let integrand = f_factor_left(k).mul(&f_factor_right(l));
    region_integrate(&integrand).expect("region variables only")
}

/// D_m built from its own four-factor integrand (independent route from
/// [`fourth_main_coefficient`]):
/// ((a1+a3)^m (a1+a4)^m + (1-a1-a3)^m (1-a1-a4)^m) *
/// ((a2+a3)^m (a2+a4)^m + (1-a2-a3)^m (1-a2-a4)^m).
pub fn d_constant(m: u32) -> BigRational {
    let one = MultiPoly::one();
    let s13 = a(Var::A1).add(&a(Var::A3));
    let s14 = a(Var::A1).add(&a(Var::A4));
    let s23 = a(Var::A2).add(&a(Var::A3));
    let s24 = a(Var::A2).add(&a(Var::A4));
    let left = s13.pow(m).mul(&s14.pow(m)).add(&one.sub(&s13).pow(m).mul(&one.sub(&s14).pow(m)));
    let right = s23.pow(m).mul(&s24.pow(m)).add(&one.sub(&s23).pow(m).mul(&one.sub(&s24).pow(m)));
    region_integrate(&left.mul(&right)).expect("region variables only")
}

/// Cross term of the D_m expansion:
/// integral of (1-a1-a3)^m (1-a1-a4)^m (a2+a3)^m (a2+a4)^m.
/// Bounded by 4^{-m} times the region volume, since (a2+a3)(a2+a4) < 1/4.
pub fn cross_term(m: u32) -> BigRational {
    let one = MultiPoly::one();
    let s13 = a(Var::A1).add(&a(Var::A3));
    let s14 = a(Var::A1).add(&a(Var::A4));
    let s23 = a(Var::A2).add(&a(Var::A3));
    let s24 = a(Var::A2).add(&a(Var::A4));
    let p = one
        .sub(&s13)
        .pow(m)
        .mul(&one.sub(&s14).pow(m))
        .mul(&s23.pow(m))
        .mul(&s24.pow(m));
    region_integrate(&p).expect("region variables only")
}

/// One row of the D_m asymptotics table.
#[derive(Debug, Clone)]
pub struct DmRow {
    pub m: u32,
    pub d_m: BigRational,
    pub m4_dm: BigRational,
    pub cross_term: BigRational,
    /// |m^4 D_m - 1/16|, exact.
    pub gap: BigRational,
    /// cross_term <= 4^{-m}/48, exact comparison.
    pub cross_term_bounded: bool,
}

/// Exact D_m table for m = 0..=m_max, with the m^4 D_m -> 1/16 gap and the
/// cross-term bound. Rows are independent and computed in parallel.
pub fn dm_asymptotic_table(m_max: u32) -> Result<Vec<DmRow>> {
    const M_CAP: u32 = 16;
    if m_max > M_CAP {
        return Err(Error::ResourceGuard(format!(
            "dm table capped at m = {M_CAP} (expansion growth), requested {m_max}"
        )));
    }
    let sixteenth = BigRational::new(BigInt::one(), BigInt::from(16));
    Ok((0..=m_max)
        .into_par_iter()
        .map(|m| {
            let d_m = d_constant(m);
            let m4_dm = &d_m * big(i64::from(m).pow(4));
            let ct = cross_term(m);
            let bound = BigRational::new(BigInt::one(), BigInt::from(48) * BigInt::from(4u64).pow(m));
            DmRow {
                m,
                gap: (&m4_dm - &sixteenth).abs(),
                cross_term_bounded: ct <= bound,
                m4_dm,
                cross_term: ct,
                d_m,
            }
        })
        .collect())
}

/// Monte-Carlo estimate of the region volume: N uniform samples in the
/// bounding box [0,1/2]^2 x [0,1]^2, indicator average times box volume.
/// Deterministic for a fixed seed (chunked ChaCha streams).
pub fn region_volume_monte_carlo(samples: u64, seed: u64) -> f64 {
    const CHUNK: u64 = 1 << 20;
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(chunk));
            let n = CHUNK.min(samples - chunk * CHUNK);
            let mut hit = 0u64;
            for _ in 0..n {
                let a1: f64 = rng.gen::<f64>() * 0.5;
                let a2: f64 = rng.gen::<f64>() * 0.5;
                let a3: f64 = rng.gen::<f64>();
                let a4: f64 = rng.gen::<f64>();
                if 2.0 * a1 + a3 + a4 < 1.0 && 2.0 * a2 + a3 + a4 < 1.0 {
                    hit += 1;
                }
            }
            hit
        })
        .sum();
    (hits as f64 / samples as f64) * 0.25
}

/// Monte-Carlo mean and standard error of a region integrand, over the same
/// bounding box (misses contribute zero). Used to gate the closed form.
pub fn region_integral_monte_carlo(
    p: &MultiPoly<BigRational>,
    samples: u64,
    seed: u64,
) -> (f64, f64) {
    const BOX_VOLUME: f64 = 0.25;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let a1: f64 = rng.gen::<f64>() * 0.5;
        let a2: f64 = rng.gen::<f64>() * 0.5;
        let a3: f64 = rng.gen::<f64>();
        let a4: f64 = rng.gen::<f64>();
        let v = if 2.0 * a1 + a3 + a4 < 1.0 && 2.0 * a2 + a3 + a4 < 1.0 {
            p.eval_f64(&[(Var::A1, a1), (Var::A2, a2), (Var::A3, a3), (Var::A4, a4)])
        } else {
            0.0
        };
        sum += v;
        sum_sq += v * v;
    }
    let mean = sum / samples as f64;
    let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
    let std_err = (var / samples as f64).sqrt() * BOX_VOLUME;
    (mean * BOX_VOLUME, std_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn frac(n: i64, d: i64) -> BigRational {
        big(n) / big(d)
    }

    #[test]
    fn monomial_closed_form_examples() {
        assert_eq!(monomial_integral(0, 0, 0, 0), frac(1, 48));
        assert_eq!(monomial_integral(1, 0, 0, 0), frac(1, 320));
        assert_eq!(monomial_integral(0, 0, 1, 0), frac(1, 240));
    }

    #[test]
    fn integrate_is_linear() {
        let p = MultiPoly::var(Var::A1);
        let r = MultiPoly::var(Var::A3).mul(&MultiPoly::var(Var::A4));
        let lhs = region_integrate(&p.scale(&frac(3, 2)).add(&r.scale(&frac(-7, 5)))).unwrap();
        let rhs = frac(3, 2) * region_integrate(&p).unwrap()
            + frac(-7, 5) * region_integrate(&r).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_foreign_variables() {
        let p = MultiPoly::var(Var::X);
        assert!(region_integrate(&p).is_err());
    }

    #[test]
    fn fourth_main_coefficient_values() {
        assert_eq!(fourth_main_coefficient(0, 0), frac(1, 12));
        assert_eq!(fourth_main_coefficient(1, 1), frac(61, 10080));
        // symmetry in (k, l)
        assert_eq!(fourth_main_coefficient(2, 1), fourth_main_coefficient(1, 2));
        assert_eq!(fourth_main_coefficient(2, 0), fourth_main_coefficient(0, 2));
    }

    #[test]
    fn d_constant_matches_fourth_main_coefficient() {
        for m in 0..=5 {
            assert_eq!(d_constant(m), fourth_main_coefficient(m, m), "m={m}");
        }
    }

    #[test]
    fn dm_table_decreasing_gap_and_cross_bound() {
        let table = dm_asymptotic_table(8).unwrap();
        assert_eq!(table[0].d_m, frac(1, 12));
        assert_eq!(table[1].d_m, frac(61, 10080));
        assert_eq!(table[2].d_m, frac(449, 415_800));
        for row in &table {
            assert!(row.cross_term_bounded, "m={}", row.m);
            assert!(row.d_m.is_positive());
        }
        for w in table.windows(2).skip(2) {
            assert!(w[1].gap < w[0].gap, "gap not decreasing at m={}", w[1].m);
        }
    }

    /// The closed-form monomial integral must agree with Monte Carlo within
    /// 3 sigma for every monomial of total degree <= 6 (shared sample set,
    /// fixed seed).
    #[test]
    fn monomial_closed_form_vs_monte_carlo() {
        let n = 1_000_000u64;
        for total in 0..=6u64 {
            for e1 in 0..=total {
                for e2 in 0..=total - e1 {
                    for e3 in 0..=total - e1 - e2 {
                        let e4 = total - e1 - e2 - e3;
                        let mono = MultiPoly::var(Var::A1)
                            .pow(e1 as u32)
                            .mul(&MultiPoly::var(Var::A2).pow(e2 as u32))
                            .mul(&MultiPoly::var(Var::A3).pow(e3 as u32))
                            .mul(&MultiPoly::var(Var::A4).pow(e4 as u32));
                        let exact = monomial_integral(e1, e2, e3, e4).to_f64().unwrap();
                        let (mc, se) = region_integral_monte_carlo(&mono, n, 0xD1CE);
                        assert!(
                            (mc - exact).abs() <= 3.0 * se + 1e-12,
                            "({e1},{e2},{e3},{e4}): mc={mc} exact={exact} se={se}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn volume_monte_carlo_close() {
        let mc = region_volume_monte_carlo(2_000_000, 7);
        let exact = 1.0 / 48.0;
        assert!((mc - exact).abs() / exact < 0.01, "mc={mc}");
    }
}
