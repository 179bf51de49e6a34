//! The central-point weight polynomials: f_k, the odd-character pair
//! (g_{O,k}, h_{O,k}), the even-character pair (g_{E,k}, shell weights),
//! and the reconstruction values p_{k,i}.

use super::multipoly::{MultiPoly, Var};
use super::ratfunc::{RatFunc, UPoly};
use super::sqrtq::SqrtQNumber;
use super::{big, binomial};
use crate::error::{Error, Result};
use num_rational::BigRational;

/// f_k(x, y, z) = x^k y^k + (z-x)^k (z-y)^k.
pub fn f_poly(k: u32) -> MultiPoly<BigRational> {
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);
    let z = MultiPoly::var(Var::Z);
    let first = x.pow(k).mul(&y.pow(k));
    let second = z.sub(&x).pow(k).mul(&z.sub(&y).pow(k));
    first.add(&second)
}

/// f_k with (x, y, z) renamed to the coefficient-index variables (i, j, D).
pub fn f_poly_ij(k: u32) -> MultiPoly<BigRational> {
    f_poly(k).substitute(&[
        (Var::X, MultiPoly::var(Var::I)),
        (Var::Y, MultiPoly::var(Var::J)),
        (Var::Z, MultiPoly::var(Var::D)),
    ])
}

/// Odd-character correction pair in (i, j, D):
/// g_{O,k} = (D-i-1)^k (D-j-1)^k - (D-i)^k (D-j)^k, and
/// h_{O,k} = -(D-i-1)^k (D-j-1)^k on the deg AB = deg Q - 1 shell.
pub fn gh_odd(k: u32) -> (MultiPoly<BigRational>, MultiPoly<BigRational>) {
    let i = MultiPoly::var(Var::I);
    let j = MultiPoly::var(Var::J);
    let d = MultiPoly::var(Var::D);
    let one = MultiPoly::one();
    let dm_i1 = d.sub(&i).sub(&one);
    let dm_j1 = d.sub(&j).sub(&one);
    let shifted = dm_i1.pow(k).mul(&dm_j1.pow(k));
    let unshifted = d.sub(&i).pow(k).mul(&d.sub(&j).pow(k));
    (shifted.sub(&unshifted), shifted.neg())
}

/// Even-character weights with coefficients rational in the formal u = q^{1/2}.
#[derive(Debug, Clone)]
pub struct EvenWeights {
    /// Interior correction g_{E,k}(i, j, D), applied for deg AB < deg Q.
    pub g: MultiPoly<RatFunc>,
    /// Shell weight at deg AB = deg Q - 2.
    pub h_dm2: MultiPoly<RatFunc>,
    /// Shell weight at deg AB = deg Q - 1.
    pub h_dm1: MultiPoly<RatFunc>,
    /// Shell weight at deg AB = deg Q.
    pub h_d: MultiPoly<RatFunc>,
}

impl EvenWeights {
    /// True when every coefficient of g stays bounded as u -> infinity,
    /// i.e. uniformly over prime powers q.
    pub fn g_bounded_in_q(&self) -> bool {
        self.g.terms().all(|(_, c)| c.bounded_at_infinity())
    }
}

fn lift(p: &MultiPoly<BigRational>) -> MultiPoly<RatFunc> {
    p.map_coeffs(|c| RatFunc::from_rational(c.clone()))
}

fn shift_plus_one(p: &MultiPoly<BigRational>, vars: &[Var]) -> MultiPoly<BigRational> {
    let subs: Vec<_> = vars
        .iter()
        .map(|&v| (v, MultiPoly::var(v).add(&MultiPoly::one())))
        .collect();
    p.substitute(&subs)
}

/// Builds g_{E,k} and the three shell weights from the kernel
/// K = q p(i+1,j+1) - u p(i,j+1) - u p(i+1,j) + p(i,j), p = f_k(i,j,D),
/// verifying K = (u-1)^2 (f_k + g_{E,k}) exactly in the coefficient field.
pub fn gh_even(k: u32) -> Result<EvenWeights> {
    let p = f_poly_ij(k);
    let p11 = shift_plus_one(&p, &[Var::I, Var::J]);
    let p01 = shift_plus_one(&p, &[Var::J]);
    let p10 = shift_plus_one(&p, &[Var::I]);

    let u = RatFunc::u();
    let usq = u.mul(&u);
    let kernel = lift(&p11)
        .scale(&usq)
        .sub(&lift(&p01).scale(&u))
        .sub(&lift(&p10).scale(&u))
        .add(&lift(&p));

    let one = RatFunc::from_rational(big(1));
    let um1 = u.sub(&one);
    let um1_sq = um1.mul(&um1);
    let inv_um1_sq = one.div(&um1_sq);

    let f = lift(&f_poly_ij(k));
    let g = kernel.scale(&inv_um1_sq).sub(&f);

    // the division must reassemble exactly
    let rebuilt = f.add(&g).scale(&um1_sq);
    if rebuilt != kernel {
        return Err(Error::Internal(format!(
            "(u-1)^2 division of the even kernel failed for k = {k}"
        )));
    }

    // shell ingredients in (i, j, D)
    let i = MultiPoly::var(Var::I);
    let j = MultiPoly::var(Var::J);
    let d = MultiPoly::var(Var::D);
    let one_p = MultiPoly::one();
    let dm_i = d.sub(&i);
    let dm_j = d.sub(&j);
    let dm_i1 = dm_i.sub(&one_p);
    let dm_j1 = dm_j.sub(&one_p);
    let ip1 = i.add(&one_p);
    let jp1 = j.add(&one_p);

    // deg Q - 2 shell: -q (D-i-1)^k (D-j-1)^k / (u-1)^2
    let tail = dm_i1.pow(k).mul(&dm_j1.pow(k));
    let h_dm2 = lift(&tail).scale(&usq.mul(&inv_um1_sq)).neg();

    // deg Q - 1 shell:
    // [u (D-i)^k (D-j-1)^k + u (D-i-1)^k (D-j)^k
    //  - q ((i+1)^k (j+1)^k + (D-i-1)^k (D-j-1)^k)] / (u-1)^2
    let mixed = dm_i.pow(k).mul(&dm_j1.pow(k)).add(&dm_i1.pow(k).mul(&dm_j.pow(k)));
    let h_dm1 = lift(&mixed)
        .scale(&u)
        .sub(&lift(&ip1.pow(k).mul(&jp1.pow(k)).add(&tail)).scale(&usq))
        .scale(&inv_um1_sq);

    // deg Q shell: i^k j^k / (u-1)^2
    let h_d = lift(&i.pow(k).mul(&j.pow(k))).scale(&inv_um1_sq);

    Ok(EvenWeights { g, h_dm2, h_dm1, h_d })
}

/// Values p_{k,i}(x) at x = sqrt(q)/(sqrt(q)-1), exact in Q(sqrt q):
/// p_{k,k} = 1 and p_{k,i} = -x sum_{j=i}^{k-1} C(k,j) p_{j,i} for i < k.
/// Returns the lower-triangular table P[k][i] for k <= k_max.
pub fn p_ki_values(q: u64, k_max: u32) -> Vec<Vec<SqrtQNumber>> {
    // x = sqrt(q)/(sqrt(q)-1) = (q + sqrt q)/(q - 1)
    let qm1 = big(q as i64 - 1);
    let x = SqrtQNumber::new(q, big(q as i64) / qm1.clone(), big(1) / qm1);
    let mut table: Vec<Vec<SqrtQNumber>> = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max as usize {
        let mut row = vec![SqrtQNumber::zero(q); k + 1];
        row[k] = SqrtQNumber::from_integer(q, 1);
        for i in (0..k).rev() {
            let mut acc = SqrtQNumber::zero(q);
            for j in i..k {
                let c = binomial(k as u64, j as u64);
                acc = acc.add(&table[j][i].scale(&c));
            }
            row[i] = acc.mul(&x).neg();
        }
        table.push(row);
    }
    table
}

/// 1/(sqrt q - 1) = (sqrt q + 1)/(q - 1), exact.
pub fn inv_sqrt_q_minus_one(q: u64) -> SqrtQNumber {
    let qm1 = big(q as i64 - 1);
    SqrtQNumber::new(q, big(1) / qm1.clone(), big(1) / qm1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::multipoly::Var;

    #[test]
    fn f_poly_examples() {
        assert_eq!(f_poly(0), MultiPoly::from_integer(2));
        let f1 = f_poly(1);
        // f_1 = xy + (z-x)(z-y) = 2xy - xz - yz + z^2 ... evaluate instead
        let v = f1.eval_rational(&[(Var::X, big(2)), (Var::Y, big(3)), (Var::Z, big(7))]);
        assert_eq!(v, big(2 * 3 + 5 * 4));
        let f2 = f_poly(2);
        let at_one = f2.eval_rational(&[(Var::X, big(1)), (Var::Y, big(1)), (Var::Z, big(1))]);
        assert_eq!(at_one, big(1));
    }

    #[test]
    fn gh_odd_examples() {
        let (g0, h0) = gh_odd(0);
        assert!(g0.is_zero());
        assert_eq!(h0, MultiPoly::from_integer(-1));

        // g_{O,1} = (D-i-1)(D-j-1) - (D-i)(D-j) = -(D-i) - (D-j) + 1
        let (g1, _) = gh_odd(1);
        for (iv, jv, dv) in [(0i64, 1i64, 4i64), (2, 2, 5), (1, 0, 3)] {
            let got = g1.eval_rational(&[(Var::I, big(iv)), (Var::J, big(jv)), (Var::D, big(dv))]);
            assert_eq!(got, big(-(dv - iv) - (dv - jv) + 1));
        }

        let (g2, _) = gh_odd(2);
        assert_eq!(g2.total_degree(), Some(3)); // degree 2k-1
        assert_eq!(gh_odd(1).0.total_degree(), Some(1));
    }

    #[test]
    fn gh_even_base_case_and_degrees() {
        let w0 = gh_even(0).unwrap();
        assert!(w0.g.is_zero());
        // h shells at k=0: -q/(u-1)^2, -2u/(u-1), 1/(u-1)^2
        let at = |p: &MultiPoly<RatFunc>, u: f64| {
            let c: Vec<_> = p.sorted_terms();
            assert_eq!(c.len(), 1);
            c[0].1.eval_f64(u)
        };
        let u = 3f64.sqrt();
        assert!((at(&w0.h_dm2, u) + 3.0 / (u - 1.0).powi(2)).abs() < 1e-12);
        assert!((at(&w0.h_dm1, u) + 2.0 * u / (u - 1.0)).abs() < 1e-12);
        assert!((at(&w0.h_d, u) - 1.0 / (u - 1.0).powi(2)).abs() < 1e-12);

        for k in 1..=2u32 {
            let w = gh_even(k).unwrap();
            assert_eq!(w.g.degree_in(&[Var::I, Var::J, Var::D]), Some(2 * k - 1));
        }
    }

    #[test]
    fn gh_even_bounded_for_small_k() {
        for k in 0..=4 {
            let w = gh_even(k).unwrap();
            assert!(w.g_bounded_in_q(), "g_E,{k} unbounded in q");
        }
    }

    #[test]
    fn p_ki_base_cases() {
        let table = p_ki_values(3, 3);
        assert_eq!(table[0][0], SqrtQNumber::from_integer(3, 1));
        // p_{1,0} = -x
        let qm1 = big(2);
        let x = SqrtQNumber::new(3, big(3) / qm1.clone(), big(1) / qm1);
        assert_eq!(table[1][0], x.neg());
        assert_eq!(table[2][2], SqrtQNumber::from_integer(3, 1));
    }
}
