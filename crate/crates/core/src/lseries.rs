//! L-function coefficient vectors and central-point derivatives.
//!
//! For nontrivial chi mod Q the L-function is the polynomial
//! sum_{n < deg Q} L_n(chi) x^n in x = q^{-s}, L_n(chi) = sum_{deg A = n} chi(A).
//! Everything here works off those vectors: derivatives at s = 1/2, the
//! twisted coefficients M_n = L_n - q L_{n-1}, the completed function
//! (q^{1-s} - 1) L(s, chi) for even characters, root numbers, and the
//! functional-equation residuals.

use crate::characters::{CharGroup, Character, KahanComplex};
use crate::error::{Error, Result};
use crate::exact::{inv_sqrt_q_minus_one, p_ki_values};
use crate::ffpoly::enumerate_monic;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

/// Default pivot threshold for root-number extraction.
const PIVOT_THRESHOLD: f64 = 1e-8;
/// Allowed spread between root numbers read off different pivots.
const PIVOT_CONSISTENCY: f64 = 1e-8;

/// Coefficient data for one character: L_0..L_{deg Q - 1}, the derived
/// M_0..M_{deg Q}, and the lazily computed root number.
#[derive(Debug, Clone)]
pub struct LSeriesData {
    pub chi: Character,
    pub l: Vec<Complex64>,
    pub m: Vec<Complex64>,
}

/// Count of monic polynomials of each dlog class in one degree shell:
/// c_n[a] = #{A monic, deg A = n, dlog A = a}. Histogram total is q^n.
pub fn dlog_histogram(group: &CharGroup, n: usize) -> Result<Vec<u64>> {
    if n >= group.deg_q() {
        return Err(Error::InvalidArgument(format!(
            "histogram degree {n} >= deg Q = {}; those coefficients vanish",
            group.deg_q()
        )));
    }
    let mut counts = vec![0u64; group.phi() as usize];
    for a in enumerate_monic(group.field(), n) {
        let d = group.dlog(&a).expect("deg A < deg Q implies (A, Q) = 1");
        counts[d as usize] += 1;
    }
    Ok(counts)
}

/// L_n(chi_j) for one character from the histograms: sum_a c_n[a] omega^{ja}.
fn coeff_from_histogram(group: &CharGroup, chi: Character, hist: &[u64]) -> Complex64 {
    let mut s = KahanComplex::new();
    for (a, &count) in hist.iter().enumerate() {
        if count != 0 {
            s.add(group.root_of_unity(chi.j * (a as u64 % group.phi()) % group.phi())
                * count as f64);
        }
    }
    s.total()
}

impl LSeriesData {
    /// Coefficient vector for one character by histogram summation.
    pub fn build(group: &CharGroup, chi: Character) -> Result<LSeriesData> {
        let d = group.deg_q();
        let mut l = Vec::with_capacity(d);
        for n in 0..d {
            let hist = dlog_histogram(group, n)?;
            l.push(coeff_from_histogram(group, chi, &hist));
        }
        Ok(Self::from_coeffs(group, chi, l))
    }

    /// Wraps an existing coefficient vector, deriving the M sequence.
    pub fn from_coeffs(group: &CharGroup, chi: Character, l: Vec<Complex64>) -> LSeriesData {
        let q = group.q() as f64;
        let d = l.len();
        let mut m = Vec::with_capacity(d + 1);
        for n in 0..=d {
            let ln = if n < d { l[n] } else { Complex64::new(0.0, 0.0) };
            let prev = if n == 0 { Complex64::new(0.0, 0.0) } else { l[n - 1] };
            m.push(ln - prev * q);
        }
        LSeriesData { chi, l, m }
    }

    pub fn deg_q(&self) -> usize {
        self.l.len()
    }
}

/// Full coefficient matrix {L_n(chi_j)}: for each degree shell the length-phi
/// DFT of its dlog histogram (rustfft handles arbitrary phi via Bluestein).
/// Row index j, column index n.
pub fn l_coeffs_all(group: &CharGroup) -> Result<Vec<Vec<Complex64>>> {
    let phi = group.phi() as usize;
    let d = group.deg_q();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(phi);
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); d]; phi];
    for n in 0..d {
        let hist = dlog_histogram(group, n)?;
        let mut buf: Vec<Complex64> =
            hist.iter().map(|&c| Complex64::new(c as f64, 0.0)).collect();
        fft.process(&mut buf);
        // forward FFT computes sum_a c[a] e^{-2 pi i j a / phi}; we need the
        // +i kernel, so conjugate (histogram is real)
        for (j, row) in matrix.iter_mut().enumerate() {
            row[n] = buf[j].conj();
        }
    }
    Ok(matrix)
}

/// Naive per-character coefficient matrix: direct sums over monic A. The
/// reference path the fast DFT is pinned against.
pub fn l_coeffs_all_naive(group: &CharGroup) -> Result<Vec<Vec<Complex64>>> {
    let phi = group.phi();
    let d = group.deg_q();
    // dlogs per degree shell, enumerated once
    let mut shell_dlogs: Vec<Vec<u64>> = Vec::with_capacity(d);
    for n in 0..d {
        let mut v = Vec::new();
        for a in enumerate_monic(group.field(), n) {
            v.push(group.dlog(&a).expect("coprime below deg Q"));
        }
        shell_dlogs.push(v);
    }
    Ok((0..phi)
        .into_par_iter()
        .map(|j| {
            let chi = group.character(j);
            shell_dlogs
                .iter()
                .map(|dlogs| {
                    let mut s = KahanComplex::new();
                    for &dl in dlogs {
                        s.add(group.eval_dlog(chi, dl));
                    }
                    s.total()
                })
                .collect()
        })
        .collect())
}

/// All LSeriesData from the fast coefficient matrix, in parallel over j.
pub fn build_all(group: &CharGroup) -> Result<Vec<LSeriesData>> {
    let matrix = l_coeffs_all(group)?;
    Ok(matrix
        .into_par_iter()
        .enumerate()
        .map(|(j, row)| LSeriesData::from_coeffs(group, group.character(j as u64), row))
        .collect())
}

/// n^k with the 0^0 = 1 convention the k = 0 case needs.
#[inline]
fn power_weight(n: usize, k: u32) -> f64 {
    if k == 0 {
        1.0
    } else {
        (n as f64).powi(k as i32)
    }
}

/// Precomputed q^{n/2}: even entries are exact integer powers.
pub(crate) fn sqrt_q_powers(q: u64, up_to: usize) -> Vec<f64> {
    let sq = (q as f64).sqrt();
    (0..=up_to)
        .map(|n| {
            let half = (q as f64).powi((n / 2) as i32);
            if n % 2 == 0 {
                half
            } else {
                half * sq
            }
        })
        .collect()
}

/// L^{(k)}(1/2, chi) = (-log q)^k sum_n n^k q^{-n/2} L_n(chi).
pub fn l_derivative_half(group: &CharGroup, data: &LSeriesData, k: u32) -> Complex64 {
    let q = group.q();
    let pow = sqrt_q_powers(q, data.deg_q());
    let mut s = KahanComplex::new();
    for (n, ln) in data.l.iter().enumerate() {
        s.add(ln * (power_weight(n, k) / pow[n]));
    }
    let sign = (-(q as f64).ln()).powi(k as i32);
    s.total() * sign
}

/// Derivatives of the completed function (q^{1-s} - 1) L(s, chi) at 1/2 for
/// even nontrivial chi, via the product rule on the stored L-derivatives:
/// (sqrt q - 1) L^{(k)} + sqrt q sum_{i<k} C(k,i) (-log q)^{k-i} L^{(i)}.
pub fn lhat_derivative_half(group: &CharGroup, data: &LSeriesData, k: u32) -> Result<Complex64> {
    if data.chi.is_trivial() || !group.is_even(data.chi) {
        return Err(Error::InvalidArgument(
            "completed function is defined for even nontrivial characters".into(),
        ));
    }
    Ok(lhat_derivative_half_unchecked(group, data, k))
}

fn lhat_derivative_half_unchecked(group: &CharGroup, data: &LSeriesData, k: u32) -> Complex64 {
    let q = group.q() as f64;
    let sq = q.sqrt();
    let neg_log = -q.ln();
    let mut total = l_derivative_half(group, data, k) * (sq - 1.0);
    let mut binom = 1.0f64;
    // C(k, i) built up incrementally from i = 0
    for i in 0..k {
        if i > 0 {
            binom = binom * (k - i + 1) as f64 / i as f64;
        }
        total += l_derivative_half(group, data, i) * binom * neg_log.powi((k - i) as i32) * sq;
    }
    total
}

/// M-expansion route to the same value: -(-log q)^k sum n^k M_n q^{-n/2}.
/// Used as an internal cross-check of the product rule.
pub fn lhat_derivative_half_msum(group: &CharGroup, data: &LSeriesData, k: u32) -> Complex64 {
    let q = group.q();
    let pow = sqrt_q_powers(q, data.deg_q() + 1);
    let mut s = KahanComplex::new();
    for (n, mn) in data.m.iter().enumerate() {
        s.add(mn * (power_weight(n, k) / pow[n]));
    }
    -s.total() * (-(q as f64).ln()).powi(k as i32)
}

/// Root number from the coefficient relations, with pivot consistency:
/// odd chi:  W = L_n(chi) q^{(degQ-1)/2 - n} / L_{degQ-1-n}(conj chi);
/// even chi: W = -M_n(chi) q^{degQ/2 - n} / M_{degQ-n}(conj chi).
pub fn root_number(
    group: &CharGroup,
    data: &LSeriesData,
    data_conj: &LSeriesData,
) -> Result<Complex64> {
    if data.chi.is_trivial() {
        return Err(Error::InvalidArgument("trivial character has no root number".into()));
    }
    let d = data.deg_q();
    let q = group.q() as f64;
    let mut pivot: Option<Complex64> = None;
    if group.is_even(data.chi) {
        for n in 0..=d {
            let denom = data_conj.m[d - n];
            if denom.norm() > PIVOT_THRESHOLD {
                let w = -data.m[n] * q.powf(d as f64 / 2.0 - n as f64) / denom;
                match pivot {
                    None => pivot = Some(w),
                    Some(prev) => {
                        if (prev - w).norm() > PIVOT_CONSISTENCY {
                            return Err(Error::Internal(format!(
                                "root-number pivots disagree: {prev} vs {w}"
                            )));
                        }
                    }
                }
            }
        }
    } else {
        for n in 0..d {
            let denom = data_conj.l[d - 1 - n];
            if denom.norm() > PIVOT_THRESHOLD {
                let w = data.l[n] * q.powf((d as f64 - 1.0) / 2.0 - n as f64) / denom;
                match pivot {
                    None => pivot = Some(w),
                    Some(prev) => {
                        if (prev - w).norm() > PIVOT_CONSISTENCY {
                            return Err(Error::Internal(format!(
                                "root-number pivots disagree: {prev} vs {w}"
                            )));
                        }
                    }
                }
            }
        }
    }
    pivot.ok_or_else(|| Error::Internal("no admissible root-number pivot".into()))
}

/// Functional-equation report for one nontrivial character.
#[derive(Debug, Clone)]
pub struct FeReport {
    pub j: u64,
    pub even: bool,
    pub root_number: Complex64,
    /// max_n of the coefficient-relation residual.
    pub max_residual: f64,
    /// Pass threshold 1e-8 q^{degQ/2} (coefficients grow like q^{n/2}).
    pub tolerance: f64,
    pub passes: bool,
}

/// Checks the coefficient form of the functional equation at every index.
pub fn verify_functional_equation(
    group: &CharGroup,
    data: &LSeriesData,
    data_conj: &LSeriesData,
) -> Result<FeReport> {
    let w = root_number(group, data, data_conj)?;
    let d = data.deg_q();
    let q = group.q() as f64;
    let mut max_residual = 0.0f64;
    if group.is_even(data.chi) {
        for n in 0..=d {
            let res =
                (data.m[n] + w * q.powf(n as f64 - d as f64 / 2.0) * data_conj.m[d - n]).norm();
            max_residual = max_residual.max(res);
        }
    } else {
        for n in 0..d {
            let res = (data.l[n]
                - w * q.powf(n as f64 - (d as f64 - 1.0) / 2.0) * data_conj.l[d - 1 - n])
                .norm();
            max_residual = max_residual.max(res);
        }
    }
    let tolerance = 1e-8 * q.powf(d as f64 / 2.0);
    Ok(FeReport {
        j: data.chi.j,
        even: group.is_even(data.chi),
        root_number: w,
        max_residual,
        tolerance,
        passes: max_residual < tolerance,
    })
}

/// Rebuilds L^{(k)}(1/2, chi) for even nontrivial chi from the completed
/// function: (1/(sqrt q - 1)) sum_{i<=k} (-log q)^{k-i} p_{k,i} Lhat^{(i)}(1/2).
pub fn l_from_lhat(group: &CharGroup, data: &LSeriesData, k: u32) -> Result<Complex64> {
    if data.chi.is_trivial() || !group.is_even(data.chi) {
        return Err(Error::InvalidArgument(
            "reconstruction applies to even nontrivial characters".into(),
        ));
    }
    let q = group.q();
    let table = p_ki_values(q, k);
    let neg_log = -(q as f64).ln();
    let inv = inv_sqrt_q_minus_one(q);
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..=k {
        let lh = lhat_derivative_half_unchecked(group, data, i);
        total += lh * table[k as usize][i as usize].to_f64() * neg_log.powi((k - i) as i32);
    }
    Ok(total * inv.to_f64())
}

/// Trivial-character coefficient diagnostic: the census of monic A coprime
/// to Q against two candidate closed forms for (1 - x^{deg Q}) vs
/// (1 + x^{deg Q}) times the zeta coefficients q^n. The census settles it.
#[derive(Debug, Clone)]
pub struct TrivialCoeffDiagnostic {
    /// #\{A monic, deg A = n, (A, Q) = 1\} for n = 0..=cutoff.
    pub census: Vec<u64>,
    /// Coefficients of (1 - |Q|^{-s}) zeta_A(s): q^n - q^{n - deg Q}.
    pub zeta_minus_form: Vec<i64>,
    /// Coefficients of (1 + |Q|^{-s}) zeta_A(s): q^n + q^{n - deg Q}.
    pub zeta_plus_form: Vec<i64>,
}

impl TrivialCoeffDiagnostic {
    pub fn census_matches_minus_form(&self) -> bool {
        self.census.iter().zip(&self.zeta_minus_form).all(|(&c, &m)| c as i64 == m)
    }

    pub fn census_matches_plus_form(&self) -> bool {
        self.census.iter().zip(&self.zeta_plus_form).all(|(&c, &m)| c as i64 == m)
    }
}

/// Counts trivial-character coefficients directly and compares the closed
/// forms; `cutoff` shells beyond deg Q are enumerated brute force.
pub fn trivial_coefficient_diagnostic(
    group: &CharGroup,
    cutoff: usize,
) -> Result<TrivialCoeffDiagnostic> {
    let q = group.q();
    let d = group.deg_q();
    if q.checked_pow(cutoff as u32).is_none() || q.pow(cutoff as u32) > 4_000_000 {
        return Err(Error::ResourceGuard("trivial-coefficient cutoff too large".into()));
    }
    let mut census = Vec::with_capacity(cutoff + 1);
    for n in 0..=cutoff {
        let mut count = 0u64;
        for a in enumerate_monic(group.field(), n) {
            if !a.rem(group.field(), group.modulus())?.is_zero() {
                count += 1;
            }
        }
        census.push(count);
    }
    let power = |n: usize| q.pow(n as u32) as i64;
    let zeta_minus_form =
        (0..=cutoff).map(|n| power(n) - if n >= d { power(n - d) } else { 0 }).collect();
    let zeta_plus_form =
        (0..=cutoff).map(|n| power(n) + if n >= d { power(n - d) } else { 0 }).collect();
    Ok(TrivialCoeffDiagnostic { census, zeta_minus_form, zeta_plus_form })
}

#[cfg(test)]
mod tests;
