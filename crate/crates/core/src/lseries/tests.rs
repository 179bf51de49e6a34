use super::*;
use crate::characters::CharGroup;
use crate::ffpoly::{field_make, first_prime, PolyFq};

fn group(p: u64, modulus: &str) -> CharGroup {
    let field = field_make(p, 1).unwrap();
    let q_poly = PolyFq::parse(&field, modulus).unwrap();
    CharGroup::build(&field, &q_poly).unwrap()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

#[test]
fn histogram_examples() {
    let g = group(3, "1+t^2");
    let c0 = dlog_histogram(&g, 0).unwrap();
    assert_eq!(c0.iter().sum::<u64>(), 1);
    assert_eq!(c0[0], 1); // only A = 1, dlog 0

    // degree 1: ones at dlog(t)=6, dlog(t+1)=1, dlog(t+2)=7
    let c1 = dlog_histogram(&g, 1).unwrap();
    assert_eq!(c1.iter().sum::<u64>(), 3);
    assert_eq!(c1[6], 1);
    assert_eq!(c1[1], 1);
    assert_eq!(c1[7], 1);

    assert!(dlog_histogram(&g, 2).is_err()); // n >= deg Q
}

#[test]
fn histogram_total_is_q_to_n() {
    let g = group(2, "1+1*t+0*t^2+0*t^3+1*t^4"); // t^4+t+1, irreducible
    for n in 0..4 {
        let c = dlog_histogram(&g, n).unwrap();
        assert_eq!(c.iter().sum::<u64>(), 2u64.pow(n as u32));
    }
}

#[test]
fn coefficients_worked_example() {
    let g = group(3, "1+t^2");
    let chi4 = g.character(4);
    let data = LSeriesData::build(&g, chi4).unwrap();
    assert!(close(data.l[0], Complex64::new(1.0, 0.0), 1e-12)); // L_0 = 1 always
    assert!(close(data.l[1], Complex64::new(-1.0, 0.0), 1e-12));
    // M telescoping: M_0 = L_0, M_1 = L_1 - q L_0, M_2 = -q L_1
    assert!(close(data.m[0], Complex64::new(1.0, 0.0), 1e-12));
    assert!(close(data.m[1], Complex64::new(-4.0, 0.0), 1e-12));
    assert!(close(data.m[2], Complex64::new(3.0, 0.0), 1e-12));
}

#[test]
fn trivial_row_and_l0_column() {
    let g = group(3, "1+2*t+t^3");
    let matrix = l_coeffs_all(&g).unwrap();
    for (n, entry) in matrix[0].iter().enumerate() {
        assert!(close(*entry, Complex64::new(3f64.powi(n as i32), 0.0), 1e-9));
    }
    for row in &matrix {
        assert!(close(row[0], Complex64::new(1.0, 0.0), 1e-10));
    }
}

#[test]
fn fast_matrix_matches_naive() {
    for (p, modulus) in [(3u64, "1+t^2"), (2, "1+t+t^3"), (5, "2+t+t^2")] {
        let g = group(p, modulus);
        let fast = l_coeffs_all(&g).unwrap();
        let naive = l_coeffs_all_naive(&g).unwrap();
        let d = g.deg_q();
        for j in 0..g.phi() as usize {
            for n in 0..d {
                let tol = 1e-9 * (g.q() as f64).powi(n as i32);
                assert!(
                    close(fast[j][n], naive[j][n], tol),
                    "q={p} j={j} n={n}: {} vs {}",
                    fast[j][n],
                    naive[j][n]
                );
            }
        }
    }
}

#[test]
fn derivative_worked_examples() {
    let g = group(3, "1+t^2");
    let data = LSeriesData::build(&g, g.character(4)).unwrap();
    let l0 = l_derivative_half(&g, &data, 0);
    assert!(close(l0, Complex64::new(1.0 - 1.0 / 3f64.sqrt(), 0.0), 1e-12));
    let l1 = l_derivative_half(&g, &data, 1);
    assert!(close(l1, Complex64::new(3f64.ln() / 3f64.sqrt(), 0.0), 1e-12));
}

#[test]
fn derivative_is_linear_in_coefficients() {
    let g = group(3, "1+2*t+t^3");
    let a = LSeriesData::build(&g, g.character(1)).unwrap();
    let b = LSeriesData::build(&g, g.character(5)).unwrap();
    let sum = LSeriesData::from_coeffs(
        &g,
        g.character(1),
        a.l.iter().zip(&b.l).map(|(x, y)| x + y).collect(),
    );
    for k in 0..4 {
        let lhs = l_derivative_half(&g, &sum, k);
        let rhs = l_derivative_half(&g, &a, k) + l_derivative_half(&g, &b, k);
        assert!(close(lhs, rhs, 1e-12 * (1.0 + lhs.norm())));
    }
}

#[test]
fn lhat_product_rule_matches_m_sum() {
    let g = group(3, "1+t^2");
    for j in [2u64, 4, 6] {
        let data = LSeriesData::build(&g, g.character(j)).unwrap();
        for k in 0..5 {
            let by_product = lhat_derivative_half(&g, &data, k).unwrap();
            let by_msum = lhat_derivative_half_msum(&g, &data, k);
            assert!(
                close(by_product, by_msum, 1e-10 * (1.0 + by_msum.norm())),
                "j={j} k={k}: {by_product} vs {by_msum}"
            );
        }
    }
}

#[test]
fn lhat_examples() {
    let g = group(3, "1+t^2");
    let data = LSeriesData::build(&g, g.character(4)).unwrap();
    let sq = 3f64.sqrt();
    // k = 0: (sqrt q - 1) L(1/2)
    let lhat0 = lhat_derivative_half(&g, &data, 0).unwrap();
    let l0 = l_derivative_half(&g, &data, 0);
    assert!(close(lhat0, l0 * (sq - 1.0), 1e-12));
    assert!(close(lhat0, Complex64::new((sq - 1.0) * (1.0 - 1.0 / sq), 0.0), 1e-12));
    // k = 1 product rule
    let lhat1 = lhat_derivative_half(&g, &data, 1).unwrap();
    let l1 = l_derivative_half(&g, &data, 1);
    assert!(close(lhat1, l1 * (sq - 1.0) + l0 * (-(3f64.ln())) * sq, 1e-12));
    // odd character rejected
    let odd = LSeriesData::build(&g, g.character(1)).unwrap();
    assert!(lhat_derivative_half(&g, &odd, 0).is_err());
}

#[test]
fn root_numbers_unimodular_and_conjugate_symmetric() {
    for (p, modulus) in [(3u64, "1+t^2"), (2, "1+t+t^3"), (5, "2+t+t^2")] {
        let g = group(p, modulus);
        let all = build_all(&g).unwrap();
        for j in 1..g.phi() {
            let jc = (g.phi() - j) % g.phi();
            let w = root_number(&g, &all[j as usize], &all[jc as usize]).unwrap();
            assert!((w.norm() - 1.0).abs() < 1e-9, "q={p} j={j}: |W|={}", w.norm());
            let w_conj = root_number(&g, &all[jc as usize], &all[j as usize]).unwrap();
            assert!(close(w_conj, w.conj(), 1e-9), "q={p} j={j}");
        }
    }
}

#[test]
fn functional_equation_all_characters() {
    for (p, modulus) in [(3u64, "1+t^2"), (2, "1+t+t^3")] {
        let g = group(p, modulus);
        let all = build_all(&g).unwrap();
        for j in 1..g.phi() {
            let jc = (g.phi() - j) % g.phi();
            let report =
                verify_functional_equation(&g, &all[j as usize], &all[jc as usize]).unwrap();
            assert!(report.passes, "q={p} j={j} residual={}", report.max_residual);
        }
    }
}

#[test]
fn corrupted_coefficient_fails_functional_equation() {
    let g = group(3, "1+t^2");
    let all = build_all(&g).unwrap();
    let mut bad = all[1].clone();
    bad.l[1] += Complex64::new(0.25, 0.0);
    let bad = LSeriesData::from_coeffs(&g, bad.chi, bad.l);
    let jc = (g.phi() - 1) % g.phi();
    // either the pivots already disagree or the residual blows the tolerance
    match verify_functional_equation(&g, &bad, &all[jc as usize]) {
        Ok(report) => assert!(!report.passes),
        Err(Error::Internal(_)) => {}
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn reconstruction_matches_direct_derivatives() {
    for (p, modulus) in [(3u64, "1+t^2"), (2, "1+t+t^3"), (3, "1+2*t+t^3")] {
        let g = group(p, modulus);
        let all = build_all(&g).unwrap();
        for j in 1..g.phi() {
            let chi = g.character(j);
            if !g.is_even(chi) {
                continue;
            }
            for k in 0..=4 {
                let direct = l_derivative_half(&g, &all[j as usize], k);
                let rebuilt = l_from_lhat(&g, &all[j as usize], k).unwrap();
                assert!(
                    close(direct, rebuilt, 1e-8 * (1.0 + direct.norm())),
                    "q={p} j={j} k={k}: {direct} vs {rebuilt}"
                );
            }
        }
    }
}

#[test]
fn m_vector_telescoping_identity() {
    // sum_n M_n x^n = (1 - q x) sum_n L_n x^n, checked coefficientwise
    let g = group(5, "2+t+t^2");
    let all = build_all(&g).unwrap();
    let q = g.q() as f64;
    for data in &all {
        let d = data.deg_q();
        for n in 0..=d {
            let ln = if n < d { data.l[n] } else { Complex64::new(0.0, 0.0) };
            let lprev = if n == 0 { Complex64::new(0.0, 0.0) } else { data.l[n - 1] };
            assert!(close(data.m[n], ln - lprev * q, 1e-12 * (1.0 + ln.norm())));
        }
    }
}

#[test]
fn trivial_coefficient_diagnostic_settles_closed_form() {
    let field = field_make(3, 1).unwrap();
    let q2 = first_prime(&field, 2).unwrap();
    let g = CharGroup::build(&field, &q2).unwrap();
    let diag = trivial_coefficient_diagnostic(&g, 5).unwrap();
    assert!(diag.census_matches_minus_form());
    assert!(!diag.census_matches_plus_form());
}

#[test]
fn structural_truncation_at_deg_q() {
    let g = group(3, "1+t^2");
    let data = LSeriesData::build(&g, g.character(3)).unwrap();
    assert_eq!(data.l.len(), g.deg_q());
    assert_eq!(data.m.len(), g.deg_q() + 1);
}
