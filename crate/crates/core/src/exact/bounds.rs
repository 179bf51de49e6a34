//! Pointwise checks of the (1 - x/m)^m exponential sandwich.

use crate::error::{Error, Result};

/// Evaluation of (1 - x/m)^m against its exponential bounds at one point.
#[derive(Debug, Clone)]
pub struct ExpBoundReport {
    pub m: u32,
    pub x: f64,
    pub lhs: f64,
    pub upper: f64,
    /// Lower bound e^{-x} e^{-4/(m^{1/3} - 2 m^{-1/3})}; only defined on the
    /// lower-bound domain.
    pub lower: Option<f64>,
    pub upper_holds: bool,
    pub lower_holds: Option<bool>,
}

/// Confirms (1 - x/m)^m <= e^{-x} for 0 <= x <= m, and for m >= 3 and
/// x <= 2 m^{1/3} also the matching lower bound. m >= 3 keeps
/// m^{1/3} - 2 m^{-1/3} positive.
pub fn exp_bound_check(m: u32, x: f64) -> Result<ExpBoundReport> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument("x must be non-negative".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let mf = m as f64;
    if x > mf {
        return Err(Error::InvalidArgument(format!(
            "upper bound only holds for x <= m (got x = {x}, m = {m})"
        )));
    }
    let lhs = (1.0 - x / mf).powi(m as i32);
    let upper = (-x).exp();
    let cube = mf.cbrt();
    let lower_domain = m >= 3 && x <= 2.0 * cube;
    let lower = if lower_domain {
        Some(upper * (-4.0 / (cube - 2.0 / cube)).exp())
    } else {
        None
    };
    Ok(ExpBoundReport {
        m,
        x,
        lhs,
        upper,
        lower,
        // tiny slack for the x = 0 equality case
        upper_holds: lhs <= upper * (1.0 + 1e-14),
        lower_holds: lower.map(|lo| lhs >= lo * (1.0 - 1e-14)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_at_zero() {
        let r = exp_bound_check(7, 0.0).unwrap();
        assert_eq!(r.lhs, 1.0);
        assert_eq!(r.upper, 1.0);
        assert!(r.upper_holds);
        assert_eq!(r.lower_holds, Some(true));
    }

    #[test]
    fn worked_points() {
        let r = exp_bound_check(10, 1.0).unwrap();
        assert!((r.lhs - 0.34867844).abs() < 1e-7);
        assert!((r.upper - (-1.0f64).exp()).abs() < 1e-12);
        assert!(r.upper_holds && r.lower_holds == Some(true));

        let r = exp_bound_check(8, 3.0).unwrap();
        assert!(r.upper_holds && r.lower_holds == Some(true));
    }

    #[test]
    fn domain_errors() {
        assert!(exp_bound_check(5, -1.0).is_err());
        assert!(exp_bound_check(5, 6.0).is_err());
        // below the lower-bound domain: report still carries the upper check
        let r = exp_bound_check(2, 1.0).unwrap();
        assert!(r.lower.is_none());
        assert!(r.upper_holds);
        // x beyond 2 m^{1/3}: lower bound not evaluated
        let r = exp_bound_check(27, 10.0).unwrap();
        assert!(r.lower.is_none());
    }
}
