//! Polynomials over F_q: dense low-first coefficient vectors.

use super::field::FieldDesc;
use crate::error::{Error, Result};

/// A polynomial in F_q[t]. Coefficients are field element codes, lowest
/// degree first, with no trailing zeros; the zero polynomial is the empty
/// vector and carries no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFq {
    coeffs: Vec<u64>,
}

impl PolyFq {
    pub fn zero() -> Self {
        PolyFq { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyFq { coeffs: vec![1] }
    }

    /// The monomial t.
    pub fn t(_field: &FieldDesc) -> Self {
        PolyFq { coeffs: vec![0, 1] }
    }

    pub fn constant(c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            PolyFq { coeffs: vec![c] }
        }
    }

    /// From a coefficient vector (low-first); trailing zeros are trimmed.
    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        let mut p = PolyFq { coeffs };
        p.trim();
        p
    }

    /// Monic polynomial of degree n whose lower coefficients are the base-q
    /// digits of `code` (c0 = least significant digit).
    pub fn monic_from_code(field: &FieldDesc, n: usize, mut code: u64) -> Self {
        let q = field.q();
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push(code % q);
            code /= q;
        }
        debug_assert_eq!(code, 0, "code out of range for degree");
        coeffs.push(1);
        PolyFq { coeffs }
    }

    /// Residue of degree < n from its base-q integer code, 0 <= code < q^n.
    pub fn from_code(field: &FieldDesc, mut code: u64) -> Self {
        let q = field.q();
        let mut coeffs = Vec::new();
        while code > 0 {
            coeffs.push(code % q);
            code /= q;
        }
        PolyFq { coeffs }
    }

    /// Base-q integer code of this polynomial.
    pub fn code(&self, field: &FieldDesc) -> u64 {
        let q = field.q();
        let mut code = 0u64;
        for &c in self.coeffs.iter().rev() {
            code = code * q + c;
        }
        code
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or None for the zero polynomial (which has no degree).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, erroring on zero input.
    pub fn degree_checked(&self) -> Result<usize> {
        self.degree().ok_or(Error::ZeroDegree)
    }

    pub fn is_monic(&self, _field: &FieldDesc) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// |A| = q^{deg A}; |0| = 0.
    pub fn norm_f64(&self, field: &FieldDesc) -> f64 {
        match self.degree() {
            None => 0.0,
            Some(d) => (field.q() as f64).powi(d as i32),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, field: &FieldDesc, other: &PolyFq) -> PolyFq {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(field.add(self.coeff(i), other.coeff(i)));
        }
        PolyFq::from_coeffs(out)
    }

    pub fn sub(&self, field: &FieldDesc, other: &PolyFq) -> PolyFq {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(field.sub(self.coeff(i), other.coeff(i)));
        }
        PolyFq::from_coeffs(out)
    }

    pub fn mul(&self, field: &FieldDesc, other: &PolyFq) -> PolyFq {
        if self.is_zero() || other.is_zero() {
            return PolyFq::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        PolyFq::from_coeffs(out)
    }

    pub fn scale(&self, field: &FieldDesc, c: u64) -> PolyFq {
        if c == 0 {
            return PolyFq::zero();
        }
        PolyFq::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Divide with remainder: self = q*b + r, r = 0 or deg r < deg b.
    pub fn divmod(&self, field: &FieldDesc, b: &PolyFq) -> Result<(PolyFq, PolyFq)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((PolyFq::zero(), self.clone()));
        }
        let lead_inv = field.inv(*b.coeffs.last().expect("nonzero divisor"));
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let c = field.mul(*r.last().expect("nonempty"), lead_inv);
            let shift = r.len() - 1 - db;
            q[shift] = c;
            if c != 0 {
                for (k, &bc) in b.coeffs.iter().enumerate() {
                    r[shift + k] = field.sub(r[shift + k], field.mul(c, bc));
                }
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Ok((PolyFq::from_coeffs(q), PolyFq::from_coeffs(r)))
    }

    pub fn rem(&self, field: &FieldDesc, b: &PolyFq) -> Result<PolyFq> {
        Ok(self.divmod(field, b)?.1)
    }

    /// Scale so the leading coefficient is 1.
    pub fn into_monic(self, field: &FieldDesc) -> PolyFq {
        match self.coeffs.last() {
            None | Some(&1) => self,
            Some(&lead) => {
                let inv = field.inv(lead);
                self.scale(field, inv)
            }
        }
    }

    /// self^q mod m, by repeated squaring on the exponent q.
    pub fn pow_q_mod(&self, field: &FieldDesc, m: &PolyFq) -> Result<PolyFq> {
        self.pow_mod(field, field.q(), m)
    }

    pub fn pow_mod(&self, field: &FieldDesc, mut exp: u64, m: &PolyFq) -> Result<PolyFq> {
        let mut base = self.rem(field, m)?;
        let mut acc = PolyFq::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, m)?;
            }
            base = base.mul(field, &base).rem(field, m)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Canonical text form `c0+c1*t+c2*t^2` with every coefficient from c0
    /// through the leading one. Extension-field coefficients render as
    /// `[a0,a1,...]` base-p digit lists. The zero polynomial is `0`.
    pub fn to_text(&self, field: &FieldDesc) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::with_capacity(self.coeffs.len());
        for (i, &c) in self.coeffs.iter().enumerate() {
            let cs = coeff_text(field, c);
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}*t"),
                _ => format!("{cs}*t^{i}"),
            });
        }
        parts.join("+")
    }

    /// Parse the canonical text form (tolerant of spaces, omitted zero
    /// terms, bare `t`/`t^k`, and terms in any order).
    pub fn parse(field: &FieldDesc, s: &str) -> Result<PolyFq> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if compact == "0" {
            return Ok(PolyFq::zero());
        }
        let mut coeffs: Vec<u64> = Vec::new();
        for term in split_terms(&compact) {
            let (coeff_str, power) = match term.find('t') {
                None => (term.as_str(), 0usize),
                Some(tpos) => {
                    let head = &term[..tpos];
                    let tail = &term[tpos + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        let stripped = tail
                            .strip_prefix('^')
                            .ok_or_else(|| Error::Parse(format!("bad term `{term}`")))?;
                        stripped
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
                    };
                    let head = head.strip_suffix('*').unwrap_or(head);
                    (head, power)
                }
            };
            let value = parse_coeff(field, coeff_str)?;
            if power > 4096 {
                return Err(Error::Parse(format!("exponent {power} too large")));
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] = field.add(coeffs[power], value);
        }
        Ok(PolyFq::from_coeffs(coeffs))
    }
}

fn coeff_text(field: &FieldDesc, c: u64) -> String {
    if field.e() == 1 {
        return c.to_string();
    }
    let p = field.p();
    let mut digits = Vec::with_capacity(field.e() as usize);
    let mut x = c;
    for _ in 0..field.e() {
        digits.push((x % p).to_string());
        x /= p;
    }
    format!("[{}]", digits.join(","))
}

fn parse_coeff(field: &FieldDesc, s: &str) -> Result<u64> {
    if s.is_empty() {
        // bare `t` or `t^k`
        return Ok(1);
    }
    if s == "-" {
        return Ok(field.p() - 1);
    }
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated `[` in `{s}`")))?;
        let p = field.p();
        let mut value = 0u64;
        let mut mult = 1u64;
        let mut count = 0u32;
        for part in inner.split(',') {
            let d: i64 =
                part.parse().map_err(|_| Error::Parse(format!("bad digit `{part}`")))?;
            let d = d.rem_euclid(p as i64) as u64;
            value += d * mult;
            mult *= p;
            count += 1;
        }
        if count > field.e() {
            return Err(Error::Parse(format!("too many digits in `{s}`")));
        }
        return Ok(value);
    }
    let v: i64 = s.parse().map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
    Ok(v.rem_euclid(field.p() as i64) as u64 % field.q())
}

/// Split on `+` and leading `-`, keeping the sign with the term.
fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' if depth == 0 && !cur.is_empty() => {
                out.push(std::mem::take(&mut cur));
            }
            '-' if depth == 0 && !cur.is_empty() => {
                out.push(std::mem::take(&mut cur));
                cur.push('-');
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}
