//! Arithmetic for F_q and F_q[t].
//!
//! Elements of F_q (q = p^e) are integer codes in `0..q`, read as base-p
//! digit vectors; for e > 1 the field is F_p[x]/(m(x)) with m the first
//! irreducible monic polynomial of degree e in ascending code order.
//! Polynomials in F_q[t] store coefficients low-degree first with no
//! trailing zeros; the zero polynomial has an empty coefficient vector and
//! no degree.

mod field;
mod poly;

pub use field::FieldDesc;
pub use poly::PolyFq;

use crate::error::{Error, Result};

/// Builds the field descriptor for F_{p^e}.
///
/// Rejects composite `p`. For e > 1 the internal modulus is chosen
/// deterministically, so equal `(p, e)` always name the same field.
pub fn field_make(p: u64, e: u32) -> Result<FieldDesc> {
    FieldDesc::new(p, e)
}

/// q^{deg Q} - 1 for a monic irreducible Q: the order of (F_q[t]/Q)^*.
pub fn euler_phi_prime(field: &FieldDesc, q_poly: &PolyFq) -> Result<u64> {
    if !q_poly.is_monic(field) || !is_irreducible(field, q_poly)? {
        return Err(Error::ReducibleModulus(q_poly.to_text(field)));
    }
    let deg = q_poly.degree().expect("irreducible implies nonzero");
    Ok(field
        .q()
        .checked_pow(deg as u32)
        .ok_or_else(|| Error::ResourceGuard("q^deg overflows u64".into()))?
        - 1)
}

/// Quotient and remainder of `a / b`; remainder is zero or of smaller degree.
pub fn poly_divmod(field: &FieldDesc, a: &PolyFq, b: &PolyFq) -> Result<(PolyFq, PolyFq)> {
    a.divmod(field, b)
}

/// Monic greatest common divisor. Errors when both inputs are zero.
pub fn poly_gcd(field: &FieldDesc, a: &PolyFq, b: &PolyFq) -> Result<PolyFq> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = x.divmod(field, &y)?;
        x = y;
        y = r;
    }
    Ok(x.into_monic(field))
}

/// Irreducibility over F_q via the derived-power test: f of degree n is
/// irreducible iff t^{q^n} == t (mod f) and gcd(t^{q^{n/l}} - t, f) = 1 for
/// every prime l | n. Agrees with [`is_irreducible_trial_division`].
pub fn is_irreducible(field: &FieldDesc, f: &PolyFq) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::ZeroDegree),
        Some(0) => return Err(Error::NotPositiveDegree(f.to_text(field))),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let t = PolyFq::t(field);
    // t^{q^n} mod f must be t
    let mut x = t.clone();
    for _ in 0..n {
        x = x.pow_q_mod(field, f)?;
    }
    if x != t {
        return Ok(false);
    }
    for l in prime_divisors(n as u64) {
        let steps = n / l as usize;
        let mut y = t.clone();
        for _ in 0..steps {
            y = y.pow_q_mod(field, f)?;
        }
        let diff = y.sub(field, &t);
        if diff.is_zero() {
            return Ok(false);
        }
        let g = poly_gcd(field, &diff, f)?;
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive reference check: trial division by every monic polynomial of
/// degree at most deg(f)/2. Desk-scale only; the tests pin the fast path
/// against this one.
pub fn is_irreducible_trial_division(field: &FieldDesc, f: &PolyFq) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::ZeroDegree),
        Some(0) => return Err(Error::NotPositiveDegree(f.to_text(field))),
        Some(n) => n,
    };
    for d in 1..=n / 2 {
        for g in enumerate_monic(field, d) {
            let (_, r) = f.divmod(field, &g)?;
            if r.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All q^n monic polynomials of degree n, in ascending code order
/// (low coefficient = least significant base-q digit).
pub fn enumerate_monic(field: &FieldDesc, n: usize) -> impl Iterator<Item = PolyFq> + '_ {
    let q = field.q();
    let count = q.checked_pow(n as u32).expect("enumeration range overflow");
    (0..count).map(move |code| PolyFq::monic_from_code(field, n, code))
}

/// Deterministic monic irreducible of degree n: seeded ChaCha candidates,
/// first irreducible wins. Same (field, n, seed) always returns the same Q.
pub fn random_prime(field: &FieldDesc, n: usize, seed: u64) -> Result<PolyFq> {
    use rand::{Rng, SeedableRng};
    if n == 0 {
        return Err(Error::NotPositiveDegree("degree 0".into()));
    }
    let q = field.q();
    let count = q
        .checked_pow(n as u32)
        .ok_or_else(|| Error::ResourceGuard("q^n overflows u64".into()))?;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed ^ (q << 16) ^ n as u64);
    loop {
        let code = rng.gen_range(0..count);
        let cand = PolyFq::monic_from_code(field, n, code);
        if is_irreducible(field, &cand)? {
            return Ok(cand);
        }
    }
}

/// First monic irreducible of degree n in ascending code order.
pub fn first_prime(field: &FieldDesc, n: usize) -> Result<PolyFq> {
    for cand in enumerate_monic(field, n) {
        if is_irreducible(field, &cand)? {
            return Ok(cand);
        }
    }
    unreachable!("monic irreducibles of every degree exist")
}

/// Distinct prime divisors of n by trial division.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
