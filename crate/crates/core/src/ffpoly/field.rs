//! The finite field F_q, q = p^e, with element codes in 0..q.

use super::{is_prime_u64, prime_divisors};
use crate::error::{Error, Result};

/// Largest q for which the e > 1 multiplication table is materialised.
const MUL_TABLE_CAP: u64 = 1 << 12;
/// Largest q for which the inverse table is materialised; beyond this only
/// prime fields are supported and inverses use Fermat exponentiation.
const INV_TABLE_CAP: u64 = 1 << 20;

/// Descriptor for F_{p^e}. Immutable after construction; element values are
/// integer codes `0..q` whose base-p digits are the F_p coordinates.
#[derive(Debug, Clone)]
pub struct FieldDesc {
    p: u64,
    e: u32,
    q: u64,
    /// Modulus of the extension F_p[x]/(m), low-first over F_p; None for e = 1.
    modulus: Option<Vec<u64>>,
    /// Multiplication table (e > 1, q small); index a*q + b.
    mul_table: Option<Vec<u32>>,
    /// Inverse table; entry 0 unused.
    inv_table: Vec<u32>,
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}
impl Eq for FieldDesc {}

impl FieldDesc {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        if p >= 1 << 31 {
            return Err(Error::ResourceGuard("p too large for u64 field arithmetic".into()));
        }
        let q = p
            .checked_pow(e)
            .ok_or_else(|| Error::ResourceGuard("p^e overflows u64".into()))?;
        if q > MUL_TABLE_CAP && e > 1 {
            return Err(Error::ResourceGuard(format!(
                "extension field of order {q} exceeds the table cap {MUL_TABLE_CAP}"
            )));
        }
        let modulus = if e > 1 { Some(first_irreducible_mod_p(p, e)) } else { None };
        let mut field = FieldDesc { p, e, q, modulus, mul_table: None, inv_table: Vec::new() };
        if e > 1 {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in a..q {
                    let v = field.mul_slow(a, b) as u32;
                    table[(a * q + b) as usize] = v;
                    table[(b * q + a) as usize] = v;
                }
            }
            field.mul_table = Some(table);
        }
        if q <= INV_TABLE_CAP {
            let mut inv = vec![0u32; q as usize];
            for a in 1..q {
                if inv[a as usize] != 0 {
                    continue;
                }
                // find b with a*b = 1 by scanning; each pair fills two slots
                for b in a..q {
                    if field.mul(a, b) == 1 {
                        inv[a as usize] = b as u32;
                        inv[b as usize] = a as u32;
                        break;
                    }
                }
            }
            field.inv_table = inv;
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u64 {
        self.q
    }

    /// The extension modulus as an F_p coefficient vector (low-first), if e > 1.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut out, mut mult, mut x, mut y) = (0u64, 1u64, a, b);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * mult;
            x /= self.p;
            y /= self.p;
            mult *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.e == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let (mut out, mut mult, mut x) = (0u64, 1u64, a);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * mult;
            x /= self.p;
            mult *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return (a * b) % self.p;
        }
        match &self.mul_table {
            Some(t) => t[(a * self.q + b) as usize] as u64,
            None => self.mul_slow(a, b),
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0 && a < self.q);
        if !self.inv_table.is_empty() {
            return self.inv_table[a as usize] as u64;
        }
        // large prime field: Fermat
        let mut base = a as u128;
        let mut exp = self.p - 2;
        let p = self.p as u128;
        let mut acc = 1u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u64
    }

    /// Digit convolution followed by reduction mod the extension modulus.
    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let da = digits(a, self.p, self.e);
        let db = digits(b, self.p, self.e);
        let mut prod = vec![0u64; 2 * self.e as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let m = self.modulus.as_ref().expect("mul_slow requires e > 1");
        let dm = m.len() - 1;
        for i in (dm..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &mc) in m.iter().enumerate().take(dm) {
                let idx = i - dm + k;
                prod[idx] = (prod[idx] + c * (self.p - mc) % self.p) % self.p;
            }
        }
        let mut out = 0u64;
        for (i, &c) in prod.iter().enumerate().take(self.e as usize) {
            out += c * self.p.pow(i as u32);
        }
        out
    }
}

fn digits(mut a: u64, p: u64, e: u32) -> Vec<u64> {
    let mut out = vec![0u64; e as usize];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
        if a == 0 {
            break;
        }
    }
    out
}

/// First monic irreducible of degree e over F_p, ascending code order.
/// Direct trial division over F_p; only runs once per field construction.
fn first_irreducible_mod_p(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    'cand: for code in 0..p.pow(e as u32) {
        let mut f = digits(code, p, e as u32);
        f.push(1);
        for d in 1..=e / 2 {
            for gcode in 0..p.pow(d as u32) {
                let mut g = digits(gcode, p, d as u32);
                g.push(1);
                if divides_mod_p(&g, &f, p) {
                    continue 'cand;
                }
            }
        }
        return f;
    }
    unreachable!("irreducibles of every degree exist over F_p")
}

fn divides_mod_p(g: &[u64], f: &[u64], p: u64) -> bool {
    let mut r: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dg;
        if c != 0 {
            for (k, &gc) in g.iter().enumerate() {
                r[shift + k] = (r[shift + k] + c * (p - gc) % p) % p;
            }
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        if r.len() <= dg {
            break;
        }
    }
    r.is_empty()
}
