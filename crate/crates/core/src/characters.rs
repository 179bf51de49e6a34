//! The multiplicative group (F_q[t]/Q)^* for prime Q and its Dirichlet
//! characters.
//!
//! Residues are indexed by their base-q integer codes. One generator is
//! fixed (the first residue, in ascending code order, of full order phi)
//! and every character is chi_j: A -> omega^{j * dlog A}, omega = e^{2 pi i/phi}.
//! With that parametrisation chi_j is even exactly when (q-1) | j.

use crate::error::{Error, Result};
use crate::ffpoly::{self, FieldDesc, PolyFq};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// Default cap on the dlog table size.
pub const DEFAULT_PHI_CAP: u64 = 20_000_000;

/// The unit group mod a prime Q with a complete discrete-log table.
/// Immutable after construction; evaluation is lock-free table lookup.
#[derive(Debug, Clone)]
pub struct CharGroup {
    field: FieldDesc,
    modulus: PolyFq,
    deg_q: usize,
    phi: u64,
    generator: PolyFq,
    /// dlog[code] = exponent of the residue with that code; u64::MAX marks
    /// the zero residue (and nothing else, since Q is prime).
    dlog: Vec<u64>,
    /// omega^m for m in 0..phi, one shared table.
    roots: Vec<Complex64>,
    /// phi / (q - 1): index of the scalar subgroup, = number of even characters.
    unit_subgroup_index: u64,
}

/// A Dirichlet character mod Q, indexed by its exponent against the fixed
/// generator. j = 0 is the trivial character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Character {
    pub j: u64,
}

impl Character {
    pub fn conjugate(&self, group: &CharGroup) -> Character {
        Character { j: (group.phi - self.j % group.phi) % group.phi }
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }
}

impl CharGroup {
    /// Builds the group for a monic irreducible Q, with the default size cap.
    pub fn build(field: &FieldDesc, modulus: &PolyFq) -> Result<CharGroup> {
        Self::build_with_cap(field, modulus, DEFAULT_PHI_CAP)
    }

    pub fn build_with_cap(field: &FieldDesc, modulus: &PolyFq, cap: u64) -> Result<CharGroup> {
        if !modulus.is_monic(field) || !ffpoly::is_irreducible(field, modulus)? {
            return Err(Error::ReducibleModulus(modulus.to_text(field)));
        }
        let deg_q = modulus.degree().expect("irreducible is nonzero");
        let q = field.q();
        let size = q
            .checked_pow(deg_q as u32)
            .ok_or_else(|| Error::ResourceGuard("q^deg Q overflows u64".into()))?;
        if size - 1 > cap {
            return Err(Error::ResourceGuard(format!(
                "phi = {} exceeds the table cap {cap}",
                size - 1
            )));
        }
        let phi = size - 1;

        // generator: first residue code whose order is phi
        let phi_prime_divisors = ffpoly::prime_divisors(phi);
        let generator = (1..size)
            .map(|code| PolyFq::from_code(field, code))
            .find(|cand| {
                !cand.is_zero()
                    && phi_prime_divisors.iter().all(|&l| {
                        let power = cand
                            .pow_mod(field, phi / l, modulus)
                            .expect("modulus nonzero");
                        !power.is_one()
                    })
            })
            .ok_or_else(|| Error::Internal("no generator found".into()))?;

        // walk powers to fill the dlog table
        let mut dlog = vec![u64::MAX; size as usize];
        let mut acc = PolyFq::one();
        for e in 0..phi {
            let code = acc.code(field);
            if dlog[code as usize] != u64::MAX {
                return Err(Error::Internal("generator order below phi".into()));
            }
            dlog[code as usize] = e;
            acc = acc.mul(field, &generator).rem(field, modulus)?;
        }
        if !acc.is_one() {
            return Err(Error::Internal("generator^phi != 1".into()));
        }

        let roots = (0..phi)
            .map(|m| Complex64::from_polar(1.0, TAU * m as f64 / phi as f64))
            .collect();

        Ok(CharGroup {
            field: field.clone(),
            modulus: modulus.clone(),
            deg_q,
            phi,
            generator,
            dlog,
            roots,
            unit_subgroup_index: phi / (q - 1),
        })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }
    pub fn modulus(&self) -> &PolyFq {
        &self.modulus
    }
    pub fn q(&self) -> u64 {
        self.field.q()
    }
    pub fn deg_q(&self) -> usize {
        self.deg_q
    }
    pub fn phi(&self) -> u64 {
        self.phi
    }
    pub fn generator(&self) -> &PolyFq {
        &self.generator
    }
    pub fn unit_subgroup_index(&self) -> u64 {
        self.unit_subgroup_index
    }

    pub fn character(&self, j: u64) -> Character {
        Character { j: j % self.phi }
    }

    /// All characters, trivial one first.
    pub fn characters(&self) -> impl Iterator<Item = Character> {
        (0..self.phi).map(|j| Character { j })
    }

    /// Discrete log of A mod Q, or None when Q | A.
    pub fn dlog(&self, a: &PolyFq) -> Option<u64> {
        let r = if a.degree().map_or(true, |d| d < self.deg_q) {
            a.code(&self.field)
        } else {
            a.rem(&self.field, &self.modulus).expect("modulus nonzero").code(&self.field)
        };
        match self.dlog[r as usize] {
            u64::MAX => None,
            e => Some(e),
        }
    }

    /// Discrete log by residue code (deg < deg Q), zero residue -> None.
    pub fn dlog_by_code(&self, code: u64) -> Option<u64> {
        match self.dlog[code as usize] {
            u64::MAX => None,
            e => Some(e),
        }
    }

    /// omega^m from the shared table, m arbitrary (reduced mod phi).
    pub fn root_of_unity(&self, m: u64) -> Complex64 {
        self.roots[(m % self.phi) as usize]
    }

    /// chi_j(A): omega^{j dlog A} for (A, Q) = 1, exactly 0 on multiples of Q.
    pub fn char_eval(&self, chi: Character, a: &PolyFq) -> Complex64 {
        match self.dlog(a) {
            None => Complex64::new(0.0, 0.0),
            Some(d) => self.eval_dlog(chi, d),
        }
    }

    /// chi_j at a residue of known dlog.
    #[inline]
    pub fn eval_dlog(&self, chi: Character, dlog: u64) -> Complex64 {
        self.roots[(chi.j % self.phi).wrapping_mul(dlog % self.phi) as usize % self.phi as usize]
    }

    /// chi_j(a) for a scalar a in F_q^* embeds through its residue code.
    pub fn char_eval_scalar(&self, chi: Character, a: u64) -> Complex64 {
        self.char_eval(chi, &PolyFq::constant(a))
    }

    /// Even characters are trivial on F_q^*; with a fixed generator that is
    /// the divisibility test (q - 1) | j.
    pub fn is_even(&self, chi: Character) -> bool {
        chi.j % (self.q() - 1) == 0
    }

    /// JSON-ready summary: {q, Q, phi, generator, sample dlogs}.
    pub fn export_summary(&self) -> GroupSummary {
        let sample = (1..self.phi + 1)
            .take(8)
            .map(|code| SampleDlog {
                residue: PolyFq::from_code(&self.field, code).to_text(&self.field),
                dlog: self.dlog[code as usize],
            })
            .collect();
        GroupSummary {
            q: self.q(),
            modulus: self.modulus.to_text(&self.field),
            phi: self.phi,
            generator: self.generator.to_text(&self.field),
            sample_dlogs: sample,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleDlog {
    pub residue: String,
    pub dlog: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub q: u64,
    pub modulus: String,
    pub phi: u64,
    pub generator: String,
    pub sample_dlogs: Vec<SampleDlog>,
}

/// Which orthogonality sum to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthoSelector {
    /// Sum over the unit group of chi(A), for a fixed character.
    OverGroup { j: u64 },
    /// Sum over all characters of chi(A), for a fixed residue code.
    OverCharacters { a_code: u64 },
    /// Sum over all characters of chi(A) conj(chi)(B).
    PairedCharacters { a_code: u64, b_code: u64 },
    /// Sum over the even characters of chi(A).
    EvenCharacters { a_code: u64 },
    /// Sum over the scalars F_q^* of chi(a), for a fixed character.
    OverScalars { j: u64 },
}

/// Result of one orthogonality evaluation: a floating sum of root-of-unity
/// terms next to the exact value obtained by dlog counting (a geometric sum
/// of roots of unity is phi exactly when the step exponent vanishes mod phi).
#[derive(Debug, Clone)]
pub struct OrthoResult {
    pub floating: Complex64,
    pub exact: i64,
}

impl OrthoResult {
    pub fn residual(&self) -> f64 {
        (self.floating - Complex64::new(self.exact as f64, 0.0)).norm()
    }
}

/// Evaluates one of the orthogonality sums both ways.
pub fn orthogonality_sum(group: &CharGroup, selector: OrthoSelector) -> Result<OrthoResult> {
    let phi = group.phi();
    let q = group.q();
    match selector {
        OrthoSelector::OverGroup { j } => {
            let j = j % phi;
            let mut s = KahanComplex::new();
            for d in 0..phi {
                s.add(group.root_of_unity(j.wrapping_mul(d % phi) % phi));
            }
            // sum_d omega^{jd} over all residues: phi iff j = 0
            let exact = if j == 0 { phi as i64 } else { 0 };
            Ok(OrthoResult { floating: s.total(), exact })
        }
        OrthoSelector::OverCharacters { a_code } => {
            let d = group
                .dlog_by_code(a_code)
                .ok_or_else(|| Error::InvalidArgument("residue is 0 mod Q".into()))?;
            let mut s = KahanComplex::new();
            for j in 0..phi {
                s.add(group.root_of_unity(j.wrapping_mul(d) % phi));
            }
            let exact = if d == 0 { phi as i64 } else { 0 };
            Ok(OrthoResult { floating: s.total(), exact })
        }
        OrthoSelector::PairedCharacters { a_code, b_code } => {
            let da = group
                .dlog_by_code(a_code)
                .ok_or_else(|| Error::InvalidArgument("residue A is 0 mod Q".into()))?;
            let db = group
                .dlog_by_code(b_code)
                .ok_or_else(|| Error::InvalidArgument("residue B is 0 mod Q".into()))?;
            let step = (da + phi - db) % phi;
            let mut s = KahanComplex::new();
            for j in 0..phi {
                s.add(group.root_of_unity(j.wrapping_mul(step) % phi));
            }
            let exact = if step == 0 { phi as i64 } else { 0 };
            Ok(OrthoResult { floating: s.total(), exact })
        }
        OrthoSelector::EvenCharacters { a_code } => {
            let d = group
                .dlog_by_code(a_code)
                .ok_or_else(|| Error::InvalidArgument("residue is 0 mod Q".into()))?;
            let count = group.unit_subgroup_index();
            let mut s = KahanComplex::new();
            let mut j = 0u64;
            while j < phi {
                s.add(group.root_of_unity(j.wrapping_mul(d) % phi));
                j += q - 1;
            }
            // phi/(q-1) iff (q-1) d = 0 mod phi, i.e. A is a nonzero scalar mod Q
            let exact = if (q - 1) * (d % phi) % phi == 0 { count as i64 } else { 0 };
            Ok(OrthoResult { floating: s.total(), exact })
        }
        OrthoSelector::OverScalars { j } => {
            let j = j % phi;
            let mut s = KahanComplex::new();
            for a in 1..q {
                s.add(group.char_eval_scalar(group.character(j), a));
            }
            // scalars form the subgroup of index phi/(q-1): the sum is q-1
            // for even chi and 0 otherwise
            let exact = if group.is_even(group.character(j)) { (q - 1) as i64 } else { 0 };
            Ok(OrthoResult { floating: s.total(), exact })
        }
    }
}

/// Compensated (Kahan) accumulator for complex sums; the moment averages
/// cancel across phi(Q)-sized families.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    sum: Complex64,
    c: Complex64,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: Complex64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> Complex64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::field_make;

    fn group(p: u64, modulus: &str) -> CharGroup {
        let field = field_make(p, 1).unwrap();
        let q_poly = PolyFq::parse(&field, modulus).unwrap();
        CharGroup::build(&field, &q_poly).unwrap()
    }

    #[test]
    fn worked_group_f2() {
        let g = group(2, "1+t+t^2");
        assert_eq!(g.phi(), 3);
        assert_eq!(g.generator(), &PolyFq::parse(g.field(), "t").unwrap());
    }

    #[test]
    fn worked_group_f3() {
        let g = group(3, "1+t^2");
        assert_eq!(g.phi(), 8);
        assert_eq!(g.generator(), &PolyFq::parse(g.field(), "1+t").unwrap());
        assert_eq!(g.dlog(&PolyFq::constant(2)), Some(4));
        assert_eq!(g.dlog(&PolyFq::parse(g.field(), "t").unwrap()), Some(6));
        assert_eq!(g.dlog(&PolyFq::parse(g.field(), "2+t").unwrap()), Some(7));
        assert_eq!(g.unit_subgroup_index(), 4);
        // scalar subgroup = dlogs divisible by phi/(q-1) = 4
        for a in 1..3u64 {
            let d = g.dlog(&PolyFq::constant(a)).unwrap();
            assert_eq!(d % 4, 0);
        }
    }

    #[test]
    fn trivial_group_f3_t() {
        let g = group(3, "t");
        assert_eq!(g.phi(), 2);
        assert_eq!(g.generator(), &PolyFq::constant(2));
    }

    #[test]
    fn dlog_is_bijection() {
        let g = group(3, "1+t^2");
        let mut seen = vec![false; g.phi() as usize];
        for code in 1..=g.phi() {
            let d = g.dlog_by_code(code).unwrap();
            assert!(!seen[d as usize]);
            seen[d as usize] = true;
        }
        assert!(seen.iter().all(|&b| b));
        assert_eq!(g.dlog_by_code(1), Some(0)); // dlog(1) = 0
    }

    #[test]
    fn char_eval_examples() {
        let g = group(3, "1+t^2");
        let t = PolyFq::parse(g.field(), "t").unwrap();
        let t1 = PolyFq::parse(g.field(), "1+t").unwrap();
        let chi4 = g.character(4);
        assert!((g.char_eval(chi4, &t) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((g.char_eval(chi4, &t1) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        // chi_0 is 1 on units
        let chi0 = g.character(0);
        for code in 1..9 {
            let a = PolyFq::from_code(g.field(), code);
            assert!((g.char_eval(chi0, &a) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        // zero on multiples of Q
        let qb = g.modulus().mul(g.field(), &t1);
        for j in 0..8 {
            assert_eq!(g.char_eval(g.character(j), &qb), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn evenness_and_count() {
        let g2 = group(2, "1+t+t^2");
        assert!(g2.characters().all(|chi| g2.is_even(chi))); // q = 2: all even
        let g3 = group(3, "1+t^2");
        let even: Vec<u64> =
            g3.characters().filter(|&chi| g3.is_even(chi)).map(|chi| chi.j).collect();
        assert_eq!(even, vec![0, 2, 4, 6]);
        assert_eq!(even.len() as u64, g3.phi() / (g3.q() - 1));
        assert!(g3.is_even(g3.character(0)));
    }

    #[test]
    fn multiplicativity_random_pairs() {
        use rand::{Rng, SeedableRng};
        let g = group(3, "1+2*t+t^3");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let size = 27u64;
        for _ in 0..200 {
            let a = PolyFq::from_code(g.field(), rng.gen_range(0..size * 3));
            let b = PolyFq::from_code(g.field(), rng.gen_range(0..size * 3));
            let j = rng.gen_range(0..g.phi());
            let chi = g.character(j);
            let ab = a.mul(g.field(), &b);
            let lhs = g.char_eval(chi, &ab);
            let rhs = g.char_eval(chi, &a) * g.char_eval(chi, &b);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugate_character_conjugates_values() {
        let g = group(3, "1+t^2");
        for j in 0..g.phi() {
            let chi = g.character(j);
            let bar = chi.conjugate(&g);
            for code in 1..9u64 {
                let a = PolyFq::from_code(g.field(), code);
                let lhs = g.char_eval(bar, &a);
                let rhs = g.char_eval(chi, &a).conj();
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let g = group(3, "1+t^2");
        // sum over group of chi(A) = 0 for nontrivial chi
        for j in 1..g.phi() {
            let r = orthogonality_sum(&g, OrthoSelector::OverGroup { j }).unwrap();
            assert_eq!(r.exact, 0);
            assert!(r.residual() < 1e-10 * g.phi() as f64);
        }
        let r = orthogonality_sum(&g, OrthoSelector::OverGroup { j: 0 }).unwrap();
        assert_eq!(r.exact, 8);

        // paired: phi(Q) iff A = B mod Q
        let r = orthogonality_sum(&g, OrthoSelector::PairedCharacters { a_code: 5, b_code: 5 })
            .unwrap();
        assert_eq!(r.exact, 8);
        let r = orthogonality_sum(&g, OrthoSelector::PairedCharacters { a_code: 5, b_code: 4 })
            .unwrap();
        assert_eq!(r.exact, 0);
        assert!(r.residual() < 1e-10 * 8.0);

        // odd chi over scalars: omega^0 + omega^4 = 1 + (-1) = 0 for j = 1
        let r = orthogonality_sum(&g, OrthoSelector::OverScalars { j: 1 }).unwrap();
        assert_eq!(r.exact, 0);
        assert!(r.residual() < 1e-12);
        let r = orthogonality_sum(&g, OrthoSelector::OverScalars { j: 2 }).unwrap();
        assert_eq!(r.exact, 2);

        // even-character sum picks out scalar residues
        let r = orthogonality_sum(&g, OrthoSelector::EvenCharacters { a_code: 2 }).unwrap();
        assert_eq!(r.exact, 4); // residue 2 is a scalar
        let r = orthogonality_sum(&g, OrthoSelector::EvenCharacters { a_code: 3 }).unwrap();
        assert_eq!(r.exact, 0); // residue t is not
    }

    #[test]
    fn reducible_modulus_rejected() {
        let field = field_make(3, 1).unwrap();
        let bad = PolyFq::parse(&field, "2+t^2").unwrap(); // (t-1)(t+1)
        assert!(matches!(
            CharGroup::build(&field, &bad),
            Err(Error::ReducibleModulus(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let field = field_make(3, 1).unwrap();
        let q5 = crate::ffpoly::first_prime(&field, 5).unwrap();
        assert!(matches!(
            CharGroup::build_with_cap(&field, &q5, 100),
            Err(Error::ResourceGuard(_))
        ));
    }
}
