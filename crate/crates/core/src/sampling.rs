//! Seeded random inputs for property checks.

use std::sync::Arc;

use num_rational::Rational64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::algebra::poly::{Alphabet, Monomial, Poly};
use crate::coeff::CycScalar;
use crate::cocycle::DeformMatrix;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for a named check, so adding checks does not shift others.
pub fn rng_for(seed: u64, name: &str) -> SampleRng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn int_vector(rng: &mut SampleRng, len: usize, bound: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}

const DENOMS: [i64; 6] = [1, 2, 3, 4, 5, 6];

pub fn rational(rng: &mut SampleRng, bound: i64) -> Rational64 {
    let d = DENOMS[rng.gen_range(0..DENOMS.len())];
    Rational64::new(rng.gen_range(-bound * d..=bound * d), d)
}

/// Random skew matrix with small-denominator entries.
pub fn theta(rng: &mut SampleRng, l: usize) -> DeformMatrix {
    let mut e = vec![vec![Rational64::from_integer(0); l]; l];
    for j in 0..l {
        for k in (j + 1)..l {
            let d = DENOMS[rng.gen_range(0..DENOMS.len())];
            let v = Rational64::new(rng.gen_range(-d..=d), d);
            e[j][k] = v;
            e[k][j] = -v;
        }
    }
    DeformMatrix::new(e).expect("skew by construction")
}

/// Random skew matrix whose entries have denominators in `1..=max_den`.
pub fn theta_up_to(rng: &mut SampleRng, l: usize, max_den: i64) -> DeformMatrix {
    let mut e = vec![vec![Rational64::from_integer(0); l]; l];
    for j in 0..l {
        for k in (j + 1)..l {
            let d = rng.gen_range(1..=max_den);
            let v = Rational64::new(rng.gen_range(-d..=d), d);
            e[j][k] = v;
            e[k][j] = -v;
        }
    }
    DeformMatrix::new(e).expect("skew by construction")
}

/// Nonzero scalar `c·e^{2πi a}` with small rational `c` and angle `a`.
pub fn scalar(rng: &mut SampleRng) -> CycScalar {
    let mut c = rational(rng, 3);
    if c == Rational64::from_integer(0) {
        c = Rational64::from_integer(1);
    }
    let d = DENOMS[rng.gen_range(0..DENOMS.len())] * 2;
    let a = Rational64::new(rng.gen_range(0..d), d);
    CycScalar::phase(a) * CycScalar::from_ratio(*c.numer(), *c.denom())
}

/// Random monomial of total degree at most `max_degree`.
pub fn monomial(rng: &mut SampleRng, alphabet: &Alphabet, max_degree: u32) -> Monomial {
    let n = alphabet.len();
    let mut e = vec![0i32; n];
    if n == 0 {
        return Monomial(e);
    }
    let deg = rng.gen_range(0..=max_degree);
    for _ in 0..deg {
        let i = rng.gen_range(0..n);
        if alphabet.is_laurent() && rng.gen_bool(0.5) {
            e[i] -= 1;
        } else {
            e[i] += 1;
        }
    }
    Monomial(e)
}

pub fn poly(rng: &mut SampleRng, alphabet: &Arc<Alphabet>, max_degree: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(alphabet);
    let k = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..k {
        let m = monomial(rng, alphabet, max_degree);
        let c = scalar(rng);
        p.add_term(m, c);
    }
    p
}

/// Every monomial of total degree at most `max_degree` (for Laurent alphabets,
/// `Σ|e_i| ≤ max_degree`).
pub fn all_monomials(alphabet: &Alphabet, max_degree: u32) -> Vec<Monomial> {
    let n = alphabet.len();
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(i: usize, left: u32, laurent: bool, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        let lo = if laurent { -(left as i32) } else { 0 };
        for e in lo..=(left as i32) {
            cur[i] = e;
            rec(i + 1, left - e.unsigned_abs(), laurent, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, max_degree, alphabet.is_laurent(), &mut cur, &mut out);
    out.sort_by_key(|m| m.total_degree());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::torus::torus_alphabet;

    #[test]
    fn monomial_counts() {
        let a = torus_alphabet(2);
        // |e1| + |e2| <= 2 has 13 points
        assert_eq!(all_monomials(&a, 2).len(), 13);
        let s = crate::algebra::sphere::sphere_alphabet(2);
        // C(5 + 2, 2) = 21
        assert_eq!(all_monomials(&s, 2).len(), 21);
    }

    #[test]
    fn seeded_streams_repeat() {
        let a = rng_for(7, "x").gen::<u64>();
        let b = rng_for(7, "x").gen::<u64>();
        let c = rng_for(7, "y").gen::<u64>();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
