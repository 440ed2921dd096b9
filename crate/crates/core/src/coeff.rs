//! Exact scalars in cyclotomic fields.
//!
//! Every phase that shows up in a twisted product is `e^{2πiq}` for a rational
//! `q`, so all coefficients live in some `Q(ζ_n)`. A [`CycScalar`] stores a
//! finite map from reduced angles to rational coefficients. Single-term values
//! (pure phases times a rational) are kept as they are; anything with two or
//! more terms is reduced modulo the cyclotomic polynomial `Φ_n`, where `n` is
//! the common denominator of its angles. With that invariant a scalar is zero
//! iff its term map is empty, and equality is decided by subtraction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rational number of turns, reduced into `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalAngle(Rational64);

impl RationalAngle {
    pub fn new(turns: Rational64) -> Self {
        let floor = turns.floor();
        RationalAngle(turns - floor)
    }

    pub fn zero() -> Self {
        RationalAngle(Rational64::zero())
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Add for RationalAngle {
    type Output = RationalAngle;
    fn add(self, rhs: RationalAngle) -> RationalAngle {
        RationalAngle::new(self.0 + rhs.0)
    }
}

impl Neg for RationalAngle {
    type Output = RationalAngle;
    fn neg(self) -> RationalAngle {
        RationalAngle::new(-self.0)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Exact element of a cyclotomic field: `Σ c_q e^{2πiq}`.
#[derive(Clone, Debug, Default)]
pub struct CycScalar {
    terms: BTreeMap<RationalAngle, BigRational>,
}

fn half() -> Rational64 {
    Rational64::new(1, 2)
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar::default()
    }

    pub fn one() -> Self {
        CycScalar::from_rational(BigRational::one())
    }

    /// The imaginary unit, `e^{2πi/4}`.
    pub fn i() -> Self {
        CycScalar::phase(Rational64::new(1, 4))
    }

    pub fn from_int(n: i64) -> Self {
        CycScalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        CycScalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        CycScalar::monomial(RationalAngle::zero(), c)
    }

    /// The unit-modulus scalar `e^{2πiq}`.
    pub fn phase(q: Rational64) -> Self {
        CycScalar::monomial(RationalAngle::new(q), BigRational::one())
    }

    /// `c · e^{2πi angle}`, with angles in `[1/2, 1)` folded onto `[0, 1/2)`.
    pub fn monomial(angle: RationalAngle, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            if angle.value() >= half() {
                terms.insert(RationalAngle::new(angle.value() - half()), -c);
            } else {
                terms.insert(angle, c);
            }
        }
        CycScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == CycScalar::one()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RationalAngle, &BigRational)> {
        self.terms.iter()
    }

    /// If the value is a rational times a single root of unity, return both.
    pub fn as_monomial(&self) -> Option<(RationalAngle, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(a, c)| (*a, c))
        } else {
            None
        }
    }

    /// The rational value, if this scalar is real rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.as_monomial() {
            Some((a, c)) if a.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    /// True if this is exactly `e^{2πiq}` for some rational `q`.
    pub fn is_pure_phase(&self) -> bool {
        match self.as_monomial() {
            Some((_, c)) => c.abs().is_one(),
            None => false,
        }
    }

    /// Complex conjugate. Fixes rationals, sends `e^{2πiq}` to `e^{-2πiq}`.
    pub fn conj(&self) -> Self {
        let raw = self.terms.iter().map(|(a, c)| (-*a, c.clone()));
        CycScalar::from_raw(raw)
    }

    /// Multiplicative inverse, defined for nonzero single-term scalars only.
    pub fn inverse(&self) -> Option<Self> {
        let (a, c) = self.as_monomial()?;
        Some(CycScalar::monomial(-a, c.recip()))
    }

    /// Floating-point value, for the numeric paths and for display.
    pub fn to_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, c)| {
                let t = a.value();
                let turns = *t.numer() as f64 / *t.denom() as f64;
                let mag = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(mag, 2.0 * std::f64::consts::PI * turns)
            })
            .sum()
    }

    /// Builds a scalar from unordered `(angle, coefficient)` pairs and restores
    /// the storage invariant.
    fn from_raw<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (RationalAngle, BigRational)>,
    {
        let mut merged: BTreeMap<RationalAngle, BigRational> = BTreeMap::new();
        for (a, c) in raw {
            // Fold onto [0, 1/2) first so that c·ζ and −c·(−ζ) merge.
            let (a, c) = if a.value() >= half() {
                (RationalAngle::new(a.value() - half()), -c)
            } else {
                (a, c)
            };
            *merged.entry(a).or_insert_with(BigRational::zero) += c;
        }
        merged.retain(|_, c| !c.is_zero());
        if merged.len() <= 1 {
            return CycScalar { terms: merged };
        }
        reduce(merged)
    }
}

/// Reduces a multi-term map modulo `Φ_n` with `n` the lcm of its angle
/// denominators.
fn reduce(terms: BTreeMap<RationalAngle, BigRational>) -> CycScalar {
    let n = terms.keys().fold(1i64, |acc, a| acc.lcm(&a.denom()));
    let n_us = n as usize;
    let mut dense = vec![BigRational::zero(); n_us];
    for (a, c) in terms {
        let v = a.value();
        let k = (*v.numer() * (n / *v.denom())) as usize;
        dense[k] += c;
    }
    let phi = cyclotomic_poly(n as u64);
    let deg = phi.len() - 1;
    for top in (deg..n_us).rev() {
        if dense[top].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut dense[top], BigRational::zero());
        // x^top = x^{top-deg} (x^deg - Φ_n(x)) since Φ_n is monic.
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                dense[top - deg + j] -= &c * BigRational::from_integer(BigInt::from(pj));
            }
        }
    }
    let mut out = BTreeMap::new();
    for (k, c) in dense.into_iter().enumerate() {
        if !c.is_zero() {
            out.insert(RationalAngle::new(Rational64::new(k as i64, n)), c);
        }
    }
    if out.len() == 1 {
        let (a, c) = out.into_iter().next().unwrap();
        return CycScalar::monomial(a, c);
    }
    CycScalar { terms: out }
}

fn poly_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d != 0 {
            continue;
        }
        let div = cyclotomic_poly(d);
        num = exact_div_monic(&num, &div);
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.terms == other.terms {
            return true;
        }
        // Single terms: c·ζ^a = d·ζ^b forces ζ^{a-b} = ±1, and angles are
        // already folded onto [0, 1/2).
        if self.terms.len() == 1 && other.terms.len() == 1 {
            return false;
        }
        (self - other).is_zero()
    }
}

impl Eq for CycScalar {}

impl Add<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        CycScalar::from_raw(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(a, c)| (*a, c.clone())),
        )
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        &self + &rhs
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        *self = &*self + rhs;
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            terms: self.terms.iter().map(|(a, c)| (*a, -c)).collect(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl Sub<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self + &(-rhs)
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        &self - &rhs
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        *self = &*self - rhs;
    }
}

impl Mul<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        if self.is_zero() || rhs.is_zero() {
            return CycScalar::zero();
        }
        if let (Some((a, c)), Some((b, d))) = (self.as_monomial(), rhs.as_monomial()) {
            return CycScalar::monomial(a + b, c * d);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                raw.push((*a + *b, c * d));
            }
        }
        CycScalar::from_raw(raw)
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        &self * &rhs
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for CycScalar {
    fn sum<I: Iterator<Item = CycScalar>>(iter: I) -> Self {
        iter.fold(CycScalar::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a.is_zero() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "e({})", a)?;
            } else {
                write!(f, "{}·e({})", c, a)?;
            }
        }
        Ok(())
    }
}

/// Wire record: `(angle_num, angle_den, re_num, re_den, im_num, im_den)`.
type WireTerm = (i64, i64, i64, i64, i64, i64);

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut out: Vec<WireTerm> = Vec::with_capacity(self.terms.len());
        for (a, c) in &self.terms {
            let v = a.value();
            let re_num = c
                .numer()
                .to_i64()
                .ok_or_else(|| S::Error::custom("coefficient numerator exceeds i64"))?;
            let re_den = c
                .denom()
                .to_i64()
                .ok_or_else(|| S::Error::custom("coefficient denominator exceeds i64"))?;
            out.push((*v.numer(), *v.denom(), re_num, re_den, 0, 1));
        }
        out.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<WireTerm> = Vec::deserialize(deserializer)?;
        let mut acc = CycScalar::zero();
        for (an, ad, rn, rd, inum, iden) in raw {
            if ad == 0 || rd == 0 || iden == 0 {
                return Err(D::Error::custom("zero denominator in scalar record"));
            }
            let phase = CycScalar::phase(Rational64::new(an, ad));
            let coeff = CycScalar::from_ratio(rn, rd) + CycScalar::from_ratio(inum, iden) * CycScalar::i();
            acc += &(phase * coeff);
        }
        Ok(acc)
    }
}
