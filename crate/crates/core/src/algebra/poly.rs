use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::coeff::CycScalar;
use crate::error::{Error, Result};

/// Generator table of a graded commutative base algebra.
///
/// Each generator carries a degree in `Z^d` (a multidegree, or a bidegree
/// flattened as `(left, right)`), and an involution partner. Laurent alphabets
/// allow negative exponents and are their own partners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    label: String,
    names: Vec<String>,
    degrees: Vec<Vec<i64>>,
    grade_dim: usize,
    laurent: bool,
    conj: Option<Vec<usize>>,
}

impl Alphabet {
    /// An alphabet without an involution, for quotient coordinate rings
    /// that are only used for normal forms.
    pub fn plain(label: impl Into<String>, names: Vec<String>, degrees: Vec<Vec<i64>>) -> Result<Self> {
        let n = names.len();
        let mut a = Alphabet::new(label, names, degrees, (0..n).collect(), true)?;
        a.laurent = false;
        a.conj = None;
        Ok(a)
    }

    pub fn new(
        label: impl Into<String>,
        names: Vec<String>,
        degrees: Vec<Vec<i64>>,
        conj: Vec<usize>,
        laurent: bool,
    ) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: degrees.len(),
            });
        }
        if conj.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: conj.len(),
            });
        }
        let grade_dim = degrees.first().map_or(0, |d| d.len());
        for d in &degrees {
            if d.len() != grade_dim {
                return Err(Error::DimensionMismatch {
                    expected: grade_dim,
                    got: d.len(),
                });
            }
        }
        for (i, &c) in conj.iter().enumerate() {
            if c >= n || conj[c] != i {
                return Err(Error::GradingMismatch(format!(
                    "involution partner table is not an involution at generator {i}"
                )));
            }
            let expect: Vec<i64> = if laurent {
                degrees[i].clone()
            } else {
                degrees[i].iter().map(|x| -x).collect()
            };
            if laurent && c != i {
                return Err(Error::GradingMismatch(
                    "Laurent generators must be self-conjugate".into(),
                ));
            }
            if !laurent && degrees[c] != expect {
                return Err(Error::GradingMismatch(format!(
                    "conjugate of generator {i} must carry the negated degree"
                )));
            }
        }
        Ok(Alphabet {
            label: label.into(),
            names,
            degrees,
            grade_dim,
            laurent,
            conj: Some(conj),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn grade_dim(&self) -> usize {
        self.grade_dim
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree(&self, i: usize) -> &[i64] {
        &self.degrees[i]
    }

    pub fn has_involution(&self) -> bool {
        self.conj.is_some()
    }

    pub fn conj_of(&self, i: usize) -> usize {
        self.conj.as_ref().expect("alphabet has no involution")[i]
    }

    pub fn degree_of(&self, m: &Monomial) -> Vec<i64> {
        let mut d = vec![0i64; self.grade_dim];
        for (i, &e) in m.0.iter().enumerate() {
            if e != 0 {
                for (dk, gk) in d.iter_mut().zip(&self.degrees[i]) {
                    *dk += e as i64 * gk;
                }
            }
        }
        d
    }

    /// Involution on a base monomial (the base algebra is commutative).
    pub fn conj_monomial(&self, m: &Monomial) -> Monomial {
        if self.laurent {
            return Monomial(m.0.iter().map(|e| -e).collect());
        }
        let conj = self.conj.as_ref().expect("alphabet has no involution");
        let mut out = vec![0i32; self.len()];
        for (i, &e) in m.0.iter().enumerate() {
            out[conj[i]] += e;
        }
        Monomial(out)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }
}

/// Exponent vector over an alphabet, in the fixed generator order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    /// Total degree `Σ |e_i|`.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }
}

/// Finite linear combination of base monomials with exact coefficients.
///
/// Zero coefficients are never stored, so structural emptiness is the zero
/// test and equality is termwise scalar equality.
#[derive(Clone, Debug)]
pub struct Poly {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Monomial, CycScalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_alphabet(&self.alphabet, &other.alphabet) && self.terms == other.terms
    }
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        Poly {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Poly::term(alphabet, Monomial::one(alphabet.len()), CycScalar::one())
    }

    pub fn constant(alphabet: &Arc<Alphabet>, c: CycScalar) -> Self {
        Poly::term(alphabet, Monomial::one(alphabet.len()), c)
    }

    pub fn generator(alphabet: &Arc<Alphabet>, i: usize) -> Self {
        Poly::term(alphabet, Monomial::generator(alphabet.len(), i), CycScalar::one())
    }

    pub fn term(alphabet: &Arc<Alphabet>, m: Monomial, c: CycScalar) -> Self {
        let mut p = Poly::zero(alphabet);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(alphabet: &Arc<Alphabet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, CycScalar)>,
    {
        let mut p = Poly::zero(alphabet);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, CycScalar> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> CycScalar {
        self.terms.get(m).cloned().unwrap_or_else(CycScalar::zero)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> CycScalar {
        self.coefficient(&Monomial::one(self.alphabet.len()))
    }

    pub fn add_term(&mut self, m: Monomial, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.alphabet.len());
        debug_assert!(
            self.alphabet.is_laurent() || m.0.iter().all(|&e| e >= 0),
            "negative exponent in a polynomial alphabet"
        );
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn check_same(&self, other: &Poly) -> Result<()> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(Error::GradingMismatch(format!(
                "alphabets {} and {} differ",
                self.alphabet.label(),
                other.alphabet.label()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(same_alphabet(&self.alphabet, &other.alphabet));
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&CycScalar::from_int(-1))
    }

    pub fn scale(&self, c: &CycScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.alphabet);
        }
        Poly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// Product in the commutative base algebra (no twisting).
    pub fn mul_commutative(&self, other: &Poly) -> Poly {
        debug_assert!(same_alphabet(&self.alphabet, &other.alphabet));
        let mut out = Poly::zero(&self.alphabet);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow_commutative(&self, k: u32) -> Poly {
        let mut out = Poly::one(&self.alphabet);
        for _ in 0..k {
            out = out.mul_commutative(self);
        }
        out
    }

    /// Conjugate-linear, degree-negating involution of the base algebra.
    pub fn conj(&self) -> Poly {
        Poly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (self.alphabet.conj_monomial(m), c.conj()))
                .collect(),
        }
    }

    pub fn degree_of(&self, m: &Monomial) -> Vec<i64> {
        self.alphabet.degree_of(m)
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<Vec<i64>, Poly> {
        let mut parts: BTreeMap<Vec<i64>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(self.alphabet.degree_of(m))
                .or_insert_with(|| Poly::zero(&self.alphabet))
                .add_term(m.clone(), c.clone());
        }
        parts
    }

    /// The set of degrees carried by nonzero terms.
    pub fn degree_support(&self) -> Vec<Vec<i64>> {
        let mut d: Vec<Vec<i64>> = self.terms.keys().map(|m| self.alphabet.degree_of(m)).collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_support().len() <= 1
    }

    /// Maximum total degree among terms.
    pub fn max_total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Linear extension of a monomial-to-polynomial map into another alphabet.
    pub fn map_linear<F>(&self, target: &Arc<Alphabet>, mut f: F) -> Poly
    where
        F: FnMut(&Monomial) -> Poly,
    {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let img = f(m);
            for (m2, c2) in img.terms {
                out.add_term(m2, c * &c2);
            }
        }
        out
    }

    /// Evaluates the base polynomial at complex generator values.
    pub fn eval(&self, values: &[num_complex::Complex64]) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::zero();
        for (m, c) in &self.terms {
            let mut v = c.to_complex();
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    v *= values[i].powi(e);
                }
            }
            acc += v;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})·{}", c, self.alphabet.format_monomial(m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
