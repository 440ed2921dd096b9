use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::poly::{same_alphabet, Alphabet, Monomial, Poly};
use crate::algebra::star::StarContext;
use crate::coeff::CycScalar;
use crate::error::{Error, Result};

/// Finite sum of pure tensors `c · m_1 ⊗ … ⊗ m_k` of base monomials.
#[derive(Clone, Debug)]
pub struct TensorElement {
    factors: Vec<Arc<Alphabet>>,
    terms: BTreeMap<Vec<Monomial>, CycScalar>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| same_alphabet(a, b))
            && self.terms == other.terms
    }
}

impl TensorElement {
    pub fn zero(factors: Vec<Arc<Alphabet>>) -> Self {
        TensorElement {
            factors,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn one(factors: Vec<Arc<Alphabet>>) -> Self {
        let key = factors.iter().map(|a| Monomial::one(a.len())).collect();
        let mut t = TensorElement::zero(factors);
        t.add_term(key, CycScalar::one());
        t
    }

    /// `f_1 ⊗ f_2 ⊗ …`, expanded multilinearly.
    pub fn pure(parts: &[&Poly]) -> Self {
        let factors: Vec<_> = parts.iter().map(|p| p.alphabet().clone()).collect();
        let mut acc: Vec<(Vec<Monomial>, CycScalar)> = vec![(Vec::new(), CycScalar::one())];
        for p in parts {
            let mut next = Vec::with_capacity(acc.len() * p.num_terms());
            for (key, c) in &acc {
                for (m, d) in p.terms() {
                    let mut k = key.clone();
                    k.push(m.clone());
                    next.push((k, c * d));
                }
            }
            acc = next;
        }
        let mut t = TensorElement::zero(factors);
        for (k, c) in acc {
            t.add_term(k, c);
        }
        t
    }

    pub fn factors(&self) -> &[Arc<Alphabet>] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &CycScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<Monomial>, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    fn check_shape(&self, other: &TensorElement) -> Result<()> {
        if self.factors.len() != other.factors.len()
            || !self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| same_alphabet(a, b))
        {
            return Err(Error::GradingMismatch("tensor factors differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        debug_assert!(self.check_shape(other).is_ok());
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&CycScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &CycScalar) -> TensorElement {
        let mut out = TensorElement::zero(self.factors.clone());
        for (k, d) in &self.terms {
            out.add_term(k.clone(), d * c);
        }
        out
    }

    /// Factorwise product. `contexts[i]` twists factor `i`; `None` multiplies
    /// that factor commutatively.
    pub fn mul(&self, other: &TensorElement, contexts: &[Option<&StarContext>]) -> Result<TensorElement> {
        self.check_shape(other)?;
        if contexts.len() != self.arity() {
            return Err(Error::DimensionMismatch {
                expected: self.arity(),
                got: contexts.len(),
            });
        }
        let degs = |key: &Vec<Monomial>| -> Vec<Vec<i64>> {
            key.iter()
                .zip(&self.factors)
                .map(|(m, a)| a.degree_of(m))
                .collect()
        };
        let rhs: Vec<_> = other.terms.iter().map(|(k, c)| (k, c, degs(k))).collect();
        let mut out = TensorElement::zero(self.factors.clone());
        for (k1, c1) in &self.terms {
            let d1 = degs(k1);
            for (k2, c2, d2) in &rhs {
                let mut coeff = c1 * *c2;
                for (i, ctx) in contexts.iter().enumerate() {
                    if let Some(ctx) = ctx {
                        coeff = &coeff * &ctx.phase(&d1[i], &d2[i]);
                    }
                }
                let key = k1.iter().zip(k2.iter()).map(|(a, b)| a.mul(b)).collect();
                out.add_term(key, coeff);
            }
        }
        Ok(out)
    }

    /// Linear map assembled from an image for every basis tensor.
    pub fn map_terms<F>(&self, target: Vec<Arc<Alphabet>>, mut f: F) -> Result<TensorElement>
    where
        F: FnMut(&[Monomial]) -> Result<TensorElement>,
    {
        let mut out = TensorElement::zero(target);
        for (k, c) in &self.terms {
            let img = f(k)?;
            for (k2, c2) in img.terms {
                out.add_term(k2, c * &c2);
            }
        }
        Ok(out)
    }

    /// Applies a linear map `A_i → B` on factor `i` only.
    pub fn map_factor<F>(&self, i: usize, target: &Arc<Alphabet>, mut f: F) -> Result<TensorElement>
    where
        F: FnMut(&Poly) -> Result<Poly>,
    {
        let mut factors = self.factors.clone();
        factors[i] = target.clone();
        let src = self.factors[i].clone();
        let mut cache: BTreeMap<Monomial, Poly> = BTreeMap::new();
        let mut out = TensorElement::zero(factors);
        for (k, c) in &self.terms {
            if !cache.contains_key(&k[i]) {
                let img = f(&Poly::term(&src, k[i].clone(), CycScalar::one()))?;
                cache.insert(k[i].clone(), img);
            }
            for (m, d) in cache[&k[i]].terms() {
                let mut key = k.clone();
                key[i] = m.clone();
                out.add_term(key, c * d);
            }
        }
        Ok(out)
    }

    /// Involution applied in every factor.
    pub fn conj(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.factors.clone());
        for (k, c) in &self.terms {
            let key = k
                .iter()
                .zip(&self.factors)
                .map(|(m, a)| a.conj_monomial(m))
                .collect();
            out.add_term(key, c.conj());
        }
        out
    }

    /// Degree of each factor of a basis tensor.
    pub fn degrees_of(&self, key: &[Monomial]) -> Vec<Vec<i64>> {
        key.iter()
            .zip(&self.factors)
            .map(|(m, a)| a.degree_of(m))
            .collect()
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mons: Vec<String> = k
                    .iter()
                    .zip(&self.factors)
                    .map(|(m, a)| a.format_monomial(m))
                    .collect();
                format!("({})·{}", c, mons.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
