//! Polynomial θ-deformed even spheres `S^{2l}_θ`.
//!
//! Generators `α_1, α_1*, …, α_l, α_l*, x` with `deg α_i = e_i`,
//! `deg α_i* = -e_i`, `deg x = 0`. Monomials are stored as commutative
//! exponent vectors in that order; every reordering phase is produced by the
//! star product from degrees alone.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Rational64;
use serde::Serialize;

use crate::algebra::poly::{same_alphabet, Alphabet, Monomial, Poly};
use crate::algebra::star::{star_product, StarContext};
use crate::coeff::CycScalar;
use crate::cocycle::DeformMatrix;
use crate::error::{Error, Result};

pub type SphereElement = Poly;

#[derive(Clone, Debug)]
pub struct SphereAlgebra {
    l: usize,
    alphabet: Arc<Alphabet>,
    theta: DeformMatrix,
    ctx: StarContext,
}

pub fn sphere_alphabet(l: usize) -> Arc<Alphabet> {
    let mut names = Vec::with_capacity(2 * l + 1);
    let mut degrees = Vec::with_capacity(2 * l + 1);
    let mut conj = Vec::with_capacity(2 * l + 1);
    for i in 0..l {
        let base = match (l, i) {
            (2, 0) => "alpha".to_string(),
            (2, 1) => "beta".to_string(),
            _ => format!("a{}", i + 1),
        };
        let mut e = vec![0i64; l];
        e[i] = 1;
        names.push(base.clone());
        degrees.push(e.clone());
        conj.push(2 * i + 1);
        names.push(format!("{base}*"));
        degrees.push(e.iter().map(|x| -x).collect());
        conj.push(2 * i);
    }
    names.push("x".into());
    degrees.push(vec![0; l]);
    conj.push(2 * l);
    Arc::new(Alphabet::new(format!("sphere{}", 2 * l), names, degrees, conj, false).unwrap())
}

impl SphereAlgebra {
    /// `S^{2l}_θ` for a skew `l × l` matrix θ, multiplied with `×_{θ/2}`.
    pub fn new(theta: DeformMatrix) -> Result<Self> {
        let l = theta.rank();
        if l < 2 {
            return Err(Error::Unsupported(
                "sphere algebras need a torus of rank at least 2".into(),
            ));
        }
        Ok(SphereAlgebra {
            l,
            alphabet: sphere_alphabet(l),
            ctx: StarContext::mono(theta.half()),
            theta,
        })
    }

    /// `S^4_θ` with `α × β = λ β × α`, `λ = e^{2πiθ}`.
    pub fn four(theta: Rational64) -> Self {
        SphereAlgebra::new(DeformMatrix::planar(theta)).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn theta(&self) -> &DeformMatrix {
        &self.theta
    }

    pub fn context(&self) -> &StarContext {
        &self.ctx
    }

    pub fn alpha_index(&self, i: usize) -> usize {
        2 * i
    }

    pub fn alpha_star_index(&self, i: usize) -> usize {
        2 * i + 1
    }

    pub fn x_index(&self) -> usize {
        2 * self.l
    }

    pub fn alpha(&self, i: usize) -> SphereElement {
        Poly::generator(&self.alphabet, self.alpha_index(i))
    }

    pub fn alpha_star(&self, i: usize) -> SphereElement {
        Poly::generator(&self.alphabet, self.alpha_star_index(i))
    }

    pub fn x(&self) -> SphereElement {
        Poly::generator(&self.alphabet, self.x_index())
    }

    pub fn one(&self) -> SphereElement {
        Poly::one(&self.alphabet)
    }

    pub fn constant(&self, c: CycScalar) -> SphereElement {
        Poly::constant(&self.alphabet, c)
    }

    /// `λ_jk = e^{2πi(Q_kj - Q_jk)}`, the phase with `α_j × α_k = λ_jk α_k × α_j`.
    pub fn lambda(&self, j: usize, k: usize) -> CycScalar {
        let q = self.ctx.direction();
        CycScalar::phase(q.get(k, j) - q.get(j, k))
    }

    pub fn star(&self, f: &SphereElement, g: &SphereElement) -> Result<SphereElement> {
        star_product(&self.ctx, f, g)
    }

    /// `Σ α_i × α_i* + x × x - 1`, built with the star product.
    pub fn radius_relation(&self) -> Result<SphereElement> {
        let mut r = self.star(&self.x(), &self.x())?;
        for i in 0..self.l {
            r = r.add(&self.star(&self.alpha(i), &self.alpha_star(i))?);
        }
        Ok(r.sub(&self.one()))
    }

    /// `Σ α_i α_i*` in the commutative base.
    fn radius_part(&self) -> SphereElement {
        let n = self.alphabet.len();
        let mut s = Poly::zero(&self.alphabet);
        for i in 0..self.l {
            let mut e = vec![0i32; n];
            e[self.alpha_index(i)] = 1;
            e[self.alpha_star_index(i)] = 1;
            s.add_term(Monomial(e), CycScalar::one());
        }
        s
    }

    /// Normal form modulo the radius relation: rewrites `x² → 1 - Σ α_i α_i*`
    /// until every monomial has `x`-exponent at most 1.
    pub fn reduce(&self, f: &SphereElement) -> Result<SphereElement> {
        if !same_alphabet(f.alphabet(), &self.alphabet) {
            return Err(Error::GradingMismatch("element is not over this sphere".into()));
        }
        let xi = self.x_index();
        let s = self.radius_part();
        let mut current = f.clone();
        loop {
            let mut next = Poly::zero(&self.alphabet);
            let mut rewrote = false;
            for (m, c) in current.terms() {
                if m.0[xi] >= 2 {
                    rewrote = true;
                    let mut lowered = m.clone();
                    lowered.0[xi] -= 2;
                    next.add_term(lowered.clone(), c.clone());
                    for (sm, sc) in s.terms() {
                        next.add_term(lowered.mul(sm), -(c * sc));
                    }
                } else {
                    next.add_term(m.clone(), c.clone());
                }
            }
            current = next;
            if !rewrote {
                return Ok(current);
            }
        }
    }

    /// Equality modulo the radius ideal.
    pub fn equal_mod_sphere(&self, f: &SphereElement, g: &SphereElement) -> Result<bool> {
        Ok(self.reduce(&f.sub(g))?.is_zero())
    }

    /// Named generators in alphabet order.
    pub fn generators(&self) -> Vec<(String, SphereElement)> {
        (0..self.alphabet.len())
            .map(|i| (self.alphabet.name(i).to_string(), Poly::generator(&self.alphabet, i)))
            .collect()
    }
}

/// Free-function form of [`SphereAlgebra::reduce`].
pub fn reduce_mod_sphere(sphere: &SphereAlgebra, f: &SphereElement) -> Result<SphereElement> {
    sphere.reduce(f)
}

/// One row of a commutation table: `left × right = ratio · (right × left)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub left: String,
    pub right: String,
    pub ratio: CycScalar,
}

/// Commutation phases between every ordered pair `i < j` of homogeneous
/// monomial generators under `×`.
pub fn commutation_table<F>(gens: &[(String, Poly)], mut star: F) -> Result<Vec<Relation>>
where
    F: FnMut(&Poly, &Poly) -> Result<Poly>,
{
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let ab = star(&gens[i].1, &gens[j].1)?;
            let ba = star(&gens[j].1, &gens[i].1)?;
            let ratio = monomial_ratio(&ab, &ba).ok_or_else(|| {
                Error::GradingMismatch(format!(
                    "{} and {} do not commute up to a phase",
                    gens[i].0, gens[j].0
                ))
            })?;
            out.push(Relation {
                left: gens[i].0.clone(),
                right: gens[j].0.clone(),
                ratio,
            });
        }
    }
    Ok(out)
}

/// For single-term `a = c·m`, `b = d·m`, returns `c/d`.
pub fn monomial_ratio(a: &Poly, b: &Poly) -> Option<CycScalar> {
    if a.num_terms() != 1 || b.num_terms() != 1 {
        return None;
    }
    let (ma, ca) = a.terms().next()?;
    let (mb, cb) = b.terms().next()?;
    if ma != mb {
        return None;
    }
    Some(ca * &cb.inverse()?)
}

/// Table keyed by the generator pair, for order-insensitive comparison.
pub fn table_map(rows: &[Relation]) -> BTreeMap<(String, String), CycScalar> {
    rows.iter()
        .map(|r| ((r.left.clone(), r.right.clone()), r.ratio.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn x_square_rewrite() {
        let s = SphereAlgebra::four(q(1, 3));
        let x2 = s.x().mul_commutative(&s.x());
        let expect = s
            .one()
            .sub(&s.alpha(0).mul_commutative(&s.alpha_star(0)))
            .sub(&s.alpha(1).mul_commutative(&s.alpha_star(1)));
        assert_eq!(s.reduce(&x2).unwrap(), expect);
    }

    #[test]
    fn relation_reduces_to_zero() {
        let s = SphereAlgebra::four(q(1, 3));
        assert!(s.reduce(&s.radius_relation().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn lambda_matches_planar_convention() {
        let s = SphereAlgebra::four(q(1, 5));
        assert_eq!(s.lambda(0, 1), CycScalar::phase(q(1, 5)));
        assert_eq!(s.lambda(1, 0), CycScalar::phase(q(-1, 5)));
    }

    #[test]
    fn rejects_rank_one() {
        assert!(SphereAlgebra::new(DeformMatrix::zero(1)).is_err());
    }
}
