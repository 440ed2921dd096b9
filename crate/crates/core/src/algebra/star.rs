//! Cocycle-twisted star products on graded commutative algebras.
//!
//! For homogeneous `a_p`, `b_q` the deformed product is
//! `a_p ×_M b_q = e^{-2πi p·Mq} a_p b_q`, where `M` is a skew-symmetric
//! matrix acting on degrees: `Q` for a `Z^l` grading, or `J = Q ⊕ (-Q)` for a
//! bigrading in `Z^l × Z^l`. With `Q = θ/2` the phase is the skew cocycle
//! `σ(p, q)` of [`crate::cocycle::sigma`].

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::poly::Poly;
use crate::coeff::CycScalar;
use crate::cocycle::DeformMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradingKind {
    /// Degrees in `Z^l`, deformation matrix `Q`.
    Mono,
    /// Bidegrees `(left, right)` in `Z^l × Z^l`, deformation matrix `Q ⊕ (-Q)`.
    Bi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarContext {
    kind: GradingKind,
    direction: DeformMatrix,
    matrix: DeformMatrix,
}

/// Pairs above this count are split across threads.
const PAR_THRESHOLD: usize = 4096;

impl StarContext {
    /// `Z^l` grading deformed along `q`.
    pub fn mono(q: DeformMatrix) -> Self {
        StarContext {
            kind: GradingKind::Mono,
            matrix: q.clone(),
            direction: q,
        }
    }

    /// `Z^l × Z^l` grading deformed along `J = q ⊕ (-q)`.
    pub fn bi(q: DeformMatrix) -> Self {
        StarContext {
            kind: GradingKind::Bi,
            matrix: q.doubled().to_matrix(),
            direction: q,
        }
    }

    pub fn with_kind(kind: GradingKind, q: DeformMatrix) -> Self {
        match kind {
            GradingKind::Mono => StarContext::mono(q),
            GradingKind::Bi => StarContext::bi(q),
        }
    }

    pub fn kind(&self) -> GradingKind {
        self.kind
    }

    /// The deformation direction `Q` (before doubling).
    pub fn direction(&self) -> &DeformMatrix {
        &self.direction
    }

    /// The matrix acting on the full degree vector.
    pub fn matrix(&self) -> &DeformMatrix {
        &self.matrix
    }

    pub fn grade_dim(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_undeformed(&self) -> bool {
        self.direction.is_zero()
    }

    /// Exponent `-p·Mq` of the twisting phase, in turns.
    pub fn phase_turns(&self, p: &[i64], q: &[i64]) -> Rational64 {
        -self.matrix.pairing_unchecked(p, q)
    }

    /// `e^{-2πi p·Mq}`.
    pub fn phase(&self, p: &[i64], q: &[i64]) -> CycScalar {
        CycScalar::phase(self.phase_turns(p, q))
    }

    pub fn check(&self, f: &Poly) -> Result<()> {
        if f.alphabet().grade_dim() != self.grade_dim() {
            return Err(Error::GradingMismatch(format!(
                "context acts on degree dimension {}, algebra {} has {}",
                self.grade_dim(),
                f.alphabet().label(),
                f.alphabet().grade_dim()
            )));
        }
        Ok(())
    }
}

fn star_rows(ctx: &StarContext, f: &Poly, g: &Poly) -> Poly {
    let alph = f.alphabet();
    let gdeg: Vec<_> = g
        .terms()
        .map(|(m, c)| (m, c, alph.degree_of(m)))
        .collect();
    let mut out = Poly::zero(alph);
    for (m1, c1) in f.terms() {
        let d1 = alph.degree_of(m1);
        for (m2, c2, d2) in &gdeg {
            let coeff = &(c1 * *c2) * &ctx.phase(&d1, d2);
            out.add_term(m1.mul(m2), coeff);
        }
    }
    out
}

/// Bilinear extension of `a_p × b_q = e^{-2πi p·Mq} a_p b_q`.
pub fn star_product(ctx: &StarContext, f: &Poly, g: &Poly) -> Result<Poly> {
    f.check_same(g)?;
    ctx.check(f)?;
    if f.num_terms() * g.num_terms() < PAR_THRESHOLD || f.num_terms() < 2 {
        return Ok(star_rows(ctx, f, g));
    }
    let rows: Vec<_> = f.terms().map(|(m, c)| Poly::term(f.alphabet(), m.clone(), c.clone())).collect();
    // Exact addition is commutative, so the merge order is irrelevant.
    let partial: Vec<Poly> = rows.par_iter().map(|row| star_rows(ctx, row, g)).collect();
    Ok(partial
        .into_iter()
        .fold(Poly::zero(f.alphabet()), |acc, p| acc.add(&p)))
}

/// Star product of several factors, left to right.
pub fn star_chain(ctx: &StarContext, factors: &[&Poly]) -> Result<Poly> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Config("empty product".into()))?;
    let mut acc = (*first).clone();
    for f in rest {
        acc = star_product(ctx, &acc, f)?;
    }
    Ok(acc)
}

/// Conjugate-linear involution; an anti-automorphism of every `×_M` because
/// `M` is skew-symmetric.
pub fn involution(ctx: &StarContext, f: &Poly) -> Result<Poly> {
    ctx.check(f)?;
    Ok(f.conj())
}

/// The product of the `Q`-deformed algebra re-deformed along `K`.
///
/// Each homogeneous pair is first multiplied with `×_Q` and then twisted by
/// the `K`-phase of its degrees. The result agrees with `×_{Q+K}`; with
/// `K = -Q` it is the commutative product.
pub fn deform_compose(ctx_q: &StarContext, ctx_k: &StarContext, f: &Poly, g: &Poly) -> Result<Poly> {
    f.check_same(g)?;
    ctx_q.check(f)?;
    ctx_k.check(f)?;
    if ctx_q.kind() != ctx_k.kind() {
        return Err(Error::GradingMismatch("deformations use different gradings".into()));
    }
    let mut out = Poly::zero(f.alphabet());
    for (p, fp) in f.homogeneous_parts() {
        for (q, gq) in g.homogeneous_parts() {
            let prod = star_product(ctx_q, &fp, &gq)?;
            out = out.add(&prod.scale(&ctx_k.phase(&p, &q)));
        }
    }
    Ok(out)
}

/// Context for `×_{Q+K}`.
pub fn composed_context(ctx_q: &StarContext, ctx_k: &StarContext) -> Result<StarContext> {
    if ctx_q.kind() != ctx_k.kind() {
        return Err(Error::GradingMismatch("deformations use different gradings".into()));
    }
    Ok(StarContext::with_kind(
        ctx_q.kind(),
        ctx_q.direction().add(ctx_k.direction())?,
    ))
}
