//! Projectors over `S^4_θ` and their Chern characters as exact chains.
//!
//! A chain `a_0 ⊗ ā_1 ⊗ … ⊗ ā_n` keeps slot 0 in sphere normal form and the
//! barred slots in normal form with the constant term removed (the quotient
//! `A / C·1`). A chain is zero exactly when nothing survives that
//! canonicalization.

use num_rational::Rational64;
use serde::Serialize;

use crate::algebra::poly::{same_alphabet, Monomial, Poly};
use crate::algebra::sphere::SphereAlgebra;
use crate::algebra::tensor::TensorElement;
use crate::coeff::CycScalar;
use crate::error::{Error, Result};
use crate::spin::{TripleBundle, TruncatedOperator};

/// Square matrix over a sphere algebra, multiplied with `×` entrywise.
#[derive(Clone, Debug)]
pub struct AlgebraMatrix {
    sphere: SphereAlgebra,
    size: usize,
    entries: Vec<Poly>,
}

impl PartialEq for AlgebraMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.entries == other.entries
    }
}

impl AlgebraMatrix {
    pub fn from_entries(sphere: &SphereAlgebra, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::NotSquare);
            }
            for e in row {
                if !same_alphabet(e.alphabet(), sphere.alphabet()) {
                    return Err(Error::GradingMismatch("entry is not over the sphere".into()));
                }
                entries.push(e);
            }
        }
        Ok(AlgebraMatrix {
            sphere: sphere.clone(),
            size,
            entries,
        })
    }

    pub fn scalar(sphere: &SphereAlgebra, size: usize, c: CycScalar) -> Self {
        let zero = Poly::zero(sphere.alphabet());
        let entries = (0..size * size)
            .map(|k| {
                if k / size == k % size {
                    sphere.constant(c.clone())
                } else {
                    zero.clone()
                }
            })
            .collect();
        AlgebraMatrix {
            sphere: sphere.clone(),
            size,
            entries,
        }
    }

    pub fn identity(sphere: &SphereAlgebra, size: usize) -> Self {
        Self::scalar(sphere, size, CycScalar::one())
    }

    pub fn sphere(&self) -> &SphereAlgebra {
        &self.sphere
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.size + j]
    }

    fn map(&self, f: impl Fn(usize, usize) -> Result<Poly>) -> Result<AlgebraMatrix> {
        let n = self.size;
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect::<Result<_>>()?;
        Ok(AlgebraMatrix {
            sphere: self.sphere.clone(),
            size: n,
            entries,
        })
    }

    pub fn add(&self, other: &AlgebraMatrix) -> Result<AlgebraMatrix> {
        self.map(|i, j| Ok(self.get(i, j).add(other.get(i, j))))
    }

    pub fn sub(&self, other: &AlgebraMatrix) -> Result<AlgebraMatrix> {
        self.map(|i, j| Ok(self.get(i, j).sub(other.get(i, j))))
    }

    pub fn scale(&self, c: &CycScalar) -> AlgebraMatrix {
        self.map(|i, j| Ok(self.get(i, j).scale(c))).expect("infallible")
    }

    pub fn mul(&self, other: &AlgebraMatrix) -> Result<AlgebraMatrix> {
        if self.size != other.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                got: other.size,
            });
        }
        self.map(|i, j| {
            let mut acc = Poly::zero(self.sphere.alphabet());
            for k in 0..self.size {
                acc = acc.add(&self.sphere.star(self.get(i, k), other.get(k, j))?);
            }
            Ok(acc)
        })
    }

    /// Conjugate transpose with the entrywise involution.
    pub fn adjoint(&self) -> AlgebraMatrix {
        self.map(|i, j| Ok(self.get(j, i).conj())).expect("infallible")
    }

    pub fn reduce(&self) -> Result<AlgebraMatrix> {
        self.map(|i, j| self.sphere.reduce(self.get(i, j)))
    }

    pub fn is_zero_mod_sphere(&self) -> Result<bool> {
        Ok(self.reduce()?.entries.iter().all(|e| e.is_zero()))
    }

    pub fn trace(&self) -> Poly {
        (0..self.size).fold(Poly::zero(self.sphere.alphabet()), |acc, i| acc.add(self.get(i, i)))
    }

    /// `P a P^T` for the permutation `i ↦ perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<AlgebraMatrix> {
        let mut inv = vec![0; self.size];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        self.map(|i, j| Ok(self.get(inv[i], inv[j]).clone()))
    }

    pub fn is_projection(&self) -> Result<bool> {
        Ok(self.adjoint().sub(self)?.is_zero_mod_sphere()? && self.mul(self)?.sub(self)?.is_zero_mod_sphere()?)
    }
}

/// Phases `(μ₁, μ₂)` in `T = [[α, μ₁β], [μ₂β*, α*]]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstantonPhases {
    pub mu1: CycScalar,
    pub mu2: CycScalar,
}

/// `p = ½(1 + Y)`, `Y = [[x·1, T], [T*, -x·1]]`.
pub fn instanton_matrix(sphere: &SphereAlgebra, phases: &InstantonPhases) -> Result<AlgebraMatrix> {
    if sphere.rank() != 2 {
        return Err(Error::Unsupported("the instanton projector lives over S^4".into()));
    }
    let (a, b) = (sphere.alpha(0), sphere.alpha(1));
    let t = [
        [a.clone(), b.scale(&phases.mu1)],
        [sphere.alpha_star(1).scale(&phases.mu2), a.conj()],
    ];
    let x = sphere.x();
    let zero = Poly::zero(sphere.alphabet());
    let mut y = vec![vec![zero.clone(); 4]; 4];
    for i in 0..2 {
        y[i][i] = x.clone();
        y[i + 2][i + 2] = x.neg();
        for j in 0..2 {
            y[i][j + 2] = t[i][j].clone();
            y[j + 2][i] = t[i][j].conj();
        }
    }
    let half = CycScalar::from_ratio(1, 2);
    let y = AlgebraMatrix::from_entries(sphere, y)?;
    Ok(AlgebraMatrix::identity(sphere, 4).add(&y)?.scale(&half))
}

fn phase_candidates(lambda: &CycScalar) -> Vec<CycScalar> {
    let mut out: Vec<CycScalar> = Vec::new();
    for base in [CycScalar::one(), lambda.clone(), lambda.conj()] {
        for s in [CycScalar::one(), CycScalar::from_int(-1)] {
            let c = &base * &s;
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct InstantonCertificate {
    pub projector: AlgebraMatrix,
    pub phases: InstantonPhases,
    pub tried: usize,
}

/// Searches `μ₁, μ₂ ∈ {±1, ±λ, ±conj(λ)}` for a projection, in a fixed order.
pub fn instanton_projector(theta: Rational64) -> Result<InstantonCertificate> {
    let sphere = SphereAlgebra::four(theta);
    let lambda = sphere.lambda(0, 1);
    let cands = phase_candidates(&lambda);
    let mut tried = 0;
    for mu1 in &cands {
        for mu2 in &cands {
            tried += 1;
            let phases = InstantonPhases {
                mu1: mu1.clone(),
                mu2: mu2.clone(),
            };
            let p = instanton_matrix(&sphere, &phases)?;
            if p.is_projection()? {
                return Ok(InstantonCertificate {
                    projector: p,
                    phases,
                    tried,
                });
            }
        }
    }
    Err(Error::NoCertifiedPhases)
}

/// The certified projector with `μ₁` multiplied by `λ` (by `-1` when `λ = 1`).
pub fn perturbed_instanton(theta: Rational64) -> Result<AlgebraMatrix> {
    let cert = instanton_projector(theta)?;
    let sphere = cert.projector.sphere().clone();
    let lambda = sphere.lambda(0, 1);
    let kick = if lambda.is_one() { CycScalar::from_int(-1) } else { lambda };
    let phases = InstantonPhases {
        mu1: &cert.phases.mu1 * &kick,
        mu2: cert.phases.mu2,
    };
    instanton_matrix(&sphere, &phases)
}

/// `⟨p - ½⟩ = Σ_i (p - ½)_{ii}` in normal form.
pub fn ch0(p: &AlgebraMatrix) -> Result<Poly> {
    let s = p.sphere();
    let half = s.constant(CycScalar::from_ratio(1, 2));
    let mut acc = Poly::zero(s.alphabet());
    for i in 0..p.size() {
        acc = acc.add(&p.get(i, i).sub(&half));
    }
    s.reduce(&acc)
}

/// Element of `A ⊗ (A/C)^{⊗n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    inner: TensorElement,
}

impl Chain {
    pub fn from_tensor(inner: TensorElement) -> Self {
        Chain { inner }
    }

    pub fn tensor(&self) -> &TensorElement {
        &self.inner
    }

    /// Number of barred slots.
    pub fn degree(&self) -> usize {
        self.inner.arity().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        Chain::from_tensor(self.inner.add(&other.inner))
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        Chain::from_tensor(self.inner.sub(&other.inner))
    }

    pub fn scale(&self, c: &CycScalar) -> Chain {
        Chain::from_tensor(self.inner.scale(c))
    }

    /// Applies `reduce` to every slot and drops constants in barred slots.
    pub fn canonicalize<F>(&self, reduce: F) -> Result<Chain>
    where
        F: Fn(&Poly) -> Result<Poly>,
    {
        let mut t = self.inner.clone();
        for i in 0..t.arity() {
            let target = t.factors()[i].clone();
            t = t.map_factor(i, &target, |p| {
                let mut r = reduce(p)?;
                if i > 0 {
                    let one = Monomial::one(target.len());
                    let c0 = r.coefficient(&one);
                    r.add_term(one, -c0);
                }
                Ok(r)
            })?;
        }
        Ok(Chain::from_tensor(t))
    }

    pub fn canonical_over(&self, sphere: &SphereAlgebra) -> Result<Chain> {
        self.canonicalize(|p| sphere.reduce(p))
    }

    /// Hochschild boundary
    /// `b(a_0 ⊗ … ⊗ a_n) = Σ_{i<n} (-1)^i … ⊗ a_i a_{i+1} ⊗ … + (-1)^n a_n a_0 ⊗ a_1 ⊗ … ⊗ a_{n-1}`,
    /// with the products supplied by `mul`.
    pub fn boundary<F>(&self, mul: F) -> Result<Chain>
    where
        F: Fn(&Poly, &Poly) -> Result<Poly>,
    {
        let n = self.degree();
        if n == 0 {
            return Err(Error::Unsupported("boundary of a 0-chain".into()));
        }
        let factors = self.inner.factors()[..n].to_vec();
        let mut out = TensorElement::zero(factors.clone());
        for (key, c) in self.inner.terms() {
            let slot = |i: usize| Poly::term(&self.inner.factors()[i], key[i].clone(), CycScalar::one());
            for i in 0..=n {
                let sign = if i % 2 == 0 { CycScalar::one() } else { CycScalar::from_int(-1) };
                let mut parts: Vec<Poly> = Vec::with_capacity(n);
                if i < n {
                    for j in 0..i {
                        parts.push(slot(j));
                    }
                    parts.push(mul(&slot(i), &slot(i + 1))?);
                    for j in (i + 2)..=n {
                        parts.push(slot(j));
                    }
                } else {
                    parts.push(mul(&slot(n), &slot(0))?);
                    for j in 1..n {
                        parts.push(slot(j));
                    }
                }
                let refs: Vec<&Poly> = parts.iter().collect();
                out = out.add(&TensorElement::pure(&refs).scale(&(c * &sign)));
            }
        }
        Ok(Chain::from_tensor(out))
    }
}

/// `Σ_{ijk} (p - ½)_{ij} ⊗ p̄_{jk} ⊗ p̄_{ki}` and the number of elementary
/// tensors before any merging.
pub fn ch1_with_count(p: &AlgebraMatrix) -> Result<(Chain, usize)> {
    let s = p.sphere();
    let n = p.size();
    let half = s.constant(CycScalar::from_ratio(1, 2));
    let alph = s.alphabet().clone();
    let mut out = TensorElement::zero(vec![alph.clone(), alph.clone(), alph]);
    let mut raw = 0;
    for i in 0..n {
        for j in 0..n {
            let a0 = if i == j { p.get(i, j).sub(&half) } else { p.get(i, j).clone() };
            for k in 0..n {
                let (a1, a2) = (p.get(j, k), p.get(k, i));
                raw += a0.num_terms() * a1.num_terms() * a2.num_terms();
                out = out.add(&TensorElement::pure(&[&a0, a1, a2]));
            }
        }
    }
    Ok((Chain::from_tensor(out).canonical_over(s)?, raw))
}

pub fn ch1(p: &AlgebraMatrix) -> Result<Chain> {
    Ok(ch1_with_count(p)?.0)
}

/// `b` on chains over the sphere, canonicalized.
pub fn sphere_boundary(sphere: &SphereAlgebra, c: &Chain) -> Result<Chain> {
    c.boundary(|a, b| sphere.star(a, b))?.canonical_over(sphere)
}

/// `π_D(a_0 ⊗ ā_1 ⊗ … ⊗ ā_n) = L(a_0)[D, L(a_1)]…[D, L(a_n)]` for chains over
/// the torus of the bundle.
pub fn pi_d(chain: &Chain, bundle: &TripleBundle) -> Result<TruncatedOperator> {
    let t = chain.tensor();
    let d = bundle.dirac_op();
    let mut out = TruncatedOperator::zero(bundle.dim());
    for (key, c) in t.terms() {
        let slot = |i: usize| Poly::term(&t.factors()[i], key[i].clone(), CycScalar::one());
        let mut op = bundle.l_rep(&slot(0))?;
        for i in 1..t.arity() {
            op = op.mul(&d.commutator(&bundle.l_rep(&slot(i))?));
        }
        out = out.add(&op.scale(c.to_complex()));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChernReport {
    pub theta: String,
    pub phases: InstantonPhases,
    pub candidates_tried: usize,
    pub self_adjoint: bool,
    pub idempotent: bool,
    pub trace_is_two: bool,
    pub ch0_zero: bool,
    pub ch1_terms_before: usize,
    pub ch1_terms_after: usize,
    pub ch1_zero: bool,
    pub boundary_of_ch1_zero: bool,
    pub relabeling_invariant: bool,
    pub trivial_projector_ch0_flagged: bool,
    pub perturbed_projector_flagged: bool,
}

impl ChernReport {
    pub fn passed(&self) -> bool {
        self.self_adjoint
            && self.idempotent
            && self.trace_is_two
            && self.ch0_zero
            && self.ch1_zero
            && self.boundary_of_ch1_zero
            && self.relabeling_invariant
            && self.trivial_projector_ch0_flagged
            && self.perturbed_projector_flagged
    }
}

pub fn certify(theta: Rational64) -> Result<ChernReport> {
    let cert = instanton_projector(theta)?;
    let p = &cert.projector;
    let s = p.sphere();
    let self_adjoint = p.adjoint().sub(p)?.is_zero_mod_sphere()?;
    let idempotent = p.mul(p)?.sub(p)?.is_zero_mod_sphere()?;
    let trace_is_two = s.reduce(&p.trace())? == s.constant(CycScalar::from_int(2));
    let ch0_zero = ch0(p)?.is_zero();
    let (c1, raw) = ch1_with_count(p)?;
    let boundary_of_ch1_zero = sphere_boundary(s, &c1)?.is_zero();
    let relabeled = ch1(&p.permute(&[2, 0, 3, 1])?)?;
    let trivial = AlgebraMatrix::identity(s, 4);
    let perturbed = perturbed_instanton(theta)?;
    let perturbed_projector_flagged = !perturbed.is_projection()? || !ch1(&perturbed)?.is_zero();
    Ok(ChernReport {
        theta: crate::cocycle::format_rational(&theta),
        phases: cert.phases.clone(),
        candidates_tried: cert.tried,
        self_adjoint,
        idempotent,
        trace_is_two,
        ch0_zero,
        ch1_terms_before: raw,
        ch1_terms_after: c1.num_terms(),
        ch1_zero: c1.is_zero(),
        boundary_of_ch1_zero,
        relabeling_invariant: relabeled == c1,
        trivial_projector_ch0_flagged: !ch0(&trivial)?.is_zero(),
        perturbed_projector_flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undeformed_phases_are_quaternionic() {
        let cert = instanton_projector(Rational64::from_integer(0)).unwrap();
        assert_eq!(cert.phases.mu1, -cert.phases.mu2.clone());
    }

    #[test]
    fn ch0_negative_controls() {
        let s = SphereAlgebra::four(Rational64::new(1, 3));
        let one = AlgebraMatrix::identity(&s, 4);
        assert_eq!(ch0(&one).unwrap(), s.constant(CycScalar::from_int(2)));
        let zero = Poly::zero(s.alphabet());
        let mut rows = vec![vec![zero; 4]; 4];
        rows[0][0] = s.one();
        let e = AlgebraMatrix::from_entries(&s, rows).unwrap();
        assert_eq!(ch0(&e).unwrap(), s.constant(CycScalar::from_int(-1)));
    }
}
