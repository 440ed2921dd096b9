//! Quantum homogeneous spaces `C(G/K)_Q ⊂ C(G)_J`.
//!
//! K-invariance is realised by generator selection (one fixed column of the
//! matrix coefficients) and, for a torus `K`, by a right-degree-zero filter.
//! The homogeneous-space algebra has one generator per selected matrix
//! coefficient, graded by its left degree and multiplied with `×_Q`.

use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::algebra::poly::{Alphabet, Monomial, Poly};
use crate::algebra::sphere::{commutation_table, table_map, SphereAlgebra};
use crate::algebra::star::{star_product, StarContext};
use crate::algebra::tensor::TensorElement;
use crate::coeff::CycScalar;
use crate::cocycle::{sigma, DeformMatrix};
use crate::error::{Error, Result};
use crate::hopf::MatrixCoeffAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KSpec {
    /// `K = {1}`: every function is invariant.
    Trivial,
    /// `K` = the diagonal torus: invariants are the right-degree-zero part.
    FullTorus,
    /// `K` = stabiliser of a weight-zero basis vector: functions of that column.
    ColumnStabilizer(usize),
}

#[derive(Clone, Debug)]
pub struct InvariantSubalgebra {
    parent: Arc<MatrixCoeffAlgebra>,
    spec: KSpec,
    selected: Vec<usize>,
}

pub fn invariants_of(parent: Arc<MatrixCoeffAlgebra>, spec: KSpec) -> Result<InvariantSubalgebra> {
    let n = parent.size();
    let all: Vec<usize> = (0..parent.alphabet().len()).collect();
    let selected = match spec {
        KSpec::Trivial | KSpec::FullTorus => all,
        KSpec::ColumnStabilizer(c) => {
            if c >= n {
                return Err(Error::DimensionMismatch { expected: n, got: c });
            }
            if parent.weights()[c].iter().any(|&w| w != 0) {
                return Err(Error::NotInvariant(format!(
                    "column {} has nonzero weight, so its stabiliser does not contain the torus",
                    c + 1
                )));
            }
            let mut s: Vec<usize> = (0..n)
                .flat_map(|a| [parent.entry_index(a, c), parent.star_entry_index(a, c)])
                .flatten()
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        }
    };
    let alph = parent.alphabet();
    for &i in &selected {
        if !selected.contains(&alph.conj_of(i)) {
            return Err(Error::NotClosed(format!(
                "conjugate of {} is not selected",
                alph.name(i)
            )));
        }
    }
    Ok(InvariantSubalgebra {
        parent,
        spec,
        selected,
    })
}

impl InvariantSubalgebra {
    pub fn parent(&self) -> &Arc<MatrixCoeffAlgebra> {
        &self.parent
    }

    pub fn spec(&self) -> KSpec {
        self.spec
    }

    /// Parent generator indices spanning the subalgebra.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        let alph = self.parent.alphabet();
        let uses_selected = m
            .0
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || self.selected.contains(&i));
        if !uses_selected {
            return false;
        }
        match self.spec {
            KSpec::FullTorus => {
                let d = alph.degree_of(m);
                self.parent.right_degree(&d).iter().all(|&x| x == 0)
            }
            _ => true,
        }
    }

    pub fn contains(&self, f: &Poly) -> bool {
        f.terms().all(|(m, _)| self.contains_monomial(m))
    }

    /// Invariant monomials of total degree at most `max_degree`.
    pub fn monomials(&self, max_degree: u32) -> Vec<Monomial> {
        crate::sampling::all_monomials(self.parent.alphabet(), max_degree)
            .into_iter()
            .filter(|m| self.contains_monomial(m))
            .collect()
    }
}

/// `C(G/K)_Q`, attached to its parent quantum group.
#[derive(Clone, Debug)]
pub struct HomogeneousSpace {
    sub: InvariantSubalgebra,
    alphabet: Arc<Alphabet>,
    ctx: StarContext,
    /// Space generator index for each parent generator, if selected.
    to_space: Vec<Option<usize>>,
}

pub type HomogElement = Poly;

impl HomogeneousSpace {
    pub fn new(sub: InvariantSubalgebra) -> Result<Self> {
        let parent = sub.parent.clone();
        let palph = parent.alphabet();
        let mut to_space = vec![None; palph.len()];
        for (k, &i) in sub.selected.iter().enumerate() {
            to_space[i] = Some(k);
        }
        let names = sub
            .selected
            .iter()
            .map(|&i| format!("c[{}]", palph.name(i)))
            .collect();
        let degrees = sub
            .selected
            .iter()
            .map(|&i| parent.left_degree(palph.degree(i)))
            .collect();
        let conj = sub
            .selected
            .iter()
            .map(|&i| to_space[palph.conj_of(i)].expect("closed under involution"))
            .collect();
        let alphabet = Arc::new(Alphabet::new(
            format!("{} / K", palph.label()),
            names,
            degrees,
            conj,
            false,
        )?);
        Ok(HomogeneousSpace {
            ctx: StarContext::mono(parent.context().direction().clone()),
            sub,
            alphabet,
            to_space,
        })
    }

    pub fn subalgebra(&self) -> &InvariantSubalgebra {
        &self.sub
    }

    pub fn parent(&self) -> &Arc<MatrixCoeffAlgebra> {
        &self.sub.parent
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// The `×_Q` context.
    pub fn context(&self) -> &StarContext {
        &self.ctx
    }

    pub fn star(&self, f: &HomogElement, g: &HomogElement) -> Result<HomogElement> {
        star_product(&self.ctx, f, g)
    }

    /// Space generator for the parent generator `i`.
    pub fn generator_for(&self, i: usize) -> Option<HomogElement> {
        self.to_space[i].map(|k| Poly::generator(&self.alphabet, k))
    }

    fn monomial_to_space(&self, m: &Monomial) -> Monomial {
        let mut e = vec![0i32; self.alphabet.len()];
        for (i, &k) in m.0.iter().enumerate() {
            if k != 0 {
                e[self.to_space[i].expect("invariant monomial")] += k;
            }
        }
        Monomial(e)
    }

    /// `ζ: C(G)^K → C(G/K)`.
    pub fn zeta(&self, f: &Poly) -> Result<HomogElement> {
        if !crate::algebra::poly::same_alphabet(f.alphabet(), self.parent().alphabet()) {
            return Err(Error::GradingMismatch("element is not over the parent group".into()));
        }
        if let Some((m, _)) = f.terms().find(|(m, _)| !self.sub.contains_monomial(m)) {
            return Err(Error::NotInvariant(self.parent().alphabet().format_monomial(m)));
        }
        Ok(f.map_linear(&self.alphabet, |m| {
            Poly::term(&self.alphabet, self.monomial_to_space(m), CycScalar::one())
        }))
    }

    pub fn zeta_inverse(&self, g: &HomogElement) -> Result<Poly> {
        let palph = self.parent().alphabet().clone();
        let sel = &self.sub.selected;
        let out = g.map_linear(&palph, |m| {
            let mut e = vec![0i32; palph.len()];
            for (k, &x) in m.0.iter().enumerate() {
                e[sel[k]] += x;
            }
            Poly::term(&palph, Monomial(e), CycScalar::one())
        });
        if !self.sub.contains(&out) {
            return Err(Error::NotInvariant(format!("{g}")));
        }
        Ok(out)
    }

    fn coaction_generator(&self, k: usize) -> Result<TensorElement> {
        let parent = self.parent();
        let i = self.sub.selected[k];
        let n = parent.size();
        let (a, b, starred) = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find_map(|(a, b)| {
                if parent.entry_index(a, b) == Some(i) {
                    Some((a, b, false))
                } else if parent.star_entry_index(a, b) == Some(i) {
                    Some((a, b, true))
                } else {
                    None
                }
            })
            .ok_or(Error::NoParent)?;
        let idx = |x: usize, y: usize| {
            if starred {
                parent.star_entry_index(x, y)
            } else {
                parent.entry_index(x, y)
            }
        };
        let factors = vec![parent.alphabet().clone(), self.alphabet.clone()];
        let mut out = TensorElement::zero(factors);
        for d in 0..n {
            let (Some(g), Some(s)) = (idx(a, d), idx(d, b)) else { continue };
            let sk = self.to_space[s].ok_or(Error::NoParent)?;
            out.add_term(
                vec![
                    Monomial::generator(parent.alphabet().len(), g),
                    Monomial::generator(self.alphabet.len(), sk),
                ],
                CycScalar::one(),
            );
        }
        Ok(out)
    }

    /// Left coaction `ρ(c_{ab}) = Σ_d u_{ad} ⊗ c_{db}`, extended over the
    /// commutative base.
    pub fn coaction(&self, f: &HomogElement) -> Result<TensorElement> {
        let images: Vec<TensorElement> = (0..self.alphabet.len())
            .map(|k| self.coaction_generator(k))
            .collect::<Result<_>>()?;
        let factors = vec![self.parent().alphabet().clone(), self.alphabet.clone()];
        let plain = [None, None];
        let mut out = TensorElement::zero(factors.clone());
        for (m, c) in f.terms() {
            let mut acc = TensorElement::one(factors.clone());
            for (k, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&images[k], &plain)?;
                }
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    /// Product on `C(G)_J ⊗ C(G/K)_Q`.
    pub fn mixed_star(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        a.mul(b, &[Some(self.parent().context()), Some(&self.ctx)])
    }

    /// `(id ⊗ ζ)` on a two-factor tensor over the parent.
    pub fn id_zeta(&self, h: &TensorElement) -> Result<TensorElement> {
        h.map_factor(1, &self.alphabet, |p| self.zeta(p))
    }
}

/// One row of the sphere comparison: the ratio `a × b / (b × a)` computed
/// inside `C(SO(2l+1))_J` and in `S^{2l}_θ`.
#[derive(Clone, Debug, Serialize)]
pub struct RelationComparison {
    pub left: String,
    pub right: String,
    pub from_group: CycScalar,
    pub from_sphere: CycScalar,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereFromGroup {
    pub l: usize,
    pub rows: Vec<RelationComparison>,
    pub all_agree: bool,
}

/// Sphere-generator names paired with the parent column entries.
///
/// `α_i ↔ x_{2i+1, 2l}` (left degree `e_i`), `α_i* ↔ x_{2i, 2l}`, `x ↔ x_{2l, 2l}`
/// (0-based indices).
pub fn sphere_generators(space: &HomogeneousSpace, sphere: &SphereAlgebra) -> Vec<(String, Poly, Poly)> {
    let parent = space.parent();
    let l = sphere.rank();
    let col = 2 * l;
    let mut out = Vec::new();
    for i in 0..l {
        let a = parent.entry(2 * i + 1, col);
        let b = parent.entry(2 * i, col);
        out.push((sphere.alphabet().name(sphere.alpha_index(i)).to_string(), a, sphere.alpha(i)));
        out.push((
            sphere.alphabet().name(sphere.alpha_star_index(i)).to_string(),
            b,
            sphere.alpha_star(i),
        ));
    }
    out.push(("x".into(), parent.entry(col, col), sphere.x()));
    out
}

pub fn so_column_space(theta: &DeformMatrix) -> Result<HomogeneousSpace> {
    let l = theta.rank();
    let parent = Arc::new(MatrixCoeffAlgebra::odd_orthogonal(theta));
    HomogeneousSpace::new(invariants_of(parent, KSpec::ColumnStabilizer(2 * l))?)
}

/// `S^{2l}_θ` inside `C(SO(2l+1))_J`: the commutation table of the column
/// generators, computed as `ζ(f ×_J g)`, against the table of the sphere
/// algebra built with `×_{θ/2}`.
pub fn sphere_from_so(theta: &DeformMatrix) -> Result<SphereFromGroup> {
    let space = so_column_space(theta)?;
    let sphere = SphereAlgebra::new(theta.clone())?;
    let gens = sphere_generators(&space, &sphere);
    let group_gens: Vec<(String, Poly)> = gens
        .iter()
        .map(|(n, f, _)| (n.clone(), f.clone()))
        .collect();
    let sphere_gens: Vec<(String, Poly)> = gens.iter().map(|(n, _, s)| (n.clone(), s.clone())).collect();
    let parent = space.parent().clone();
    let group_table = commutation_table(&group_gens, |f, g| space.zeta(&parent.star(f, g)?))?;
    let sphere_table = table_map(&commutation_table(&sphere_gens, |f, g| sphere.star(f, g))?);
    let rows: Vec<RelationComparison> = group_table
        .into_iter()
        .map(|r| {
            let from_sphere = sphere_table[&(r.left.clone(), r.right.clone())].clone();
            RelationComparison {
                agree: from_sphere == r.ratio,
                left: r.left,
                right: r.right,
                from_group: r.ratio,
                from_sphere,
            }
        })
        .collect();
    Ok(SphereFromGroup {
        l: theta.rank(),
        all_agree: rows.iter().all(|r| r.agree),
        rows,
    })
}

/// `S^4_θ` from `SO(5)`, with `α × β = e^{2πiθ} β × α`.
pub fn sphere_from_so5(theta: Rational64) -> Result<SphereFromGroup> {
    sphere_from_so(&DeformMatrix::planar(theta))
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagReport {
    pub pairs_checked: usize,
    pub commutative: bool,
    pub sigma_trivial: bool,
    pub counterexample: Option<String>,
}

/// `U(2)/T²`: every pair of invariant monomials up to `max_degree` commutes
/// under `×_Q`, and σ is trivial on all effective degrees `(n, -n)`.
pub fn u2_flag(theta: &DeformMatrix, max_degree: u32) -> Result<FlagReport> {
    let parent = Arc::new(MatrixCoeffAlgebra::u2(theta)?);
    let space = HomogeneousSpace::new(invariants_of(parent.clone(), KSpec::FullTorus)?)?;
    let mons = space.subalgebra().monomials(max_degree);
    let elems: Vec<Poly> = mons
        .iter()
        .map(|m| space.zeta(&Poly::term(parent.alphabet(), m.clone(), CycScalar::one())))
        .collect::<Result<_>>()?;
    let mut pairs = 0;
    let mut counterexample = None;
    let mut sigma_trivial = true;
    for f in &elems {
        for g in &elems {
            pairs += 1;
            if counterexample.is_none() && space.star(f, g)? != space.star(g, f)? {
                counterexample = Some(format!("{f} and {g} do not commute"));
            }
            let (p, q) = (f.degree_support().remove(0), g.degree_support().remove(0));
            if p[0] + p[1] != 0 || q[0] + q[1] != 0 {
                return Err(Error::GradingMismatch(format!("flag degree {p:?} is not of the form (n, -n)")));
            }
            if !sigma(theta, &p, &q)?.is_one() {
                sigma_trivial = false;
            }
        }
    }
    Ok(FlagReport {
        pairs_checked: pairs,
        commutative: counterexample.is_none(),
        sigma_trivial,
        counterexample,
    })
}
