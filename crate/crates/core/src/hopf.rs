//! Deformed compact quantum groups on bigraded matrix-coefficient algebras.
//!
//! The coproduct, counit and antipode are the classical ones, defined on the
//! commutative base; only the product is twisted (by `J = Q ⊕ (-Q)`). Whether
//! the classical maps stay compatible with the twisted product is something the
//! checks below establish, not something built in.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::poly::{same_alphabet, Alphabet, Monomial, Poly};
use crate::algebra::star::{star_product, StarContext};
use crate::algebra::tensor::TensorElement;
use crate::coeff::CycScalar;
use crate::cocycle::DeformMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    /// `T^l`: diagonal unitaries.
    #[serde(rename = "t2")]
    Torus,
    /// `U(2)` with its diagonal torus.
    #[serde(rename = "u2")]
    U2,
    /// Entries of the defining representation of `SO(2l+1)` in a weight basis.
    #[serde(rename = "so5-entries")]
    OddOrthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WVariant {
    W,
    WPrime,
}

#[derive(Clone, Debug)]
enum NormalForm {
    Free,
    /// `u_aa ↦ U_a`, `u*_aa ↦ U_a^{-1}`.
    Torus(Arc<Alphabet>),
    /// `C[u11, u12, u21, u22, D]` with `D = conj(det)` and `D·det = 1`.
    Unitary2(Arc<Alphabet>),
}

/// Polynomial algebra on matrix coefficients `u_ab` of a representation
/// whose basis vectors carry torus weights `w_a`.
///
/// `u_ab` has bidegree `(-w_a, w_b)`, flattened as `[left…, right…]`.
#[derive(Clone, Debug)]
pub struct MatrixCoeffAlgebra {
    kind: GroupKind,
    l: usize,
    weights: Vec<Vec<i64>>,
    alphabet: Arc<Alphabet>,
    ctx: StarContext,
    entries: Vec<Vec<Option<usize>>>,
    star_entries: Vec<Vec<Option<usize>>>,
    delta_images: Vec<TensorElement>,
    normal: NormalForm,
}

fn unit(l: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; l];
    e[i] = 1;
    e
}

fn bidegree(left: &[i64], right: &[i64]) -> Vec<i64> {
    left.iter().chain(right).copied().collect()
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

impl MatrixCoeffAlgebra {
    /// `C(T^l)_J` for a rank-`l` θ.
    pub fn torus(theta: &DeformMatrix) -> Self {
        let l = theta.rank();
        let weights: Vec<_> = (0..l).map(|a| unit(l, a)).collect();
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut conj = Vec::new();
        let mut entries = vec![vec![None; l]; l];
        let mut star_entries = vec![vec![None; l]; l];
        for a in 0..l {
            names.push(format!("u{0}{0}", a + 1));
            degrees.push(bidegree(&neg(&weights[a]), &weights[a]));
            conj.push(l + a);
            entries[a][a] = Some(a);
        }
        for a in 0..l {
            names.push(format!("u{0}{0}*", a + 1));
            degrees.push(bidegree(&weights[a], &neg(&weights[a])));
            conj.push(a);
            star_entries[a][a] = Some(l + a);
        }
        let alphabet = Arc::new(Alphabet::new(format!("C(T{l})"), names, degrees, conj, false).unwrap());
        let nf_names = (0..l).map(|a| format!("U{}", a + 1)).collect();
        let nf_degrees = weights.iter().map(|w| bidegree(&neg(w), w)).collect();
        let nf = Arc::new(
            Alphabet::new(format!("C(T{l}) mod unitarity"), nf_names, nf_degrees, (0..l).collect(), true)
                .unwrap(),
        );
        Self::assemble(GroupKind::Torus, theta, weights, alphabet, entries, star_entries, NormalForm::Torus(nf))
    }

    /// `C(U(2))_J`; θ must have rank 2.
    pub fn u2(theta: &DeformMatrix) -> Result<Self> {
        if theta.rank() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: theta.rank(),
            });
        }
        let weights = vec![unit(2, 0), unit(2, 1)];
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut conj = Vec::new();
        let mut entries = vec![vec![None; 2]; 2];
        let mut star_entries = vec![vec![None; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let i = 2 * a + b;
                names.push(format!("u{}{}", a + 1, b + 1));
                degrees.push(bidegree(&neg(&weights[a]), &weights[b]));
                conj.push(4 + i);
                entries[a][b] = Some(i);
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                let i = 2 * a + b;
                names.push(format!("u{}{}*", a + 1, b + 1));
                degrees.push(bidegree(&weights[a], &neg(&weights[b])));
                conj.push(i);
                star_entries[a][b] = Some(4 + i);
            }
        }
        let alphabet = Arc::new(Alphabet::new("C(U2)", names, degrees, conj, false)?);
        let mut nf_names: Vec<String> = alphabet.names()[..4].to_vec();
        nf_names.push("D".into());
        let mut nf_degrees: Vec<Vec<i64>> = (0..4).map(|i| alphabet.degree(i).to_vec()).collect();
        nf_degrees.push(vec![1, 1, -1, -1]);
        let nf = Arc::new(Alphabet::plain("C(U2) mod unitarity", nf_names, nf_degrees)?);
        Ok(Self::assemble(
            GroupKind::U2,
            theta,
            weights,
            alphabet,
            entries,
            star_entries,
            NormalForm::Unitary2(nf),
        ))
    }

    /// Entries `x_ab` of `SO(2l+1)` in the weight basis
    /// `e_1, -e_1, …, e_l, -e_l, 0`. No orthogonality relations are imposed.
    pub fn odd_orthogonal(theta: &DeformMatrix) -> Self {
        let l = theta.rank();
        let n = 2 * l + 1;
        let mut weights = Vec::with_capacity(n);
        for i in 0..l {
            weights.push(unit(l, i));
            weights.push(neg(&unit(l, i)));
        }
        weights.push(vec![0; l]);
        let bar = |a: usize| if a == 2 * l { a } else { a ^ 1 };
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut conj = Vec::new();
        let mut entries = vec![vec![None; n]; n];
        let mut star_entries = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                names.push(format!("x{}{}", a + 1, b + 1));
                degrees.push(bidegree(&neg(&weights[a]), &weights[b]));
                conj.push(bar(a) * n + bar(b));
                entries[a][b] = Some(a * n + b);
                star_entries[a][b] = Some(bar(a) * n + bar(b));
            }
        }
        let alphabet =
            Arc::new(Alphabet::new(format!("C(SO{n})"), names, degrees, conj, false).unwrap());
        Self::assemble(
            GroupKind::OddOrthogonal,
            theta,
            weights,
            alphabet,
            entries,
            star_entries,
            NormalForm::Free,
        )
    }

    pub fn for_group(kind: GroupKind, theta: &DeformMatrix) -> Result<Self> {
        match kind {
            GroupKind::Torus => Ok(Self::torus(theta)),
            GroupKind::U2 => Self::u2(theta),
            GroupKind::OddOrthogonal => Ok(Self::odd_orthogonal(theta)),
        }
    }

    fn assemble(
        kind: GroupKind,
        theta: &DeformMatrix,
        weights: Vec<Vec<i64>>,
        alphabet: Arc<Alphabet>,
        entries: Vec<Vec<Option<usize>>>,
        star_entries: Vec<Vec<Option<usize>>>,
        normal: NormalForm,
    ) -> Self {
        let n = weights.len();
        let factors = vec![alphabet.clone(), alphabet.clone()];
        let mut delta_images = vec![TensorElement::zero(factors.clone()); alphabet.len()];
        for table in [&entries, &star_entries] {
            for a in 0..n {
                for b in 0..n {
                    let Some(g) = table[a][b] else { continue };
                    let mut img = TensorElement::zero(factors.clone());
                    for c in 0..n {
                        if let (Some(x), Some(y)) = (table[a][c], table[c][b]) {
                            img.add_term(
                                vec![
                                    Monomial::generator(alphabet.len(), x),
                                    Monomial::generator(alphabet.len(), y),
                                ],
                                CycScalar::one(),
                            );
                        }
                    }
                    delta_images[g] = img;
                }
            }
        }
        MatrixCoeffAlgebra {
            kind,
            l: theta.rank(),
            weights,
            ctx: StarContext::bi(theta.half()),
            alphabet,
            entries,
            star_entries,
            delta_images,
            normal,
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// The `×_J` context.
    pub fn context(&self) -> &StarContext {
        &self.ctx
    }

    pub fn is_unitary(&self) -> bool {
        !matches!(self.kind, GroupKind::OddOrthogonal)
    }

    pub fn entry_index(&self, a: usize, b: usize) -> Option<usize> {
        self.entries.get(a)?.get(b).copied().flatten()
    }

    pub fn star_entry_index(&self, a: usize, b: usize) -> Option<usize> {
        self.star_entries.get(a)?.get(b).copied().flatten()
    }

    /// `u_ab`, or zero when the coefficient vanishes identically on the group.
    pub fn entry(&self, a: usize, b: usize) -> Poly {
        match self.entry_index(a, b) {
            Some(i) => Poly::generator(&self.alphabet, i),
            None => Poly::zero(&self.alphabet),
        }
    }

    pub fn star_entry(&self, a: usize, b: usize) -> Poly {
        match self.star_entry_index(a, b) {
            Some(i) => Poly::generator(&self.alphabet, i),
            None => Poly::zero(&self.alphabet),
        }
    }

    pub fn one(&self) -> Poly {
        Poly::one(&self.alphabet)
    }

    pub fn left_degree(&self, d: &[i64]) -> Vec<i64> {
        d[..self.l].to_vec()
    }

    pub fn right_degree(&self, d: &[i64]) -> Vec<i64> {
        d[self.l..].to_vec()
    }

    fn check(&self, f: &Poly) -> Result<()> {
        if !same_alphabet(f.alphabet(), &self.alphabet) {
            return Err(Error::NotMatrixCoefficient(format!(
                "element over {} is not over {}",
                f.alphabet().label(),
                self.alphabet.label()
            )));
        }
        Ok(())
    }

    fn check_tensor(&self, h: &TensorElement, arity: usize) -> Result<()> {
        if h.arity() != arity || !h.factors().iter().all(|a| same_alphabet(a, &self.alphabet)) {
            return Err(Error::NotMatrixCoefficient(format!(
                "expected a {arity}-fold tensor over {}",
                self.alphabet.label()
            )));
        }
        Ok(())
    }

    pub fn star(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.check(f)?;
        star_product(&self.ctx, f, g)
    }

    fn pair(&self) -> Vec<Arc<Alphabet>> {
        vec![self.alphabet.clone(), self.alphabet.clone()]
    }

    /// Product on `A ⊗ A` twisted by `J ⊕ J`.
    pub fn tensor_star(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        let ctxs: Vec<Option<&StarContext>> = vec![Some(&self.ctx); a.arity()];
        a.mul(b, &ctxs)
    }

    fn delta_monomial(&self, m: &Monomial) -> TensorElement {
        let mut acc = TensorElement::one(self.pair());
        let plain = [None, None];
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&self.delta_images[i], &plain).expect("same shape");
            }
        }
        acc
    }

    /// `Δu_ab = Σ_c u_ac ⊗ u_cb`, extended over the commutative base.
    pub fn coproduct(&self, f: &Poly) -> Result<TensorElement> {
        self.check(f)?;
        let mut out = TensorElement::zero(self.pair());
        for (m, c) in f.terms() {
            for (k, d) in self.delta_monomial(m).terms() {
                out.add_term(k.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// `Δ` applied to factor `i` of a tensor, giving one more factor.
    pub fn coproduct_on(&self, h: &TensorElement, i: usize) -> Result<TensorElement> {
        if i >= h.arity() || !same_alphabet(&h.factors()[i], &self.alphabet) {
            return Err(Error::NotMatrixCoefficient("factor is not over this algebra".into()));
        }
        let mut factors = h.factors().to_vec();
        factors.insert(i + 1, self.alphabet.clone());
        let mut cache: HashMap<Monomial, TensorElement> = HashMap::new();
        h.map_terms(factors, |key| {
            let img = cache
                .entry(key[i].clone())
                .or_insert_with(|| self.delta_monomial(&key[i]))
                .clone();
            let mut t = TensorElement::zero(
                key.iter()
                    .enumerate()
                    .flat_map(|(j, _)| {
                        if j == i {
                            vec![self.alphabet.clone(), self.alphabet.clone()]
                        } else {
                            vec![h.factors()[j].clone()]
                        }
                    })
                    .collect(),
            );
            for (k2, c) in img.terms() {
                let mut nk = key[..i].to_vec();
                nk.extend(k2.iter().cloned());
                nk.extend(key[i + 1..].iter().cloned());
                t.add_term(nk, c.clone());
            }
            Ok(t)
        })
    }

    fn counit_monomial(&self, m: &Monomial) -> bool {
        let n = self.size();
        m.0.iter().enumerate().all(|(i, &e)| {
            e == 0 || (0..n).any(|a| self.entries[a][a] == Some(i) || self.star_entries[a][a] == Some(i))
        })
    }

    /// `ε(f) = f(1)`.
    pub fn counit(&self, f: &Poly) -> Result<CycScalar> {
        self.check(f)?;
        Ok(f.terms()
            .filter(|(m, _)| self.counit_monomial(m))
            .map(|(_, c)| c.clone())
            .sum())
    }

    fn antipode_generator(&self, i: usize) -> Option<usize> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                if self.entries[a][b] == Some(i) {
                    return self.star_entries[b][a];
                }
                if self.star_entries[a][b] == Some(i) {
                    return self.entries[b][a];
                }
            }
        }
        None
    }

    /// `S(u_ab) = u*_ba`, `S(u*_ab) = u_ba`; defined on unitary groups only.
    pub fn antipode(&self, f: &Poly) -> Result<Poly> {
        self.check(f)?;
        if !self.is_unitary() {
            return Err(Error::NoInverseRule);
        }
        let images: Vec<usize> = (0..self.alphabet.len())
            .map(|i| self.antipode_generator(i).ok_or(Error::NoInverseRule))
            .collect::<Result<_>>()?;
        let mut out = Poly::zero(&self.alphabet);
        for (m, c) in f.terms() {
            let mut e = vec![0i32; self.alphabet.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[images[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn antipode_on(&self, h: &TensorElement, i: usize) -> Result<TensorElement> {
        h.map_factor(i, &self.alphabet, |p| self.antipode(p))
    }

    /// `m(a ⊗ b) = a ×_J b`.
    pub fn multiply(&self, h: &TensorElement) -> Result<Poly> {
        self.check_tensor(h, 2)?;
        let mut out = Poly::zero(&self.alphabet);
        for (k, c) in h.terms() {
            let d0 = self.alphabet.degree_of(&k[0]);
            let d1 = self.alphabet.degree_of(&k[1]);
            out.add_term(k[0].mul(&k[1]), c * &self.ctx.phase(&d0, &d1));
        }
        Ok(out)
    }

    /// `(m(id ⊗ S)Δf, m(S ⊗ id)Δf)`.
    pub fn antipode_identity(&self, f: &Poly) -> Result<(Poly, Poly)> {
        let d = self.coproduct(f)?;
        let left = self.multiply(&self.antipode_on(&d, 1)?)?;
        let right = self.multiply(&self.antipode_on(&d, 0)?)?;
        Ok((left, right))
    }

    /// The coordinate ring modulo the group relations, when they are modelled.
    pub fn normal_alphabet(&self) -> &Arc<Alphabet> {
        match &self.normal {
            NormalForm::Free => &self.alphabet,
            NormalForm::Torus(a) | NormalForm::Unitary2(a) => a,
        }
    }

    /// Canonical representative modulo the unitarity ideal (identity for the
    /// free orthogonal entries algebra).
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.check(f)?;
        match &self.normal {
            NormalForm::Free => Ok(f.clone()),
            NormalForm::Torus(nf) => {
                let l = self.l;
                Ok(f.map_linear(nf, |m| {
                    let e: Vec<i32> = (0..l).map(|a| m.0[a] - m.0[l + a]).collect();
                    Poly::term(nf, Monomial(e), CycScalar::one())
                }))
            }
            NormalForm::Unitary2(nf) => Ok(reduce_unitary2(nf, &substitute_unitary2(nf, f))),
        }
    }

    pub fn tensor_normal_form(&self, h: &TensorElement) -> Result<TensorElement> {
        let mut out = h.clone();
        let nf = self.normal_alphabet().clone();
        for i in 0..h.arity() {
            out = out.map_factor(i, &nf, |p| self.normal_form(p))?;
        }
        Ok(out)
    }

    pub fn equal_mod_relations(&self, f: &Poly, g: &Poly) -> Result<bool> {
        Ok(self.normal_form(&f.sub(g))?.is_zero())
    }

    pub fn tensor_equal_mod_relations(&self, a: &TensorElement, b: &TensorElement) -> Result<bool> {
        Ok(self.tensor_normal_form(&a.sub(b))?.is_zero())
    }

    fn basis(&self, key: &[Monomial]) -> (Poly, Poly) {
        (
            Poly::term(&self.alphabet, key[0].clone(), CycScalar::one()),
            Poly::term(&self.alphabet, key[1].clone(), CycScalar::one()),
        )
    }

    /// `W(f ⊗ g) = Δf ×_{J⊕J} (1 ⊗ g)`, `W′(f ⊗ g) = (f ⊗ 1) ×_{J⊕J} Δg`.
    pub fn fundamental_w(&self, h: &TensorElement, variant: WVariant) -> Result<TensorElement> {
        self.check_tensor(h, 2)?;
        let one = self.one();
        h.map_terms(self.pair(), |key| {
            let (f, g) = self.basis(key);
            match variant {
                WVariant::W => self.tensor_star(&self.coproduct(&f)?, &TensorElement::pure(&[&one, &g])),
                WVariant::WPrime => self.tensor_star(&TensorElement::pure(&[&f, &one]), &self.coproduct(&g)?),
            }
        })
    }

    /// `W⁻¹(f ⊗ g) = (id ⊗ S)Δf ×_{J⊕J} (1 ⊗ g)`,
    /// `W′⁻¹(f ⊗ g) = (f ⊗ 1) ×_{J⊕J} (S ⊗ id)Δg`.
    pub fn fundamental_w_inverse(&self, h: &TensorElement, variant: WVariant) -> Result<TensorElement> {
        self.check_tensor(h, 2)?;
        let one = self.one();
        h.map_terms(self.pair(), |key| {
            let (f, g) = self.basis(key);
            match variant {
                WVariant::W => self.tensor_star(
                    &self.antipode_on(&self.coproduct(&f)?, 1)?,
                    &TensorElement::pure(&[&one, &g]),
                ),
                WVariant::WPrime => self.tensor_star(
                    &TensorElement::pure(&[&f, &one]),
                    &self.antipode_on(&self.coproduct(&g)?, 0)?,
                ),
            }
        })
    }

    /// Bidegree bookkeeping for `W` / `W′` on a basis tensor `f ⊗ g`.
    ///
    /// For `W` every output term `t_1 ⊗ t_2` must have `left(t_1) = left(f)`,
    /// `right(t_1) + left(t_2) = left(g)` and `right(t_2) = right(f) + right(g)`;
    /// for `W′` the mirrored statements. Returns the first offending term.
    pub fn w_grading_violation(
        &self,
        input: &[Monomial],
        output: &TensorElement,
        variant: WVariant,
    ) -> Option<String> {
        let df = self.alphabet.degree_of(&input[0]);
        let dg = self.alphabet.degree_of(&input[1]);
        let (lf, rf) = (self.left_degree(&df), self.right_degree(&df));
        let (lg, rg) = (self.left_degree(&dg), self.right_degree(&dg));
        let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        for (k, _) in output.terms() {
            let d1 = self.alphabet.degree_of(&k[0]);
            let d2 = self.alphabet.degree_of(&k[1]);
            let (l1, r1) = (self.left_degree(&d1), self.right_degree(&d1));
            let (l2, r2) = (self.left_degree(&d2), self.right_degree(&d2));
            let mid = add(&r1, &l2);
            let ok = match variant {
                WVariant::W => l1 == lf && mid == lg && r2 == add(&rf, &rg),
                WVariant::WPrime => l1 == add(&lf, &lg) && mid == rf && r2 == rg,
            };
            if !ok {
                return Some(format!(
                    "{} ⊗ {}",
                    self.alphabet.format_monomial(&k[0]),
                    self.alphabet.format_monomial(&k[1])
                ));
            }
        }
        None
    }

    /// Every generator with its name.
    pub fn generators(&self) -> Vec<(String, Poly)> {
        (0..self.alphabet.len())
            .map(|i| (self.alphabet.name(i).to_string(), Poly::generator(&self.alphabet, i)))
            .collect()
    }
}

/// `u*_11 = u22·D`, `u*_12 = -u21·D`, `u*_21 = -u12·D`, `u*_22 = u11·D`.
fn substitute_unitary2(nf: &Arc<Alphabet>, f: &Poly) -> Poly {
    let gen = |i: usize| Poly::generator(nf, i);
    let d = gen(4);
    let images: Vec<Poly> = vec![
        gen(0),
        gen(1),
        gen(2),
        gen(3),
        gen(3).mul_commutative(&d),
        gen(2).mul_commutative(&d).neg(),
        gen(1).mul_commutative(&d).neg(),
        gen(0).mul_commutative(&d),
    ];
    let mut out = Poly::zero(nf);
    for (m, c) in f.terms() {
        let mut t = Poly::constant(nf, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = t.mul_commutative(&images[i].pow_commutative(e as u32));
            }
        }
        out = out.add(&t);
    }
    out
}

/// Rewrites `D·u11·u22 → 1 + D·u12·u21` to exhaustion. The relation
/// `D(u11u22 - u12u21) = 1` alone generates the ideal, so the result is a
/// unique normal form.
fn reduce_unitary2(nf: &Arc<Alphabet>, f: &Poly) -> Poly {
    let mut current = f.clone();
    loop {
        let mut next = Poly::zero(nf);
        let mut rewrote = false;
        for (m, c) in current.terms() {
            let e = &m.0;
            if e[4] >= 1 && e[0] >= 1 && e[3] >= 1 {
                rewrote = true;
                let mut low = e.clone();
                low[4] -= 1;
                low[0] -= 1;
                low[3] -= 1;
                next.add_term(Monomial(low.clone()), c.clone());
                low[4] += 1;
                low[1] += 1;
                low[2] += 1;
                next.add_term(Monomial(low), c.clone());
            } else {
                next.add_term(m.clone(), c.clone());
            }
        }
        current = next;
        if !rewrote {
            return current;
        }
    }
}
