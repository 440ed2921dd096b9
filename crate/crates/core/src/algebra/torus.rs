use std::sync::Arc;

use crate::algebra::poly::{Alphabet, Monomial, Poly};
use crate::algebra::star::{star_product, StarContext};
use crate::coeff::CycScalar;
use crate::cocycle::DeformMatrix;
use crate::error::{Error, Result};

/// Element of the noncommutative torus: a trigonometric polynomial
/// `Σ c_r U^r` over `Z^l`.
pub type TorusElement = Poly;

/// Laurent alphabet `U_1, …, U_l` with `deg U_j = e_j`.
pub fn torus_alphabet(l: usize) -> Arc<Alphabet> {
    let names = (1..=l).map(|j| format!("U{j}")).collect();
    let degrees = (0..l)
        .map(|j| {
            let mut e = vec![0i64; l];
            e[j] = 1;
            e
        })
        .collect();
    Arc::new(Alphabet::new(format!("torus{l}"), names, degrees, (0..l).collect(), true).unwrap())
}

/// The polynomial noncommutative torus `C(T^l_θ)`: the twisted group algebra
/// of `Z^l` with product `×_Q`, `Q = θ/2`.
#[derive(Clone, Debug)]
pub struct NcTorus {
    alphabet: Arc<Alphabet>,
    theta: DeformMatrix,
    ctx: StarContext,
}

impl NcTorus {
    pub fn new(theta: DeformMatrix) -> Self {
        let l = theta.rank();
        NcTorus {
            alphabet: torus_alphabet(l),
            ctx: StarContext::mono(theta.half()),
            theta,
        }
    }

    pub fn rank(&self) -> usize {
        self.theta.rank()
    }

    pub fn theta(&self) -> &DeformMatrix {
        &self.theta
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn context(&self) -> &StarContext {
        &self.ctx
    }

    /// The unitary `U^r`.
    pub fn unitary(&self, r: &[i64]) -> Result<TorusElement> {
        if r.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: r.len(),
            });
        }
        let exps = r.iter().map(|&x| x as i32).collect();
        Ok(Poly::term(&self.alphabet, Monomial(exps), CycScalar::one()))
    }

    pub fn element<I>(&self, coeffs: I) -> Result<TorusElement>
    where
        I: IntoIterator<Item = (Vec<i64>, CycScalar)>,
    {
        let mut out = Poly::zero(&self.alphabet);
        for (r, c) in coeffs {
            out = out.add(&self.unitary(&r)?.scale(&c));
        }
        Ok(out)
    }

    pub fn star(&self, f: &TorusElement, g: &TorusElement) -> Result<TorusElement> {
        star_product(&self.ctx, f, g)
    }

    /// Fourier coefficients `r ↦ f_r`.
    pub fn coefficients(f: &TorusElement) -> Vec<(Vec<i64>, CycScalar)> {
        f.terms()
            .map(|(m, c)| (m.0.iter().map(|&e| e as i64).collect(), c.clone()))
            .collect()
    }

    /// Largest `‖r‖_∞` in the support.
    pub fn support_radius(f: &TorusElement) -> i64 {
        f.terms()
            .map(|(m, _)| m.0.iter().map(|e| e.abs() as i64).max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}
