//! Isospectral deformation of a truncated torus spectral triple.
//!
//! The Hilbert space is spanned by `|k⟩ ⊗ ψ` with lattice momenta
//! `p = k + offset`, `‖k‖_∞ ≤ N`, and a two-component spinor. `D`, `p_j`, `χ`
//! act site by site; the unitaries `U^r` act as shifts `|k⟩ ↦ |k - r⟩`, so that
//! `L(U^r) = U^r σ(p, r)` multiplies into `×_Q`.
//!
//! Truncation contract: identities are compared only on columns belonging to
//! sites with `‖k‖_∞ ≤ N - R`, where `R` is the total shift radius involved.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;

use crate::algebra::torus::{NcTorus, TorusElement};
use crate::coeff::CycScalar;
use crate::cocycle::DeformMatrix;
use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const FIBER: usize = 2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Pauli matrices `σ_x, σ_y, σ_z`.
pub fn pauli(j: usize) -> [[Complex64; 2]; 2] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    match j {
        0 => [[z, o], [o, z]],
        1 => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        _ => [[o, z], [z, -o]],
    }
}

/// Sites `k ∈ [-N, N]^l` with momenta `k + offset`.
#[derive(Clone, Debug)]
pub struct TruncatedLattice {
    l: usize,
    n: i64,
    offset: Vec<Rational64>,
    sites: Vec<Vec<i64>>,
}

impl TruncatedLattice {
    pub fn new(l: usize, n: i64, offset: Vec<Rational64>) -> Result<Self> {
        if offset.len() != l {
            return Err(Error::DimensionMismatch {
                expected: l,
                got: offset.len(),
            });
        }
        if offset.iter().any(|o| *(*o * 2).denom() != 1) {
            return Err(Error::Unsupported("offsets must be integers or half-integers".into()));
        }
        let side = (2 * n + 1) as usize;
        let total = side.pow(l as u32);
        let sites = (0..total)
            .map(|mut s| {
                (0..l)
                    .map(|_| {
                        let k = (s % side) as i64 - n;
                        s /= side;
                        k
                    })
                    .collect()
            })
            .collect();
        Ok(TruncatedLattice { l, n, offset, sites })
    }

    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn cutoff(&self) -> i64 {
        self.n
    }

    pub fn offset(&self) -> &[Rational64] {
        &self.offset
    }

    pub fn num_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn dim(&self) -> usize {
        self.sites.len() * FIBER
    }

    pub fn fiber(&self) -> usize {
        FIBER
    }

    pub fn sites(&self) -> &[Vec<i64>] {
        &self.sites
    }

    pub fn site_index(&self, k: &[i64]) -> Option<usize> {
        let side = 2 * self.n + 1;
        let mut idx = 0i64;
        let mut mul = 1i64;
        for &kj in k {
            if kj.abs() > self.n {
                return None;
            }
            idx += (kj + self.n) * mul;
            mul *= side;
        }
        Some(idx as usize)
    }

    pub fn momentum(&self, k: &[i64]) -> Vec<Rational64> {
        k.iter()
            .zip(&self.offset)
            .map(|(&kj, &o)| Rational64::from_integer(kj) + o)
            .collect()
    }

    /// Image of `k` under `p ↦ -p`, i.e. `k ↦ -k - 2·offset`.
    pub fn reflect(&self, k: &[i64]) -> Vec<i64> {
        k.iter()
            .zip(&self.offset)
            .map(|(&kj, &o)| -kj - (o * 2).to_integer())
            .collect()
    }

    /// Sites with `‖k‖_∞ ≤ N - margin`.
    pub fn interior(&self, margin: i64) -> Vec<usize> {
        let bound = self.n - margin;
        (0..self.sites.len())
            .filter(|&s| self.sites[s].iter().all(|k| k.abs() <= bound))
            .collect()
    }

    /// Interior sites whose reflections are interior too.
    pub fn symmetric_interior(&self, margin: i64) -> Vec<usize> {
        let bound = self.n - margin;
        (0..self.sites.len())
            .filter(|&s| {
                let k = &self.sites[s];
                k.iter().chain(self.reflect(k).iter()).all(|x| x.abs() <= bound)
            })
            .collect()
    }
}

/// Column-sparse matrix on the truncated space together with the largest
/// lattice displacement it induces.
#[derive(Clone, Debug)]
pub struct TruncatedOperator {
    dim: usize,
    cols: Vec<Vec<(usize, Complex64)>>,
    pub radius: i64,
}

fn merge(a: &[(usize, Complex64)], b: &[(usize, Complex64)], sign: f64) -> Vec<(usize, Complex64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1 * sign));
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1 * sign));
            i += 1;
            j += 1;
        }
    }
    out
}

impl TruncatedOperator {
    pub fn zero(dim: usize) -> Self {
        TruncatedOperator {
            dim,
            cols: vec![Vec::new(); dim],
            radius: 0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        TruncatedOperator {
            dim,
            cols: (0..dim).map(|j| vec![(j, c(1.0, 0.0))]).collect(),
            radius: 0,
        }
    }

    pub fn from_dense(m: &CMatrix, radius: i64) -> Self {
        let dim = m.nrows();
        let cols = (0..dim)
            .map(|j| {
                (0..dim)
                    .filter(|&i| m[(i, j)] != c(0.0, 0.0))
                    .map(|i| (i, m[(i, j)]))
                    .collect()
            })
            .collect();
        TruncatedOperator { dim, cols, radius }
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] += v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.cols[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map_or(c(0.0, 0.0), |(_, v)| *v)
    }

    /// Sets one entry; entries must be inserted at most once.
    fn push(&mut self, i: usize, j: usize, v: Complex64) {
        let col = &mut self.cols[j];
        let pos = col.partition_point(|(r, _)| *r < i);
        col.insert(pos, (i, v));
    }

    pub fn mul(&self, other: &TruncatedOperator) -> TruncatedOperator {
        let mut acc: Vec<Complex64> = vec![c(0.0, 0.0); self.dim];
        let mut touched: Vec<usize> = Vec::new();
        let cols = other
            .cols
            .iter()
            .map(|bcol| {
                for &(k, b) in bcol {
                    for &(i, a) in &self.cols[k] {
                        if acc[i] == c(0.0, 0.0) {
                            touched.push(i);
                        }
                        acc[i] += a * b;
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let col = touched.iter().map(|&i| (i, acc[i])).collect();
                for &i in &touched {
                    acc[i] = c(0.0, 0.0);
                }
                touched.clear();
                col
            })
            .collect();
        TruncatedOperator {
            dim: self.dim,
            cols,
            radius: self.radius + other.radius,
        }
    }

    fn combine(&self, other: &TruncatedOperator, sign: f64) -> TruncatedOperator {
        TruncatedOperator {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| merge(a, b, sign))
                .collect(),
            radius: self.radius.max(other.radius),
        }
    }

    pub fn add(&self, other: &TruncatedOperator) -> TruncatedOperator {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &TruncatedOperator) -> TruncatedOperator {
        self.combine(other, -1.0)
    }

    pub fn scale(&self, z: Complex64) -> TruncatedOperator {
        TruncatedOperator {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|&(i, v)| (i, v * z)).collect())
                .collect(),
            radius: self.radius,
        }
    }

    pub fn commutator(&self, other: &TruncatedOperator) -> TruncatedOperator {
        self.mul(other).sub(&other.mul(self))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> TruncatedOperator {
        TruncatedOperator {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|&(i, v)| (i, v.conj())).collect())
                .collect(),
            radius: self.radius,
        }
    }

    pub fn adjoint(&self) -> TruncatedOperator {
        let mut out = TruncatedOperator::zero(self.dim);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out.cols[i].push((j, v.conj()));
            }
        }
        out.radius = self.radius;
        out
    }

    /// Largest entry of `|A - B|` in the columns of the given sites.
    pub fn residual_on(&self, other: &TruncatedOperator, sites: &[usize]) -> f64 {
        let mut worst: f64 = 0.0;
        for &s in sites {
            for f in 0..FIBER {
                let col = s * FIBER + f;
                for (_, v) in merge(&self.cols[col], &other.cols[col], -1.0) {
                    worst = worst.max(v.norm());
                }
            }
        }
        worst
    }

    /// Largest entry in the columns of the given sites.
    pub fn max_on(&self, sites: &[usize]) -> f64 {
        sites
            .iter()
            .flat_map(|&s| (0..FIBER).map(move |f| s * FIBER + f))
            .flat_map(|col| self.cols[col].iter().map(|(_, v)| v.norm()))
            .fold(0.0, f64::max)
    }
}

/// `(D, p_j, C, χ)` on a truncated lattice, with the deformation `Q = θ/2`.
#[derive(Clone, Debug)]
pub struct TripleBundle {
    lattice: TruncatedLattice,
    theta: DeformMatrix,
    q: DeformMatrix,
    pub dirac: CMatrix,
    pub momenta: Vec<CMatrix>,
    /// Unitary part `V` of `C = V ∘ (complex conjugation)`; a partial map on
    /// the half-offset lattice.
    pub charge: CMatrix,
    pub chirality: Option<CMatrix>,
}

pub fn build_torus_triple(l: usize, n: i64, theta: &DeformMatrix) -> Result<TripleBundle> {
    build_torus_triple_with_offset(l, n, theta, vec![Rational64::new(1, 2); l])
}

pub fn build_torus_triple_with_offset(
    l: usize,
    n: i64,
    theta: &DeformMatrix,
    offset: Vec<Rational64>,
) -> Result<TripleBundle> {
    if !(2..=3).contains(&l) {
        return Err(Error::Unsupported(format!("torus triples need l in {{2, 3}}, got {l}")));
    }
    if n < 2 {
        return Err(Error::Unsupported(format!("cutoff N must be at least 2, got {n}")));
    }
    if theta.rank() != l {
        return Err(Error::DimensionMismatch {
            expected: l,
            got: theta.rank(),
        });
    }
    let lattice = TruncatedLattice::new(l, n, offset)?;
    let dim = lattice.dim();
    let mut dirac = CMatrix::zeros(dim, dim);
    let mut momenta = vec![CMatrix::zeros(dim, dim); l];
    let mut charge = CMatrix::zeros(dim, dim);
    let sy = pauli(1);
    for (s, k) in lattice.sites().iter().enumerate() {
        let p: Vec<f64> = lattice.momentum(k).iter().map(|x| to_f64(*x)).collect();
        for j in 0..l {
            let g = pauli(j);
            for a in 0..FIBER {
                momenta[j][(s * FIBER + a, s * FIBER + a)] = c(p[j], 0.0);
                for b in 0..FIBER {
                    dirac[(s * FIBER + a, s * FIBER + b)] += g[a][b] * (2.0 * PI * p[j]);
                }
            }
        }
        if let Some(t) = lattice.site_index(&lattice.reflect(k)) {
            for a in 0..FIBER {
                for b in 0..FIBER {
                    charge[(t * FIBER + a, s * FIBER + b)] = sy[a][b];
                }
            }
        }
    }
    let chirality = (l == 2).then(|| {
        let sz = pauli(2);
        let mut chi = CMatrix::zeros(dim, dim);
        for s in 0..lattice.num_sites() {
            for a in 0..FIBER {
                chi[(s * FIBER + a, s * FIBER + a)] = sz[a][a];
            }
        }
        chi
    });
    Ok(TripleBundle {
        lattice,
        q: theta.half(),
        theta: theta.clone(),
        dirac,
        momenta,
        charge,
        chirality,
    })
}

fn to_f64(q: Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn cis_turns(t: Rational64) -> Complex64 {
    let frac = t - t.floor();
    Complex64::from_polar(1.0, 2.0 * PI * to_f64(frac))
}

impl TripleBundle {
    pub fn lattice(&self) -> &TruncatedLattice {
        &self.lattice
    }

    pub fn theta(&self) -> &DeformMatrix {
        &self.theta
    }

    pub fn q(&self) -> &DeformMatrix {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn identity(&self) -> TruncatedOperator {
        TruncatedOperator::identity(self.dim())
    }

    pub fn dirac_op(&self) -> TruncatedOperator {
        TruncatedOperator::from_dense(&self.dirac, 0)
    }

    pub fn momentum_op(&self, j: usize) -> TruncatedOperator {
        TruncatedOperator::from_dense(&self.momenta[j], 0)
    }

    /// `C A C^{-1} = V conj(A) V*`.
    pub fn conjugate_by_c(&self, a: &TruncatedOperator) -> TruncatedOperator {
        let v = TruncatedOperator::from_dense(&self.charge, 0);
        let mut out = v.mul(&a.conj()).mul(&v.adjoint());
        out.radius = a.radius;
        out
    }

    /// `C² = V conj(V)`.
    pub fn charge_square(&self) -> CMatrix {
        &self.charge * self.charge.map(|z| z.conj())
    }

    /// Turns of `σ(p, r) = e^{-2πi p·Q r}` at site `k`.
    fn sigma_turns(&self, k: &[i64], r: &[i64], left: bool) -> Rational64 {
        let p = self.lattice.momentum(k);
        let l = self.lattice.rank();
        let mut t = Rational64::from_integer(0);
        for j in 0..l {
            for m in 0..l {
                t += if left {
                    p[j] * self.q.get(j, m) * r[m]
                } else {
                    Rational64::from_integer(r[j]) * self.q.get(j, m) * p[m]
                };
            }
        }
        -t
    }

    fn diagonal(&self, r: &[i64], left: bool) -> TruncatedOperator {
        let mut m = TruncatedOperator::zero(self.dim());
        for (s, k) in self.lattice.sites().iter().enumerate() {
            let z = cis_turns(self.sigma_turns(k, r, left));
            for a in 0..FIBER {
                m.push(s * FIBER + a, s * FIBER + a, z);
            }
        }
        m
    }

    /// Diagonal unitary `σ(p, r)`.
    pub fn sigma_p(&self, r: &[i64]) -> TruncatedOperator {
        self.diagonal(r, true)
    }

    /// Diagonal unitary `σ(r, p)`.
    pub fn sigma_p_right(&self, r: &[i64]) -> TruncatedOperator {
        self.diagonal(r, false)
    }

    /// `U^r: |k⟩ ↦ |k - r⟩`, zero where the image leaves the truncation.
    pub fn shift(&self, r: &[i64]) -> TruncatedOperator {
        let mut m = TruncatedOperator::zero(self.dim());
        for (s, k) in self.lattice.sites().iter().enumerate() {
            let t: Vec<i64> = k.iter().zip(r).map(|(a, b)| a - b).collect();
            if let Some(ti) = self.lattice.site_index(&t) {
                for a in 0..FIBER {
                    m.push(ti * FIBER + a, s * FIBER + a, c(1.0, 0.0));
                }
            }
        }
        m.radius = r.iter().map(|x| x.abs()).max().unwrap_or(0);
        m
    }

    fn check_support(&self, f: &TorusElement) -> Result<()> {
        let rad = NcTorus::support_radius(f);
        if rad > self.lattice.cutoff() {
            return Err(Error::SupportExceedsCutoff {
                radius: rad,
                cutoff: self.lattice.cutoff(),
            });
        }
        if f.alphabet().len() != self.lattice.rank() || !f.alphabet().is_laurent() {
            return Err(Error::GradingMismatch("element is not over a torus of this rank".into()));
        }
        Ok(())
    }

    fn represent(&self, f: &TorusElement, left: bool) -> Result<TruncatedOperator> {
        self.check_support(f)?;
        let mut out = TruncatedOperator::zero(self.dim());
        for (r, coeff) in NcTorus::coefficients(f) {
            let op = self.shift(&r).mul(&self.diagonal(&r, left));
            out = out.add(&op.scale(coeff.to_complex()));
        }
        out.radius = NcTorus::support_radius(f);
        Ok(out)
    }

    /// `L(f) = Σ f_r U^r σ(p, r)`.
    pub fn l_rep(&self, f: &TorusElement) -> Result<TruncatedOperator> {
        self.represent(f, true)
    }

    /// `R(f) = Σ f_r U^r σ(r, p)`.
    pub fn r_rep(&self, f: &TorusElement) -> Result<TruncatedOperator> {
        self.represent(f, false)
    }

    /// `C L(f)* C^{-1}`, the reality-structure form of `R`.
    pub fn r_rep_via_charge(&self, f: &TorusElement) -> Result<TruncatedOperator> {
        Ok(self.conjugate_by_c(&self.l_rep(f)?.adjoint()))
    }

    /// `F = D|D|^{-1}`; `D` acts on each site as `2π γ·p`, so `|D| = 2π|p|`.
    pub fn sign_of_dirac(&self) -> Result<TruncatedOperator> {
        let dim = self.dim();
        let mut f = CMatrix::zeros(dim, dim);
        for (s, k) in self.lattice.sites().iter().enumerate() {
            let p: Vec<f64> = self.lattice.momentum(k).iter().map(|x| to_f64(*x)).collect();
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::SingularDirac);
            }
            for a in 0..FIBER {
                for b in 0..FIBER {
                    f[(s * FIBER + a, s * FIBER + b)] =
                        self.dirac[(s * FIBER + a, s * FIBER + b)] / (2.0 * PI * norm);
                }
            }
        }
        Ok(TruncatedOperator::from_dense(&f, 0))
    }

    pub fn torus(&self) -> NcTorus {
        NcTorus::new(self.theta.clone())
    }
}

/// Schatten exponent: finite `p ≥ 1` or the operator norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum SchattenP {
    Finite(u32),
    Infinity,
}

impl SchattenP {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" => Ok(SchattenP::Infinity),
            t => t
                .parse::<u32>()
                .ok()
                .filter(|&p| p >= 1)
                .map(SchattenP::Finite)
                .ok_or_else(|| Error::Config(format!("bad Schatten exponent {t:?}"))),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SchattenP::Finite(p) => p.to_string(),
            SchattenP::Infinity => "inf".into(),
        }
    }

    pub fn norm(&self, singular_values: &[f64]) -> f64 {
        match self {
            SchattenP::Infinity => singular_values.iter().cloned().fold(0.0, f64::max),
            SchattenP::Finite(p) => singular_values
                .iter()
                .map(|s| s.powi(*p as i32))
                .sum::<f64>()
                .powf(1.0 / *p as f64),
        }
    }
}

/// Singular values in decreasing order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().singular_values().iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

#[derive(Clone, Debug, Serialize)]
pub struct SchattenNorm {
    pub p: String,
    pub deformed: f64,
    pub undeformed: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchattenReport {
    pub cutoff: i64,
    pub element: String,
    pub singular_values: Vec<f64>,
    pub undeformed_singular_values: Vec<f64>,
    pub max_abs_difference: f64,
    pub norms: Vec<SchattenNorm>,
}

/// Singular values of `[F, L(u)]` for the bundle's θ and for θ = 0 on the
/// same truncation.
pub fn schatten_report(bundle: &TripleBundle, u: &TorusElement, p_values: &[SchattenP]) -> Result<SchattenReport> {
    let l = bundle.lattice.rank();
    let flat = build_torus_triple_with_offset(
        l,
        bundle.lattice.cutoff(),
        &DeformMatrix::zero(l),
        bundle.lattice.offset().to_vec(),
    )?;
    let f = bundle.sign_of_dirac()?;
    let sv = singular_values(&f.commutator(&bundle.l_rep(u)?).to_dense());
    let sv0 = singular_values(&f.commutator(&flat.l_rep(u)?).to_dense());
    let max_abs_difference = sv
        .iter()
        .zip(&sv0)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let norms = p_values
        .iter()
        .map(|p| SchattenNorm {
            p: p.label(),
            deformed: p.norm(&sv),
            undeformed: p.norm(&sv0),
        })
        .collect();
    Ok(SchattenReport {
        cutoff: bundle.lattice.cutoff(),
        element: u.to_string(),
        singular_values: sv,
        undeformed_singular_values: sv0,
        max_abs_difference,
        norms,
    })
}

pub fn schatten_csv(reports: &[SchattenReport]) -> String {
    let mut out = String::from("cutoff,element,index,deformed,undeformed\n");
    for r in reports {
        for (i, (a, b)) in r.singular_values.iter().zip(&r.undeformed_singular_values).enumerate() {
            out.push_str(&format!("{},\"{}\",{},{:.15e},{:.15e}\n", r.cutoff, r.element, i, a, b));
        }
    }
    out
}

/// Sparse operator with exact cyclotomic entries, for identities that need
/// no spectral calculus. Dirac entries are those of `D / 2π`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactOperator {
    dim: usize,
    entries: BTreeMap<(usize, usize), CycScalar>,
}

impl ExactOperator {
    pub fn zero(dim: usize) -> Self {
        ExactOperator {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn insert(&mut self, i: usize, j: usize, v: CycScalar) {
        let e = self.entries.entry((i, j)).or_insert_with(CycScalar::zero);
        *e += &v;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> CycScalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn add(&self, other: &ExactOperator) -> ExactOperator {
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.insert(i, j, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> ExactOperator {
        let mut out = ExactOperator::zero(self.dim);
        for (&(i, j), v) in &self.entries {
            out.insert(i, j, v * c);
        }
        out
    }

    pub fn sub(&self, other: &ExactOperator) -> ExactOperator {
        self.add(&other.scale(&CycScalar::from_int(-1)))
    }

    pub fn mul(&self, other: &ExactOperator) -> ExactOperator {
        let mut rows: BTreeMap<usize, Vec<(usize, &CycScalar)>> = BTreeMap::new();
        for (&(k, j), v) in &other.entries {
            rows.entry(k).or_default().push((j, v));
        }
        let mut out = ExactOperator::zero(self.dim);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rows.get(&k) {
                for (j, b) in row {
                    out.insert(i, *j, a * *b);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &ExactOperator) -> ExactOperator {
        self.mul(other).sub(&other.mul(self))
    }

    /// Whether every entry in the checked columns vanishes.
    pub fn vanishes_on(&self, sites: &[usize]) -> bool {
        let set: std::collections::BTreeSet<usize> = sites.iter().copied().collect();
        self.entries.keys().all(|(_, j)| !set.contains(&(j / FIBER)))
    }
}

impl TripleBundle {
    /// `D / 2π` with exact entries.
    pub fn exact_dirac(&self) -> ExactOperator {
        let mut out = ExactOperator::zero(self.dim());
        let gam = |j: usize, a: usize, b: usize| -> CycScalar {
            match (j, a, b) {
                (0, 0, 1) | (0, 1, 0) => CycScalar::one(),
                (1, 0, 1) => -CycScalar::i(),
                (1, 1, 0) => CycScalar::i(),
                (2, 0, 0) => CycScalar::one(),
                (2, 1, 1) => CycScalar::from_int(-1),
                _ => CycScalar::zero(),
            }
        };
        for (s, k) in self.lattice.sites().iter().enumerate() {
            let p = self.lattice.momentum(k);
            for (j, pj) in p.iter().enumerate() {
                let pj = CycScalar::from_ratio(*pj.numer(), *pj.denom());
                for a in 0..FIBER {
                    for b in 0..FIBER {
                        let g = gam(j, a, b);
                        if !g.is_zero() {
                            out.insert(s * FIBER + a, s * FIBER + b, &g * &pj);
                        }
                    }
                }
            }
        }
        out
    }

    fn exact_represent(&self, f: &TorusElement, left: bool) -> Result<ExactOperator> {
        self.check_support(f)?;
        let mut out = ExactOperator::zero(self.dim());
        for (r, coeff) in NcTorus::coefficients(f) {
            for (s, k) in self.lattice.sites().iter().enumerate() {
                let t: Vec<i64> = k.iter().zip(&r).map(|(a, b)| a - b).collect();
                let Some(ti) = self.lattice.site_index(&t) else { continue };
                let v = &coeff * &CycScalar::phase(self.sigma_turns(k, &r, left));
                for a in 0..FIBER {
                    out.insert(ti * FIBER + a, s * FIBER + a, v.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn exact_l_rep(&self, f: &TorusElement) -> Result<ExactOperator> {
        self.exact_represent(f, true)
    }

    pub fn exact_r_rep(&self, f: &TorusElement) -> Result<ExactOperator> {
        self.exact_represent(f, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundle(n: i64) -> TripleBundle {
        build_torus_triple(2, n, &DeformMatrix::planar(Rational64::new(1, 3))).unwrap()
    }

    #[test]
    fn dimensions() {
        let b = bundle(2);
        assert_eq!(b.dim(), 50);
        assert_eq!(b.dirac.nrows(), 50);
        let b3 = build_torus_triple(3, 2, &DeformMatrix::uniform(3, Rational64::new(1, 3))).unwrap();
        assert_eq!(b3.dim(), 250);
        assert!(b3.chirality.is_none());
    }

    #[test]
    fn rejects_bad_parameters() {
        let th = DeformMatrix::planar(Rational64::new(1, 3));
        assert!(build_torus_triple(2, 1, &th).is_err());
        assert!(build_torus_triple(4, 3, &DeformMatrix::zero(4)).is_err());
    }

    #[test]
    fn sigma_of_zero_is_identity() {
        let b = bundle(2);
        assert!((b.sigma_p(&[0, 0]).to_dense() - b.identity().to_dense()).norm() == 0.0);
    }

    #[test]
    fn integer_offset_makes_dirac_singular() {
        let th = DeformMatrix::planar(Rational64::new(1, 3));
        let b = build_torus_triple_with_offset(2, 2, &th, vec![Rational64::from_integer(0); 2]).unwrap();
        assert!(matches!(b.sign_of_dirac(), Err(Error::SingularDirac)));
    }

    #[test]
    fn schatten_exponents_parse() {
        assert_eq!(SchattenP::parse("2").unwrap(), SchattenP::Finite(2));
        assert_eq!(SchattenP::parse("inf").unwrap(), SchattenP::Infinity);
        assert!(SchattenP::parse("0").is_err());
        assert!((SchattenP::Finite(2).norm(&[3.0, 4.0]) - 5.0).abs() < 1e-12);
    }
}
