//! Group 2-cocycles on `Z^l` built from a skew-symmetric parameter matrix.
//!
//! Sign convention: [`rho`] carries `exp{-2πi Σ_{j<k} r_j θ_jk s_k}`. The
//! planar star product `f_r × g_s = e^{2πiθ r_1 s_2} f_r g_s` is recovered by
//! taking `θ_12 = -θ`, which is what [`DeformMatrix::planar`] builds.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::CycScalar;
use crate::error::{Error, Result};

/// Parses `"p/q"`, `"p"`, or `"-p/q"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let t = s.trim();
    let bad = || Error::BadRational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => t.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad()),
    }
}

pub fn format_rational(q: &Rational64) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A skew-symmetric rational `l × l` matrix: a noncommutativity parameter
/// `θ`, or a deformation direction `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformMatrix {
    entries: Vec<Vec<Rational64>>,
}

impl DeformMatrix {
    pub fn new(entries: Vec<Vec<Rational64>>) -> Result<Self> {
        let l = entries.len();
        for row in &entries {
            if row.len() != l {
                return Err(Error::NotSquare);
            }
        }
        for j in 0..l {
            for k in j..l {
                if entries[j][k] != -entries[k][j] {
                    return Err(Error::NotSkew(j, k));
                }
            }
        }
        Ok(DeformMatrix { entries })
    }

    pub fn zero(l: usize) -> Self {
        DeformMatrix {
            entries: vec![vec![Rational64::zero(); l]; l],
        }
    }

    /// Rank-2 matrix with `θ_12 = -θ`, so that `e_1 × e_2 = e^{2πiθ} e_2 × e_1`
    /// once halved into a star-product direction.
    pub fn planar(theta: Rational64) -> Self {
        DeformMatrix {
            entries: vec![
                vec![Rational64::zero(), -theta],
                vec![theta, Rational64::zero()],
            ],
        }
    }

    /// Rank-`l` matrix with the planar pattern on every pair `j < k`.
    pub fn uniform(l: usize, theta: Rational64) -> Self {
        let mut m = DeformMatrix::zero(l);
        for j in 0..l {
            for k in (j + 1)..l {
                m.entries[j][k] = -theta;
                m.entries[k][j] = theta;
            }
        }
        m
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        DeformMatrix::new(entries)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, j: usize, k: usize) -> Rational64 {
        self.entries[j][k]
    }

    pub fn entries(&self) -> &[Vec<Rational64>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: Rational64) -> Self {
        DeformMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// `Q = θ/2`.
    pub fn half(&self) -> Self {
        self.scale(Rational64::new(1, 2))
    }

    pub fn neg(&self) -> Self {
        self.scale(Rational64::from_integer(-1))
    }

    pub fn add(&self, other: &DeformMatrix) -> Result<Self> {
        self.check_rank(other.rank())?;
        Ok(DeformMatrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        })
    }

    fn check_rank(&self, got: usize) -> Result<()> {
        if got != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got,
            });
        }
        Ok(())
    }

    /// `r · θ s = Σ_{j,k} r_j θ_jk s_k`.
    pub fn pairing(&self, r: &[i64], s: &[i64]) -> Result<Rational64> {
        self.check_rank(r.len())?;
        self.check_rank(s.len())?;
        Ok(self.pairing_unchecked(r, s))
    }

    pub(crate) fn pairing_unchecked(&self, r: &[i64], s: &[i64]) -> Rational64 {
        let mut acc = Rational64::zero();
        for (j, &rj) in r.iter().enumerate() {
            if rj == 0 {
                continue;
            }
            for (k, &sk) in s.iter().enumerate() {
                if sk != 0 {
                    acc += self.entries[j][k] * (rj * sk);
                }
            }
        }
        acc
    }

    /// `Σ_{j<k} r_j θ_jk s_k`.
    pub fn upper_pairing(&self, r: &[i64], s: &[i64]) -> Result<Rational64> {
        self.check_rank(r.len())?;
        self.check_rank(s.len())?;
        let l = self.rank();
        let mut acc = Rational64::zero();
        for j in 0..l {
            for k in (j + 1)..l {
                acc += self.entries[j][k] * (r[j] * s[k]);
            }
        }
        Ok(acc)
    }

    /// Block form `self ⊕ (-self)`.
    pub fn doubled(&self) -> DoubledMatrix {
        DoubledMatrix { q: self.clone() }
    }
}

impl fmt::Display for DeformMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, row) in self.entries.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (k, x) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", format_rational(x))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Parses the bracket form `[[0,1/3],[-1/3,0]]`; entries may be quoted.
impl FromStr for DeformMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '"').collect();
        let bad = || Error::Config(format!("cannot parse matrix {s:?}"));
        let inner = t
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(bad)?;
        let rows: Vec<Vec<String>> = inner
            .split("],[")
            .map(|row| row.split(',').map(str::to_string).collect())
            .collect();
        DeformMatrix::from_strings(&rows)
    }
}

impl Serialize for DeformMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        rows.serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalLit {
    Int(i64),
    Str(String),
}

impl<'de> Deserialize<'de> for DeformMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<Vec<RationalLit>> = Vec::deserialize(deserializer)?;
        let entries = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|lit| match lit {
                        RationalLit::Int(n) => Ok(Rational64::from_integer(n)),
                        RationalLit::Str(s) => parse_rational(&s),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        DeformMatrix::new(entries).map_err(D::Error::custom)
    }
}

/// The `2l × 2l` block matrix `J = Q ⊕ (-Q)` acting on bidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledMatrix {
    q: DeformMatrix,
}

impl DoubledMatrix {
    pub fn q(&self) -> &DeformMatrix {
        &self.q
    }

    pub fn rank(&self) -> usize {
        2 * self.q.rank()
    }

    /// Dense `2l × 2l` form.
    pub fn to_matrix(&self) -> DeformMatrix {
        let l = self.q.rank();
        let mut m = DeformMatrix::zero(2 * l);
        for j in 0..l {
            for k in 0..l {
                m.entries[j][k] = self.q.get(j, k);
                m.entries[l + j][l + k] = -self.q.get(j, k);
            }
        }
        m
    }
}

/// `ρ(r, s) = exp{-2πi Σ_{j<k} r_j θ_jk s_k}`.
pub fn rho(theta: &DeformMatrix, r: &[i64], s: &[i64]) -> Result<CycScalar> {
    Ok(CycScalar::phase(-theta.upper_pairing(r, s)?))
}

/// `σ(r, s) = exp{-πi Σ_{j,k} r_j θ_jk s_k}`.
pub fn sigma(theta: &DeformMatrix, r: &[i64], s: &[i64]) -> Result<CycScalar> {
    Ok(CycScalar::phase(-theta.pairing(r, s)? / 2))
}

/// `b(r) = exp{πi Σ_{j<k} r_j θ_jk r_k}`, the 1-cochain with
/// `σ(r,s) = ρ(r,s) b(r+s) b(r)^{-1} b(s)^{-1}`.
pub fn coboundary_between(theta: &DeformMatrix, r: &[i64]) -> Result<CycScalar> {
    Ok(CycScalar::phase(theta.upper_pairing(r, r)? / 2))
}

/// Outcome of checking `c(r, s+t) c(s,t) = c(r,s) c(r+s,t)` on samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub checked: usize,
    pub first_failure: Option<(Vec<i64>, Vec<i64>, Vec<i64>)>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn check_cocycle<F>(c: F, samples: &[(Vec<i64>, Vec<i64>, Vec<i64>)]) -> CocycleReport
where
    F: Fn(&[i64], &[i64]) -> CycScalar,
{
    let mut checked = 0;
    for (r, s, t) in samples {
        checked += 1;
        let lhs = c(r, &vadd(s, t)) * c(s, t);
        let rhs = c(r, s) * c(&vadd(r, s), t);
        if lhs != rhs {
            return CocycleReport {
                checked,
                first_failure: Some((r.clone(), s.clone(), t.clone())),
            };
        }
    }
    CocycleReport {
        checked,
        first_failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn rejects_non_skew() {
        let m = DeformMatrix::new(vec![vec![q(0, 1), q(1, 3)], vec![q(1, 3), q(0, 1)]]);
        assert!(matches!(m, Err(Error::NotSkew(0, 1))));
        let m = DeformMatrix::new(vec![vec![q(1, 3), q(0, 1)], vec![q(0, 1), q(0, 1)]]);
        assert!(matches!(m, Err(Error::NotSkew(0, 0))));
    }

    #[test]
    fn rho_planar_example() {
        let mut th = DeformMatrix::zero(2);
        th.entries[0][1] = q(2, 7);
        th.entries[1][0] = q(-2, 7);
        let v = rho(&th, &[1, 0], &[0, 1]).unwrap();
        assert_eq!(v, CycScalar::phase(q(-2, 7)));
        assert!(rho(&th, &[0, 0], &[3, -5]).unwrap().is_one());
    }

    #[test]
    fn planar_recovers_positive_sign_product() {
        // e^{2πiθ r_1 s_2} with θ = 1/5.
        let th = DeformMatrix::planar(q(1, 5));
        for (r, s) in [([1, 0], [0, 1]), ([2, 3], [-1, 4]), ([0, 2], [5, 0])] {
            let expect = CycScalar::phase(q(1, 5) * r[0] * s[1]);
            assert_eq!(rho(&th, &r, &s).unwrap(), expect);
        }
    }

    #[test]
    fn sigma_example() {
        let mut th = DeformMatrix::zero(2);
        th.entries[0][1] = q(1, 3);
        th.entries[1][0] = q(-1, 3);
        assert_eq!(sigma(&th, &[1, 0], &[0, 1]).unwrap(), CycScalar::phase(q(-1, 6)));
    }

    #[test]
    fn dimension_mismatch() {
        let th = DeformMatrix::planar(q(1, 3));
        assert!(matches!(
            rho(&th, &[1, 0, 0], &[0, 1]),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn doubled_blocks() {
        let qm = DeformMatrix::planar(q(1, 3)).half();
        let j = qm.doubled().to_matrix();
        assert_eq!(j.rank(), 4);
        assert_eq!(j.get(0, 1), qm.get(0, 1));
        assert_eq!(j.get(2, 3), -qm.get(0, 1));
        assert_eq!(j.get(0, 3), Rational64::zero());
        assert_eq!(j.get(1, 2), Rational64::zero());
    }

    #[test]
    fn coboundary_zero_and_undeformed() {
        let th = DeformMatrix::planar(q(1, 3));
        assert!(coboundary_between(&th, &[0, 0]).unwrap().is_one());
        let z = DeformMatrix::zero(3);
        for r in [[1, 2, 3], [-4, 0, 7]] {
            assert!(coboundary_between(&z, &r).unwrap().is_one());
            assert!(rho(&z, &r, &[2, 2, 2]).unwrap().is_one());
            assert!(sigma(&z, &r, &[2, 2, 2]).unwrap().is_one());
        }
    }

    #[test]
    fn parse_and_serde() {
        assert_eq!(parse_rational(" -2/6 ").unwrap(), q(-1, 3));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let m: DeformMatrix = serde_json::from_str(r#"[[0,"1/3"],["-1/3",0]]"#).unwrap();
        assert_eq!(m, DeformMatrix::planar(q(-1, 3)));
        let back = serde_json::to_string(&m).unwrap();
        assert_eq!(back, r#"[["0","1/3"],["-1/3","0"]]"#);
        assert!(serde_json::from_str::<DeformMatrix>(r#"[[0,"1/3"],["1/3",0]]"#).is_err());
    }
}
