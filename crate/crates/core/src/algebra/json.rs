//! JSON wire format for graded elements.
//!
//! ```json
//! { "context": { "algebra": "torus", "l": 2, "theta": [["0","1/3"],["-1/3","0"]], "grading": "mono" },
//!   "terms": [ { "monomial": [1, 0], "coeff": [[0,1,1,1,0,1]] },
//!              { "monomial": [["U1", 2]], "coeff": [[1,6,-1,2,0,1]] } ] }
//! ```
//!
//! A monomial is either a degree vector (Laurent alphabets only) or a list of
//! `[generator, exponent]` pairs.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::poly::{Alphabet, Monomial, Poly};
use crate::algebra::star::GradingKind;
use crate::coeff::CycScalar;
use crate::cocycle::DeformMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextJson {
    pub algebra: String,
    pub l: usize,
    pub theta: DeformMatrix,
    pub grading: GradingKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonomialJson {
    Degree(Vec<i64>),
    Named(Vec<(String, i32)>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: MonomialJson,
    pub coeff: CycScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub context: ContextJson,
    pub terms: Vec<TermJson>,
}

pub fn element_to_json(f: &Poly, context: ContextJson) -> ElementJson {
    let alph = f.alphabet();
    let terms = f
        .terms()
        .map(|(m, c)| {
            let monomial = if alph.is_laurent() {
                MonomialJson::Degree(m.0.iter().map(|&e| e as i64).collect())
            } else {
                MonomialJson::Named(
                    m.0.iter()
                        .enumerate()
                        .filter(|(_, &e)| e != 0)
                        .map(|(i, &e)| (alph.name(i).to_string(), e))
                        .collect(),
                )
            };
            TermJson {
                monomial,
                coeff: c.clone(),
            }
        })
        .collect();
    ElementJson { context, terms }
}

pub fn element_from_json(json: &ElementJson, alphabet: &Arc<Alphabet>) -> Result<Poly> {
    if json.context.theta.rank() != json.context.l {
        return Err(Error::DimensionMismatch {
            expected: json.context.l,
            got: json.context.theta.rank(),
        });
    }
    let n = alphabet.len();
    let mut out = Poly::zero(alphabet);
    for t in &json.terms {
        let mono = match &t.monomial {
            MonomialJson::Degree(d) => {
                if !alphabet.is_laurent() {
                    return Err(Error::Config(
                        "degree-vector monomials are only valid for torus elements".into(),
                    ));
                }
                if d.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: d.len(),
                    });
                }
                Monomial(d.iter().map(|&e| e as i32).collect())
            }
            MonomialJson::Named(pairs) => {
                let mut e = vec![0i32; n];
                for (name, k) in pairs {
                    let i = alphabet
                        .index_of(name)
                        .ok_or_else(|| Error::Config(format!("unknown generator {name:?}")))?;
                    if *k < 0 && !alphabet.is_laurent() {
                        return Err(Error::Config(format!("negative exponent on {name}")));
                    }
                    e[i] += k;
                }
                Monomial(e)
            }
        };
        out.add_term(mono, t.coeff.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::sphere::SphereAlgebra;
    use crate::algebra::torus::NcTorus;
    use num_rational::Rational64;

    #[test]
    fn torus_round_trip() {
        let th = DeformMatrix::planar(Rational64::new(1, 3));
        let t = NcTorus::new(th.clone());
        let f = t
            .element(vec![
                (vec![1, -2], CycScalar::phase(Rational64::new(1, 6))),
                (vec![0, 0], CycScalar::from_ratio(3, 2)),
            ])
            .unwrap();
        let ctx = ContextJson {
            algebra: "torus".into(),
            l: 2,
            theta: th,
            grading: GradingKind::Mono,
        };
        let s = serde_json::to_string(&element_to_json(&f, ctx)).unwrap();
        let back: ElementJson = serde_json::from_str(&s).unwrap();
        assert_eq!(element_from_json(&back, t.alphabet()).unwrap(), f);
    }

    #[test]
    fn named_monomials() {
        let s = SphereAlgebra::four(Rational64::new(1, 3));
        let raw = r#"{"context":{"algebra":"sphere","l":2,"theta":[[0,"-1/3"],["1/3",0]],"grading":"mono"},
            "terms":[{"monomial":[["alpha",1],["x",2]],"coeff":[[0,1,2,1,0,1]]}]}"#;
        let j: ElementJson = serde_json::from_str(raw).unwrap();
        let f = element_from_json(&j, s.alphabet()).unwrap();
        let expect = s.alpha(0).mul_commutative(&s.x()).mul_commutative(&s.x()).scale(&CycScalar::from_int(2));
        assert_eq!(f, expect);
        let bad = raw.replace("alpha", "gamma");
        let j: ElementJson = serde_json::from_str(&bad).unwrap();
        assert!(element_from_json(&j, s.alphabet()).is_err());
    }
}
