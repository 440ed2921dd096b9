use std::f64::consts::PI;
use std::sync::Arc;

use num_rational::Rational64;
use serde::Serialize;
use serde_json::json;

use crate::algebra::poly::Poly;
use crate::algebra::torus::{NcTorus, TorusElement};
use crate::chern::{ch0, ch1_with_count, ch1, instanton_projector, perturbed_instanton, sphere_boundary, AlgebraMatrix};
use crate::coeff::CycScalar;
use crate::error::Result;
use crate::sampling;
use crate::spin::{build_torus_triple_with_offset, schatten_csv, schatten_report, singular_values, TripleBundle};

use super::{check, Check, Outcome, Params};

const RESIDUAL_TOL: f64 = 1e-12;
const SCHATTEN_TOL: f64 = 1e-10;

fn unit_shifts(l: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for j in 0..l {
        let mut e = vec![0i64; l];
        e[j] = 1;
        out.push(e.clone());
        for k in (j + 1)..l {
            let mut f = e.clone();
            f[k] = 1;
            out.push(f.clone());
            f[k] = -1;
            out.push(f);
        }
    }
    out
}

/// The three shifts used for the Schatten table, padded with zeros.
pub fn schatten_shifts(l: usize) -> Vec<Vec<i64>> {
    [[1, 0], [1, 1], [2, 1]]
        .iter()
        .map(|r| {
            let mut v = vec![0i64; l];
            v[..2].copy_from_slice(r);
            v
        })
        .collect()
}

fn element_pairs(b: &TripleBundle, n: usize, seed: u64, name: &str) -> Result<Vec<(TorusElement, TorusElement)>> {
    let t = b.torus();
    let l = b.lattice().rank();
    let shifts = unit_shifts(l);
    let mut out = Vec::new();
    for r in &shifts {
        for s in &shifts {
            out.push((t.unitary(r)?, t.unitary(s)?));
        }
    }
    let mut rng = sampling::rng_for(seed, name);
    for _ in 0..n {
        out.push((
            sampling::poly(&mut rng, t.alphabet(), 2, 3),
            sampling::poly(&mut rng, t.alphabet(), 2, 3),
        ));
    }
    Ok(out)
}

/// Largest residual over `items`; the first one above `tol` is reported.
fn residuals<T, F, D>(items: &[T], tol: f64, mut f: F, describe: D) -> Result<Outcome>
where
    F: FnMut(&T) -> Result<f64>,
    D: Fn(&T) -> String,
{
    let mut worst = 0.0f64;
    let mut cx = None;
    for it in items {
        let r = f(it)?;
        worst = worst.max(r);
        if r > tol && cx.is_none() {
            cx = Some(format!("{}: residual {r:.3e}", describe(it)));
        }
    }
    Ok(Outcome::new(items.len(), cx).with_detail(&json!({ "max_residual": worst, "tolerance": tol })))
}

fn describe_pair(p: &(TorusElement, TorusElement)) -> String {
    format!("f={} g={}", p.0, p.1)
}

fn triple_at(p: &Params, n: i64, theta: &crate::cocycle::DeformMatrix) -> Result<TripleBundle> {
    build_torus_triple_with_offset(p.l, n, theta, p.offset_values()?)
}

#[derive(Serialize)]
struct GrowthRow {
    cutoff: i64,
    element: String,
    p: String,
    norm: f64,
}

pub(super) fn spin(p: &Params) -> Result<Vec<Check>> {
    let b = Arc::new(triple_at(p, p.n, &p.theta)?);
    let (n, seed) = (p.samples, p.seed);
    let mut out = Vec::new();

    let bb = b.clone();
    out.push(check("l-multiplicative", "L(f) L(g) = L(f ×_Q g)", move || {
        let t = bb.torus();
        let items = element_pairs(&bb, n, seed, "l-multiplicative")?;
        residuals(
            &items,
            RESIDUAL_TOL,
            |(f, g)| {
                let (lf, lg) = (bb.l_rep(f)?, bb.l_rep(g)?);
                let inner = bb.lattice().interior(lf.radius + lg.radius);
                Ok(lf.mul(&lg).residual_on(&bb.l_rep(&t.star(f, g)?)?, &inner))
            },
            describe_pair,
        )
    }));

    let bb = b.clone();
    out.push(check("r-anti-multiplicative", "R(f) R(g) = R(g ×_Q f)", move || {
        let t = bb.torus();
        let items = element_pairs(&bb, n, seed, "r-anti-multiplicative")?;
        residuals(
            &items,
            RESIDUAL_TOL,
            |(f, g)| {
                let (rf, rg) = (bb.r_rep(f)?, bb.r_rep(g)?);
                let inner = bb.lattice().interior(rf.radius + rg.radius);
                Ok(rf.mul(&rg).residual_on(&bb.r_rep(&t.star(g, f)?)?, &inner))
            },
            describe_pair,
        )
    }));

    let bb = b.clone();
    out.push(check("l-r-commute", "[L(f), R(g)] = 0", move || {
        let items = element_pairs(&bb, n, seed, "l-r-commute")?;
        residuals(
            &items,
            RESIDUAL_TOL,
            |(f, g)| {
                let (lf, rg) = (bb.l_rep(f)?, bb.r_rep(g)?);
                let inner = bb.lattice().interior(lf.radius + rg.radius);
                Ok(lf.commutator(&rg).max_on(&inner))
            },
            describe_pair,
        )
    }));

    let bb = b.clone();
    out.push(check("first-order", "[[D, L(f)], R(g)] = 0", move || {
        let d = bb.dirac_op();
        let items = element_pairs(&bb, n, seed, "first-order")?;
        residuals(
            &items,
            RESIDUAL_TOL,
            |(f, g)| {
                let (lf, rg) = (bb.l_rep(f)?, bb.r_rep(g)?);
                let inner = bb.lattice().interior(lf.radius + rg.radius);
                Ok(d.commutator(&lf).commutator(&rg).max_on(&inner))
            },
            describe_pair,
        )
    }));

    let bb = b.clone();
    out.push(check(
        "reality",
        "R(f) = C L(f)* C⁻¹, C D C⁻¹ = D, C² = -1",
        move || {
            let lat = bb.lattice();
            let sym = lat.symmetric_interior(0);
            let d = bb.dirac_op();
            let minus = bb.identity().scale((-1.0).into());
            let c2 = crate::spin::TruncatedOperator::from_dense(&bb.charge_square(), 0);
            let base = bb.conjugate_by_c(&d).residual_on(&d, &sym).max(c2.residual_on(&minus, &sym));
            let items = element_pairs(&bb, n, seed, "reality")?;
            let mut o = residuals(
                &items,
                RESIDUAL_TOL,
                |(f, _)| {
                    let rf = bb.r_rep(f)?;
                    let inner = lat.symmetric_interior(rf.radius);
                    Ok(rf.residual_on(&bb.r_rep_via_charge(f)?, &inner))
                },
                describe_pair,
            )?;
            if base > RESIDUAL_TOL && o.counterexample.is_none() {
                o.counterexample = Some(format!("charge conjugation residual {base:.3e}"));
            }
            Ok(o)
        },
    ));

    let bb = b.clone();
    out.push(check("dirac-commutator-norm", "‖[D, L(U^r)]‖ = 2π|r|", move || {
        let t = bb.torus();
        let d = bb.dirac_op();
        let shifts = unit_shifts(bb.lattice().rank());
        residuals(
            &shifts,
            1e-9,
            |r| {
                let c = d.commutator(&bb.l_rep(&t.unitary(r)?)?);
                let norm = singular_values(&c.to_dense())[0];
                let want = 2.0 * PI * (r.iter().map(|x| (x * x) as f64).sum::<f64>()).sqrt();
                Ok((norm - want).abs())
            },
            |r| format!("r={r:?}"),
        )
    }));

    let bb = b.clone();
    let ps = p.schatten_values();
    out.push(check(
        "schatten-theta-independence",
        "sorted singular values of [F, L(U^r)] do not depend on θ",
        move || {
            let t = bb.torus();
            let reports = schatten_shifts(bb.lattice().rank())
                .iter()
                .map(|r| schatten_report(&bb, &t.unitary(r)?, &ps))
                .collect::<Result<Vec<_>>>()?;
            let worst = reports.iter().map(|r| r.max_abs_difference).fold(0.0, f64::max);
            let cx = reports
                .iter()
                .find(|r| r.max_abs_difference > SCHATTEN_TOL)
                .map(|r| format!("{}: difference {:.3e}", r.element, r.max_abs_difference));
            let table: Vec<_> = reports
                .iter()
                .map(|r| json!({ "cutoff": r.cutoff, "element": r.element, "norms": r.norms, "max_abs_difference": r.max_abs_difference }))
                .collect();
            let mut o = Outcome::new(reports.len(), cx)
                .with_detail(&json!({ "max_abs_difference": worst, "tolerance": SCHATTEN_TOL, "table": table }));
            o.csv = Some(schatten_csv(&reports));
            Ok(o)
        },
    ));

    let pp = p.clone();
    out.push(check(
        "schatten-growth",
        "finite Schatten norms of [F, L(U^r)] grow with the cutoff",
        move || {
            let step = if pp.l == 2 { 2 } else { 1 };
            let cutoffs: Vec<i64> = [pp.n - step, pp.n, pp.n + step].into_iter().filter(|&c| c >= 2).collect();
            let ps: Vec<_> = pp
                .schatten_values()
                .into_iter()
                .filter(|p| matches!(p, crate::spin::SchattenP::Finite(_)))
                .collect();
            let mut rows = Vec::new();
            let mut cx = None;
            let shifts = schatten_shifts(pp.l);
            let mut prev: Option<Vec<f64>> = None;
            for &c in &cutoffs {
                let bc = triple_at(&pp, c, &pp.theta)?;
                let t = bc.torus();
                let mut cur = Vec::new();
                for r in &shifts {
                    let rep = schatten_report(&bc, &t.unitary(r)?, &ps)?;
                    for nm in &rep.norms {
                        cur.push(nm.deformed);
                        rows.push(GrowthRow {
                            cutoff: c,
                            element: rep.element.clone(),
                            p: nm.p.clone(),
                            norm: nm.deformed,
                        });
                    }
                }
                if let Some(pv) = &prev {
                    if cx.is_none() && pv.iter().zip(&cur).any(|(a, b)| b <= a) {
                        cx = Some(format!("a norm does not increase at cutoff {c}"));
                    }
                }
                prev = Some(cur);
            }
            Ok(Outcome::new(cutoffs.len(), cx).with_detail(&rows))
        },
    ));

    let bb = b;
    out.push(check(
        "exact-identities",
        "L(f)L(g) = L(f ×_Q g), [L(f), R(g)] = 0, [[D, L(f)], R(g)] = 0 over exact cyclotomic entries",
        move || {
            let t = NcTorus::new(bb.theta().clone());
            let d = bb.exact_dirac();
            let shifts = unit_shifts(bb.lattice().rank());
            let half = CycScalar::from_ratio(1, 2);
            let items: Vec<(Poly, Poly)> = shifts
                .iter()
                .zip(shifts.iter().rev())
                .map(|(r, s)| Ok((t.unitary(r)?.add(&t.unitary(s)?.scale(&half)), t.unitary(s)?)))
                .collect::<Result<_>>()?;
            super::scan(items, |(f, g)| {
                let inner = bb.lattice().interior(NcTorus::support_radius(f) + NcTorus::support_radius(g));
                let (lf, lg, rg) = (bb.exact_l_rep(f)?, bb.exact_l_rep(g)?, bb.exact_r_rep(g)?);
                let ok = lf.mul(&lg).sub(&bb.exact_l_rep(&t.star(f, g)?)?).vanishes_on(&inner)
                    && lf.commutator(&rg).vanishes_on(&inner)
                    && d.commutator(&lf).commutator(&rg).vanishes_on(&inner);
                Ok((!ok).then(|| format!("f={f} g={g}")))
            })
        },
    ));
    Ok(out)
}

pub(super) fn chern(p: &Params) -> Result<Vec<Check>> {
    let th: Rational64 = p.planar_scalar();
    let cert = match instanton_projector(th) {
        Ok(c) => Arc::new(c),
        Err(e) => {
            let msg = e.to_string();
            return Ok(vec![check("projector-certified", "p = p* = p × p modulo the sphere relation", move || {
                Ok(Outcome::new(0, Some(msg.clone())))
            })]);
        }
    };
    let subject = Arc::new(if p.negative_control {
        perturbed_instanton(th)?
    } else {
        cert.projector.clone()
    });
    let mut out = Vec::new();

    let (s, c) = (subject.clone(), cert.clone());
    let negative = p.negative_control;
    out.push(check(
        "projector-certified",
        "p = p* = p × p modulo the sphere relation",
        move || {
            let self_adjoint = s.adjoint().sub(&s)?.is_zero_mod_sphere()?;
            let idempotent = s.mul(&s)?.sub(&s)?.is_zero_mod_sphere()?;
            let cx = match (self_adjoint, idempotent) {
                (true, true) => None,
                (false, _) => Some("p* ≠ p".to_string()),
                (_, false) => Some("p × p ≠ p".to_string()),
            };
            Ok(Outcome::new(c.tried, cx).with_detail(&json!({
                "phases": c.phases,
                "candidates_tried": c.tried,
                "negative_control": negative,
            })))
        },
    ));

    let s = subject.clone();
    out.push(check("projector-trace", "tr p = 2", move || {
        let sp = s.sphere();
        let tr = sp.reduce(&s.trace())?;
        Ok(Outcome::new(1, (tr != sp.constant(CycScalar::from_int(2))).then(|| format!("tr p = {tr}"))))
    }));

    let s = subject.clone();
    out.push(check("ch0-vanishes", "ch_0(p) = ⟨p - ½⟩ = 0", move || {
        let c0 = ch0(&s)?;
        Ok(Outcome::new(1, (!c0.is_zero()).then(|| format!("ch_0 = {c0}"))))
    }));

    let sp = cert.projector.sphere().clone();
    out.push(check(
        "control-trivial-ch0",
        "ch_0 detects the trivial rank-4 projector",
        move || {
            let c0 = ch0(&AlgebraMatrix::identity(&sp, 4))?;
            Ok(Outcome::new(1, c0.is_zero().then(|| "ch_0(1) vanished".to_string())))
        },
    ));

    out.push(check(
        "control-perturbed-projector",
        "a phase-perturbed instanton matrix is not a projector",
        move || {
            let q = perturbed_instanton(th)?;
            Ok(Outcome::new(1, q.is_projection()?.then(|| "perturbed matrix is idempotent".to_string())))
        },
    ));

    if p.k >= 1 {
        let s = subject.clone();
        out.push(check(
            "ch1-vanishes",
            "ch_1(p) = ⟨(p - ½) ⊗ p̄ ⊗ p̄⟩ = 0 in A ⊗ Ā ⊗ Ā",
            move || {
                let (c1, before) = ch1_with_count(&s)?;
                let cx = (!c1.is_zero()).then(|| format!("{} terms survive", c1.num_terms()));
                Ok(Outcome::new(before, cx)
                    .with_detail(&json!({ "terms_before": before, "terms_after": c1.num_terms() })))
            },
        ));

        let s = subject.clone();
        out.push(check("ch1-cycle", "b ch_1(p) = 0, b∘b = 0", move || {
            let sp = s.sphere();
            let c1 = ch1(&s)?;
            let bc = sphere_boundary(sp, &c1)?;
            let bb = sphere_boundary(sp, &bc)?;
            Ok(Outcome::new(1, (!bc.is_zero() || !bb.is_zero()).then(|| "boundary does not vanish".to_string())))
        }));

        let s = subject;
        out.push(check(
            "ch1-relabeling",
            "ch_1 is unchanged by permuting the basis",
            move || {
                let c1 = ch1(&s)?;
                let r = ch1(&s.permute(&[2, 0, 3, 1])?)?;
                Ok(Outcome::new(1, (r != c1).then(|| "relabeled chain differs".to_string())))
            },
        ));
    }
    Ok(out)
}
