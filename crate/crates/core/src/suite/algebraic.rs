use std::sync::Arc;

use crate::algebra::poly::{Alphabet, Poly};
use crate::algebra::sphere::{commutation_table, SphereAlgebra};
use crate::algebra::star::{composed_context, deform_compose, StarContext};
use crate::algebra::torus::NcTorus;
use crate::coeff::CycScalar;
use crate::cocycle::{check_cocycle, coboundary_between, rho, sigma, CocycleReport, DeformMatrix};
use crate::error::Result;
use crate::sampling::{self, SampleRng};

use super::{check, scan, Check, Outcome, Params};

const BOUND: i64 = 6;

type Triple = (Vec<i64>, Vec<i64>, Vec<i64>);

fn triple(rng: &mut SampleRng, l: usize) -> Triple {
    (
        sampling::int_vector(rng, l, BOUND),
        sampling::int_vector(rng, l, BOUND),
        sampling::int_vector(rng, l, BOUND),
    )
}

fn triples(seed: u64, name: &str, l: usize, n: usize) -> Vec<Triple> {
    let mut rng = sampling::rng_for(seed, name);
    (0..n).map(|_| triple(&mut rng, l)).collect()
}

fn from_cocycle_report(rep: CocycleReport) -> Outcome {
    let cx = rep
        .first_failure
        .map(|(r, s, t)| format!("r={r:?} s={s:?} t={t:?}"));
    Outcome::new(rep.checked, cx)
}

pub(super) fn cocycle(p: &Params) -> Result<Vec<Check>> {
    let (l, n, seed) = (p.l, p.samples, p.seed);
    let th = Arc::new(p.theta.clone());
    let mut out = Vec::new();

    let t = th.clone();
    out.push(check("cocycle-rho", "ρ(r,s+t)ρ(s,t) = ρ(r,s)ρ(r+s,t)", move || {
        let samples = triples(seed, "cocycle-rho", l, n);
        Ok(from_cocycle_report(check_cocycle(
            |r, s| rho(&t, r, s).expect("rank matches"),
            &samples,
        )))
    }));

    let t = th.clone();
    out.push(check("cocycle-sigma", "σ(r,s+t)σ(s,t) = σ(r,s)σ(r+s,t)", move || {
        let samples = triples(seed, "cocycle-sigma", l, n);
        Ok(from_cocycle_report(check_cocycle(
            |r, s| sigma(&t, r, s).expect("rank matches"),
            &samples,
        )))
    }));

    out.push(check(
        "cocycle-random-theta",
        "ρ and σ satisfy the cocycle identity for random θ with denominators ≤ 12",
        move || {
            let mut rng = sampling::rng_for(seed, "cocycle-random-theta");
            let cases: Vec<(DeformMatrix, Triple)> = (0..n)
                .map(|_| (sampling::theta_up_to(&mut rng, l, 12), triple(&mut rng, l)))
                .collect();
            scan(cases, |(t, tr)| {
                let one = [tr.clone()];
                for (label, rep) in [
                    ("ρ", check_cocycle(|r, s| rho(t, r, s).expect("rank"), &one)),
                    ("σ", check_cocycle(|r, s| sigma(t, r, s).expect("rank"), &one)),
                ] {
                    if !rep.passed() {
                        return Ok(Some(format!("{label} fails for θ={t} at {tr:?}")));
                    }
                }
                Ok(None)
            })
        },
    ));

    let t = th.clone();
    out.push(check(
        "sigma-rho-cohomologous",
        "σ(r,s) = ρ(r,s) b(r+s) b(r)⁻¹ b(s)⁻¹",
        move || {
            scan(triples(seed, "sigma-rho-cohomologous", l, n), |(r, s, _)| {
                let rs: Vec<i64> = r.iter().zip(s).map(|(a, b)| a + b).collect();
                let b = |v: &[i64]| coboundary_between(&t, v);
                let rhs = rho(&t, r, s)? * b(&rs)? * b(r)?.conj() * b(s)?.conj();
                Ok((sigma(&t, r, s)? != rhs).then(|| format!("r={r:?} s={s:?}")))
            })
        },
    ));

    let t = th.clone();
    out.push(check(
        "sigma-commutation-factor",
        "σ(r,s) σ(s,r)⁻¹ = e^{-2πi r·θs}",
        move || {
            scan(triples(seed, "sigma-commutation-factor", l, n), |(r, s, _)| {
                let lhs = sigma(&t, r, s)? * sigma(&t, s, r)?.conj();
                let rhs = CycScalar::phase(-t.pairing(r, s)?);
                Ok((lhs != rhs).then(|| format!("r={r:?} s={s:?}")))
            })
        },
    ));

    let t = th;
    out.push(check("cocycle-normalized", "c(0,r) = c(r,0) = 1 for c = ρ, σ", move || {
        let zero = vec![0i64; l];
        scan(triples(seed, "cocycle-normalized", l, n), |(r, _, _)| {
            let vals = [rho(&t, &zero, r)?, rho(&t, r, &zero)?, sigma(&t, &zero, r)?, sigma(&t, r, &zero)?];
            Ok((!vals.iter().all(|v| v.is_one())).then(|| format!("r={r:?}")))
        })
    }));
    Ok(out)
}

fn random_elements(seed: u64, name: &str, alg: &Arc<Alphabet>, d: u32, n: usize, k: usize) -> Vec<Vec<Poly>> {
    let mut rng = sampling::rng_for(seed, name);
    (0..n)
        .map(|_| (0..k).map(|_| sampling::poly(&mut rng, alg, d, 3)).collect())
        .collect()
}

fn random_homogeneous(seed: u64, name: &str, alg: &Arc<Alphabet>, d: u32, n: usize) -> Vec<(Poly, Poly)> {
    let mut rng = sampling::rng_for(seed, name);
    let mut one = || {
        let m = sampling::monomial(&mut rng, alg, d);
        Poly::term(alg, m, sampling::scalar(&mut rng))
    };
    (0..n).map(|_| (one(), one())).collect()
}

/// Checks shared by every monomial-graded deformation: associativity, the
/// involution, the unit, and reversibility of `×_Q` by `-Q`.
fn product_checks<S>(
    out: &mut Vec<Check>,
    prefix: &'static str,
    alg: Arc<Alphabet>,
    ctx: StarContext,
    star: S,
    p: &Params,
) where
    S: Fn(&Poly, &Poly) -> Result<Poly> + Send + Sync + Clone + 'static,
{
    let (n, d, seed) = (p.samples, p.max_degree, p.seed);
    let names: [&'static str; 4] = match prefix {
        "torus" => ["torus-associative", "torus-involution", "torus-unit", "torus-reversibility"],
        _ => ["sphere-associative", "sphere-involution", "sphere-unit", "sphere-reversibility"],
    };

    let (a, s) = (alg.clone(), star.clone());
    out.push(check(names[0], "(f × g) × h = f × (g × h)", move || {
        scan(random_elements(seed, names[0], &a, d, n, 3), |v| {
            let lhs = s(&s(&v[0], &v[1])?, &v[2])?;
            let rhs = s(&v[0], &s(&v[1], &v[2])?)?;
            Ok((lhs != rhs).then(|| format!("f={} g={} h={}", v[0], v[1], v[2])))
        })
    }));

    let (a, s) = (alg.clone(), star.clone());
    out.push(check(names[1], "(f × g)* = g* × f*, f** = f", move || {
        scan(random_elements(seed, names[1], &a, d, n, 2), |v| {
            let lhs = s(&v[0], &v[1])?.conj();
            let rhs = s(&v[1].conj(), &v[0].conj())?;
            Ok((lhs != rhs || v[0].conj().conj() != v[0]).then(|| format!("f={} g={}", v[0], v[1])))
        })
    }));

    let (a, s) = (alg.clone(), star);
    out.push(check(names[2], "1 × f = f × 1 = f", move || {
        let one = Poly::one(&a);
        scan(random_elements(seed, names[2], &a, d, n, 1), |v| {
            Ok((s(&one, &v[0])? != v[0] || s(&v[0], &one)? != v[0]).then(|| format!("f={}", v[0])))
        })
    }));

    let a = alg;
    out.push(check(
        names[3],
        "deforming ×_Q by -Q gives the commutative product; by K gives ×_{Q+K}",
        move || {
            let neg = StarContext::with_kind(ctx.kind(), ctx.direction().neg());
            let mut rng = sampling::rng_for(seed, "reversibility-direction");
            let k = StarContext::with_kind(ctx.kind(), sampling::theta(&mut rng, ctx.direction().rank()).half());
            let sum = composed_context(&ctx, &k)?;
            scan(random_homogeneous(seed, names[3], &a, d, n), |(f, g)| {
                if deform_compose(&ctx, &neg, f, g)? != f.mul_commutative(g) {
                    return Ok(Some(format!("Q then -Q fails on f={f} g={g}")));
                }
                if deform_compose(&ctx, &k, f, g)? != crate::algebra::star::star_product(&sum, f, g)? {
                    return Ok(Some(format!("Q then K fails on f={f} g={g}")));
                }
                Ok(None)
            })
        },
    ));
}

pub(super) fn torus(p: &Params) -> Result<Vec<Check>> {
    let t = Arc::new(NcTorus::new(p.theta.clone()));
    let (l, n, seed) = (p.l, p.samples, p.seed);
    let mut out = Vec::new();

    let tt = t.clone();
    out.push(check(
        "torus-commutation",
        "U_j × U_k = e^{2πiθ_kj} U_k × U_j",
        move || {
            let pairs: Vec<(usize, usize)> = (0..l).flat_map(|j| (0..l).map(move |k| (j, k))).collect();
            scan(pairs, |&(j, k)| {
                let e = |i: usize| {
                    let mut v = vec![0i64; l];
                    v[i] = 1;
                    v
                };
                let (uj, uk) = (tt.unitary(&e(j))?, tt.unitary(&e(k))?);
                let lhs = tt.star(&uj, &uk)?;
                let rhs = tt.star(&uk, &uj)?.scale(&CycScalar::phase(tt.theta().get(k, j)));
                Ok((lhs != rhs).then(|| format!("j={} k={}", j + 1, k + 1)))
            })
        },
    ));

    let tt = t.clone();
    out.push(check("torus-twisted-group", "U^r × U^s = σ(r,s) U^{r+s}", move || {
        scan(triples(seed, "torus-twisted-group", l, n), |(r, s, _)| {
            let rs: Vec<i64> = r.iter().zip(s).map(|(a, b)| a + b).collect();
            let lhs = tt.star(&tt.unitary(r)?, &tt.unitary(s)?)?;
            let rhs = tt.unitary(&rs)?.scale(&sigma(tt.theta(), r, s)?);
            Ok((lhs != rhs).then(|| format!("r={r:?} s={s:?}")))
        })
    }));

    let star = {
        let tt = t.clone();
        move |f: &Poly, g: &Poly| tt.star(f, g)
    };
    product_checks(&mut out, "torus", t.alphabet().clone(), t.context().clone(), star, p);
    Ok(out)
}

#[derive(Clone, Copy)]
enum Gen {
    Alpha(usize),
    Star(usize),
    X,
}

pub(super) fn sphere(p: &Params) -> Result<Vec<Check>> {
    let s = Arc::new(SphereAlgebra::new(p.theta.clone())?);
    let (n, d, seed) = (p.samples, p.max_degree, p.seed);
    let mut out = Vec::new();

    let ss = s.clone();
    out.push(check(
        "sphere-relations",
        "α_j×α_k = λ_kj α_k×α_j, α_j×α_k* = λ̄_kj α_k*×α_j, α_j normal, x central (λ_kj = e^{2πiθ_kj})",
        move || {
            let gens = ss.generators();
            let table = commutation_table(&gens, |a, b| ss.star(a, b))?;
            let kind = |name: &str| -> Gen {
                let g = &gens.iter().find(|(n, _)| n == name).expect("named generator").1;
                (0..ss.rank())
                    .find_map(|i| {
                        if *g == ss.alpha(i) {
                            Some(Gen::Alpha(i))
                        } else if *g == ss.alpha_star(i) {
                            Some(Gen::Star(i))
                        } else {
                            None
                        }
                    })
                    .unwrap_or(Gen::X)
            };
            let th = ss.theta();
            let ph = |j: usize, k: usize| CycScalar::phase(th.get(j, k));
            let out = scan(table.clone(), |row| {
                let want = match (kind(&row.left), kind(&row.right)) {
                    (Gen::X, _) | (_, Gen::X) => CycScalar::one(),
                    (Gen::Alpha(j), Gen::Alpha(k)) | (Gen::Star(j), Gen::Star(k)) => ph(k, j),
                    (Gen::Alpha(j), Gen::Star(k)) | (Gen::Star(j), Gen::Alpha(k)) => ph(j, k),
                };
                Ok((row.ratio != want).then(|| {
                    format!("{} × {}: derived {} expected {}", row.left, row.right, row.ratio, want)
                }))
            })?;
            Ok(out.with_detail(&table))
        },
    ));

    let ss = s.clone();
    out.push(check(
        "sphere-radius-relation",
        "Σ α_i × α_i* + x × x = Σ α_i α_i* + x² (all phases trivial)",
        move || {
            let mut plain = ss.x().mul_commutative(&ss.x());
            for i in 0..ss.rank() {
                plain = plain.add(&ss.alpha(i).mul_commutative(&ss.alpha_star(i)));
            }
            let derived = ss.radius_relation()?;
            let want = plain.sub(&ss.one());
            Ok(Outcome::new(1, (derived != want).then(|| format!("derived {derived}"))))
        },
    ));

    let ss = s.clone();
    out.push(check(
        "sphere-reduce",
        "reduce∘reduce = reduce; reduce(f + g×R + R×g) = reduce(f), R the radius relation",
        move || {
            let rel = ss.radius_relation()?;
            scan(random_elements(seed, "sphere-reduce", ss.alphabet(), d, n, 2), |v| {
                let r = ss.reduce(&v[0])?;
                if ss.reduce(&r)? != r {
                    return Ok(Some(format!("not idempotent on {}", v[0])));
                }
                let moved = v[0].add(&ss.star(&v[1], &rel)?).add(&ss.star(&rel, &v[1])?);
                Ok((ss.reduce(&moved)? != r).then(|| format!("f={} g={}", v[0], v[1])))
            })
        },
    ));

    let star = {
        let ss = s.clone();
        move |f: &Poly, g: &Poly| ss.star(f, g)
    };
    product_checks(&mut out, "sphere", s.alphabet().clone(), s.context().clone(), star, p);
    Ok(out)
}
