use std::sync::Arc;

use crate::algebra::poly::Poly;
use crate::algebra::tensor::TensorElement;
use crate::coeff::CycScalar;
use crate::error::Result;
use crate::homog::{so_column_space, sphere_from_so, u2_flag, HomogeneousSpace};
use crate::hopf::{MatrixCoeffAlgebra, WVariant};
use crate::sampling;

use super::{check, scan, Check, Outcome, Params, SpaceKind};

/// Above this many basis monomials only pairs of bounded total degree are
/// enumerated.
const FULL_PAIR_LIMIT: usize = 200;

fn basis(a: &MatrixCoeffAlgebra, d: u32) -> Vec<Poly> {
    sampling::all_monomials(a.alphabet(), d)
        .into_iter()
        .map(|m| Poly::term(a.alphabet(), m, CycScalar::one()))
        .collect()
}

fn pairs(a: &MatrixCoeffAlgebra, d: u32, n: usize, seed: u64, name: &str) -> Vec<(Poly, Poly)> {
    let b = basis(a, d);
    let full = b.len() <= FULL_PAIR_LIMIT;
    let mut out = Vec::new();
    for f in &b {
        for g in &b {
            if full || f.max_total_degree() + g.max_total_degree() <= d {
                out.push((f.clone(), g.clone()));
            }
        }
    }
    let mut rng = sampling::rng_for(seed, name);
    for _ in 0..n {
        let f = sampling::poly(&mut rng, a.alphabet(), d, 3);
        let g = sampling::poly(&mut rng, a.alphabet(), d, 3);
        out.push((f, g));
    }
    out
}

fn singles(a: &MatrixCoeffAlgebra, d: u32, n: usize, seed: u64, name: &str) -> Vec<Poly> {
    let mut out = basis(a, d);
    let mut rng = sampling::rng_for(seed, name);
    out.extend((0..n).map(|_| sampling::poly(&mut rng, a.alphabet(), d, 3)));
    out
}

pub(super) fn hopf(p: &Params) -> Result<Vec<Check>> {
    let a = Arc::new(MatrixCoeffAlgebra::for_group(p.group, &p.theta)?);
    let (d, n, seed) = (p.max_degree, p.samples, p.seed);
    let mut out = Vec::new();

    let aa = a.clone();
    out.push(check(
        "coproduct-multiplicative",
        "Δf ×_{J⊕J} Δg = Δ(f ×_J g)",
        move || {
            scan(pairs(&aa, d, n, seed, "coproduct-multiplicative"), |(f, g)| {
                let lhs = aa.tensor_star(&aa.coproduct(f)?, &aa.coproduct(g)?)?;
                let rhs = aa.coproduct(&aa.star(f, g)?)?;
                Ok((lhs != rhs).then(|| format!("f={f} g={g}")))
            })
        },
    ));

    let aa = a.clone();
    out.push(check("counit-character", "ε(f ×_J g) = ε(f) ε(g), ε(1) = 1", move || {
        if !aa.counit(&aa.one())?.is_one() {
            return Ok(Outcome::new(1, Some("ε(1) ≠ 1".into())));
        }
        scan(pairs(&aa, d, n, seed, "counit-character"), |(f, g)| {
            let lhs = aa.counit(&aa.star(f, g)?)?;
            Ok((lhs != aa.counit(f)? * aa.counit(g)?).then(|| format!("f={f} g={g}")))
        })
    }));

    let aa = a.clone();
    out.push(check(
        "coassociativity",
        "(Δ ⊗ id)Δ = (id ⊗ Δ)Δ",
        move || {
            scan(singles(&aa, d, n, seed, "coassociativity"), |f| {
                let df = aa.coproduct(f)?;
                Ok((aa.coproduct_on(&df, 0)? != aa.coproduct_on(&df, 1)?).then(|| format!("f={f}")))
            })
        },
    ));

    let aa = a.clone();
    out.push(check(
        "counit-coproduct",
        "(ε ⊗ id)Δf = f = (id ⊗ ε)Δf",
        move || {
            scan(singles(&aa, d, n, seed, "counit-coproduct"), |f| {
                let df = aa.coproduct(f)?;
                let mut left = Poly::zero(aa.alphabet());
                let mut right = Poly::zero(aa.alphabet());
                for (k, c) in df.terms() {
                    let t0 = Poly::term(aa.alphabet(), k[0].clone(), CycScalar::one());
                    let t1 = Poly::term(aa.alphabet(), k[1].clone(), CycScalar::one());
                    left = left.add(&t1.scale(&(c * &aa.counit(&t0)?)));
                    right = right.add(&t0.scale(&(c * &aa.counit(&t1)?)));
                }
                Ok((left != *f || right != *f).then(|| format!("f={f}")))
            })
        },
    ));

    if a.alphabet().has_involution() {
        let aa = a.clone();
        out.push(check("coproduct-involution", "Δ(f*) = (Δf)*", move || {
            scan(singles(&aa, d, n, seed, "coproduct-involution"), |f| {
                Ok((aa.coproduct(&f.conj())? != aa.coproduct(f)?.conj()).then(|| format!("f={f}")))
            })
        }));
    }

    if !a.is_unitary() {
        return Ok(out);
    }

    let aa = a.clone();
    out.push(check(
        "antipode-anti-multiplicative",
        "Sf ×_J Sg = S(g ×_J f)",
        move || {
            scan(pairs(&aa, d, n, seed, "antipode-anti-multiplicative"), |(f, g)| {
                let lhs = aa.star(&aa.antipode(f)?, &aa.antipode(g)?)?;
                let rhs = aa.antipode(&aa.star(g, f)?)?;
                Ok((lhs != rhs).then(|| format!("f={f} g={g}")))
            })
        },
    ));

    let aa = a.clone();
    out.push(check(
        "antipode-identity",
        "m(S ⊗ id)Δf = ε(f)1 = m(id ⊗ S)Δf",
        move || {
            scan(singles(&aa, d, n, seed, "antipode-identity"), |f| {
                let (l, r) = aa.antipode_identity(f)?;
                let e = Poly::constant(aa.alphabet(), aa.counit(f)?);
                let ok = aa.equal_mod_relations(&l, &e)? && aa.equal_mod_relations(&r, &e)?;
                Ok((!ok).then(|| format!("f={f}")))
            })
        },
    ));

    let aa = a.clone();
    out.push(check(
        "antipode-involutive",
        "S(S f) = f, S(f*) = (Sf)*",
        move || {
            scan(singles(&aa, d, n, seed, "antipode-involutive"), |f| {
                let sf = aa.antipode(f)?;
                let ok = aa.antipode(&sf)? == *f && aa.antipode(&f.conj())? == sf.conj();
                Ok((!ok).then(|| format!("f={f}")))
            })
        },
    ));

    for (variant, name, anchor) in [
        (
            WVariant::W,
            "w-invertible",
            "W(f⊗g) = Δf ×_{J⊕J} (1⊗g) is inverted by (id⊗S)Δf ×_{J⊕J} (1⊗g) and preserves bidegree bookkeeping",
        ),
        (
            WVariant::WPrime,
            "w-prime-invertible",
            "W′(f⊗g) = (f⊗1) ×_{J⊕J} Δg is inverted by (f⊗1) ×_{J⊕J} (S⊗id)Δg and preserves bidegree bookkeeping",
        ),
    ] {
        let aa = a.clone();
        out.push(check(name, anchor, move || {
            let b = basis(&aa, d.min(2));
            let tensors: Vec<TensorElement> = b
                .iter()
                .flat_map(|f| b.iter().map(move |g| TensorElement::pure(&[f, g])))
                .collect();
            scan(tensors, |h| {
                let w = aa.fundamental_w(h, variant)?;
                let (k, _) = h.terms().next().expect("basis tensor");
                if let Some(t) = aa.w_grading_violation(k, &w, variant) {
                    return Ok(Some(format!("{h}: term {t} breaks the bidegree rule")));
                }
                let back = aa.fundamental_w_inverse(&w, variant)?;
                if !aa.tensor_equal_mod_relations(&back, h)? {
                    return Ok(Some(format!("{h}: inverse ∘ W ≠ id")));
                }
                let fwd = aa.fundamental_w(&aa.fundamental_w_inverse(h, variant)?, variant)?;
                Ok((!aa.tensor_equal_mod_relations(&fwd, h)?).then(|| format!("{h}: W ∘ inverse ≠ id")))
            })
        }));
    }
    Ok(out)
}

fn column_generators(space: &HomogeneousSpace) -> Vec<Poly> {
    let parent = space.parent();
    space
        .subalgebra()
        .selected()
        .iter()
        .map(|&i| Poly::generator(parent.alphabet(), i))
        .collect()
}

/// Random invariant quadratics `Σ c·(g_a ×_J g_b)` in the parent.
fn quadratics(space: &HomogeneousSpace, n: usize, seed: u64, name: &str) -> Result<Vec<Poly>> {
    let parent = space.parent();
    let gens = column_generators(space);
    let mut rng = sampling::rng_for(seed, name);
    (0..n)
        .map(|_| {
            let mut q = Poly::zero(parent.alphabet());
            for _ in 0..3 {
                let a = &gens[rand::Rng::gen_range(&mut rng, 0..gens.len())];
                let b = &gens[rand::Rng::gen_range(&mut rng, 0..gens.len())];
                q = q.add(&parent.star(a, b)?.scale(&sampling::scalar(&mut rng)));
            }
            Ok(q)
        })
        .collect()
}

fn element_pairs(space: &HomogeneousSpace, n: usize, seed: u64, name: &str) -> Result<Vec<(Poly, Poly)>> {
    let gens = column_generators(space);
    let mut out: Vec<(Poly, Poly)> = gens
        .iter()
        .flat_map(|f| gens.iter().map(move |g| (f.clone(), g.clone())))
        .collect();
    let qs = quadratics(space, 2 * n, seed, name)?;
    out.extend(qs.chunks(2).map(|c| (c[0].clone(), c[1].clone())));
    Ok(out)
}

fn element_singles(space: &HomogeneousSpace, n: usize, seed: u64, name: &str) -> Result<Vec<Poly>> {
    let mut out = column_generators(space);
    out.extend(quadratics(space, n, seed, name)?);
    Ok(out)
}

pub(super) fn homog(p: &Params) -> Result<Vec<Check>> {
    match p.space {
        SpaceKind::U2Flag => flag(p),
        SpaceKind::S4 | SpaceKind::S2l => column_space(p),
    }
}

fn flag(p: &Params) -> Result<Vec<Check>> {
    let th = p.theta.clone();
    let d = p.max_degree;
    Ok(vec![check(
        "flag-commutative",
        "C(U(2)/T²)_Q is commutative: σ is trivial on degrees (n,-n)",
        move || {
            let rep = u2_flag(&th, d)?;
            let cx = rep.counterexample.clone().or_else(|| {
                (!rep.sigma_trivial).then(|| "σ is nontrivial on some flag degree".to_string())
            });
            Ok(Outcome::new(rep.pairs_checked, cx).with_detail(&rep))
        },
    )])
}

fn column_space(p: &Params) -> Result<Vec<Check>> {
    let space = Arc::new(so_column_space(&p.theta)?);
    let (n, seed) = (p.samples, p.seed);
    let th = p.theta.clone();
    let mut out = Vec::new();

    let s = space.clone();
    out.push(check("zeta-multiplicative", "ζ(f ×_J g) = ζf ×_Q ζg", move || {
        let parent = s.parent();
        scan(element_pairs(&s, n, seed, "zeta-multiplicative")?, |(f, g)| {
            let lhs = s.zeta(&parent.star(f, g)?)?;
            let rhs = s.star(&s.zeta(f)?, &s.zeta(g)?)?;
            Ok((lhs != rhs).then(|| format!("f={f} g={g}")))
        })
    }));

    let s = space.clone();
    out.push(check("coaction-intertwines", "(id ⊗ ζ)Δf = ρ(ζf)", move || {
        let parent = s.parent();
        scan(element_singles(&s, n, seed, "coaction-intertwines")?, |f| {
            let lhs = s.id_zeta(&parent.coproduct(f)?)?;
            Ok((lhs != s.coaction(&s.zeta(f)?)?).then(|| format!("f={f}")))
        })
    }));

    let s = space.clone();
    out.push(check(
        "coaction-multiplicative",
        "ρ(a ×_Q b) = ρa ×_{J,Q} ρb",
        move || {
            // quadratic pairs expand to thousands of tensor products each
            scan(element_pairs(&s, n.min(25), seed, "coaction-multiplicative")?, |(f, g)| {
                let (a, b) = (s.zeta(f)?, s.zeta(g)?);
                let lhs = s.coaction(&s.star(&a, &b)?)?;
                let rhs = s.mixed_star(&s.coaction(&a)?, &s.coaction(&b)?)?;
                Ok((lhs != rhs).then(|| format!("a={a} b={b}")))
            })
        },
    ));

    let s = space.clone();
    out.push(check(
        "invariants-closed",
        "K-invariants are closed under ×_J and *, and ζ⁻¹ζ = id",
        move || {
            let parent = s.parent();
            let sub = s.subalgebra();
            scan(element_pairs(&s, n, seed, "invariants-closed")?, |(f, g)| {
                let fg = parent.star(f, g)?;
                if !sub.contains(&fg) || !sub.contains(&f.conj()) {
                    return Ok(Some(format!("f={f} g={g} leaves the invariants")));
                }
                Ok((s.zeta_inverse(&s.zeta(&fg)?)? != fg).then(|| format!("ζ⁻¹ζ ≠ id on {fg}")))
            })
        },
    ));

    out.push(check(
        "sphere-relation-table",
        "column generators of C(SO(2l+1))_J satisfy the S^{2l}_θ relations under Q = θ/2",
        move || {
            let rep = sphere_from_so(&th)?;
            let cx = rep
                .rows
                .iter()
                .find(|r| !r.agree)
                .map(|r| format!("{} × {}: group {} sphere {}", r.left, r.right, r.from_group, r.from_sphere));
            Ok(Outcome::new(rep.rows.len(), cx).with_detail(&rep))
        },
    ));
    Ok(out)
}
