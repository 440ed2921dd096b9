//! One line per acceptance criterion, each with its time bound.

use std::time::{Duration, Instant};

use isodeform::algebra::{deform_compose, NcTorus, Poly, SphereAlgebra, StarContext};
use isodeform::chern::certify;
use isodeform::homog::{sphere_from_so5, u2_flag};
use isodeform::sampling;
use isodeform::spin::{build_torus_triple, schatten_report, SchattenP};
use isodeform::suite::{run_suite, Report, SpaceKind, Status, SuiteConfig, SuiteName, ThetaArg};
use isodeform::hopf::GroupKind;
use isodeform::{CycScalar, DeformMatrix};
use num_rational::Rational64;

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn config(suite: SuiteName, theta: &str) -> SuiteConfig {
    SuiteConfig {
        theta: Some(ThetaArg::Text(theta.into())),
        ..SuiteConfig::new(suite)
    }
}

fn checks_pass(r: &Report, names: &[&str]) -> Result<(), String> {
    for n in names {
        let c = r.check(n).ok_or(format!("{n} missing"))?;
        if c.status != Status::Pass {
            return Err(format!("{n}: {}", c.counterexample.clone().unwrap_or_default()));
        }
    }
    Ok(())
}

fn c1() -> Result<String, String> {
    let mut total = 0;
    for (l, th) in [(2usize, "1/3"), (3, "[[0,5/12,-1/7],[-5/12,0,3/11],[1/7,-3/11,0]]")] {
        let r = run_suite(&SuiteConfig {
            l: Some(l),
            samples: Some(1000),
            seed: 1,
            ..config(SuiteName::Cocycle, th)
        })
        .map_err(|e| e.to_string())?;
        checks_pass(&r, &["cocycle-rho", "cocycle-sigma", "cocycle-random-theta"])?;
        total += r.checks.iter().filter(|c| c.name.starts_with("cocycle-")).map(|c| c.samples).sum::<usize>();
    }
    Ok(format!("{total} triples"))
}

fn c2() -> Result<String, String> {
    let r = run_suite(&config(SuiteName::Sphere, "1/3")).map_err(|e| e.to_string())?;
    checks_pass(&r, &["sphere-relations", "sphere-radius-relation"])?;
    let s = SphereAlgebra::four(q(1, 3));
    let ab = s.star(&s.alpha(0), &s.alpha(1)).unwrap();
    let ba = s.star(&s.alpha(1), &s.alpha(0)).unwrap();
    if ab != ba.scale(&CycScalar::phase(q(1, 3))) {
        return Err("α×β ≠ λ β×α".into());
    }
    Ok("relations derived from the star product".into())
}

fn hopf_run(group: GroupKind, theta: &str, d: u32, samples: usize) -> Result<Report, String> {
    run_suite(&SuiteConfig {
        group: Some(group),
        max_degree: Some(d),
        samples: Some(samples),
        ..config(SuiteName::Hopf, theta)
    })
    .map_err(|e| e.to_string())
}

fn c3() -> Result<String, String> {
    let names = [
        "coproduct-multiplicative",
        "counit-character",
        "antipode-anti-multiplicative",
        "antipode-identity",
        "coassociativity",
    ];
    let mut pairs = 0;
    for g in [GroupKind::U2, GroupKind::Torus] {
        let r = hopf_run(g, "1/3", 3, 500)?;
        checks_pass(&r, &names)?;
        pairs += r.check("coproduct-multiplicative").unwrap().samples;
    }
    Ok(format!("{pairs} product pairs"))
}

fn c4() -> Result<String, String> {
    let mut n = 0;
    for th in ["0", "1/3"] {
        let r = hopf_run(GroupKind::U2, th, 2, 0)?;
        checks_pass(&r, &["w-invertible", "w-prime-invertible"])?;
        n += r.check("w-invertible").unwrap().samples + r.check("w-prime-invertible").unwrap().samples;
    }
    Ok(format!("{n} basis tensors"))
}

fn c5() -> Result<String, String> {
    let r = run_suite(&SuiteConfig {
        space: Some(SpaceKind::S4),
        samples: Some(200),
        ..config(SuiteName::Homog, "1/3")
    })
    .map_err(|e| e.to_string())?;
    checks_pass(&r, &["zeta-multiplicative", "coaction-intertwines"])?;
    Ok(format!("{} pairs", r.check("zeta-multiplicative").unwrap().samples))
}

fn c6() -> Result<String, String> {
    let rep = sphere_from_so5(q(1, 3)).map_err(|e| e.to_string())?;
    if !rep.all_agree {
        return Err("relation tables differ".into());
    }
    // the group-side table must reproduce criterion 2's λ
    let ab = rep.rows.iter().find(|r| r.left == "alpha" && r.right == "beta").ok_or("no α,β row")?;
    if ab.from_group != CycScalar::phase(q(1, 3)) {
        return Err(format!("α,β ratio {}", ab.from_group));
    }
    let flag = u2_flag(&DeformMatrix::planar(q(1, 3)), 3).map_err(|e| e.to_string())?;
    if !flag.commutative {
        return Err(flag.counterexample.unwrap_or_default());
    }
    Ok(format!("{} relations, {} flag pairs", rep.rows.len(), flag.pairs_checked))
}

fn c7() -> Result<String, String> {
    let r = run_suite(&SuiteConfig {
        l: Some(2),
        n: Some(6),
        ..config(SuiteName::Spin, "1/3")
    })
    .map_err(|e| e.to_string())?;
    let names = ["l-multiplicative", "r-anti-multiplicative", "l-r-commute", "first-order"];
    checks_pass(&r, &names)?;
    let worst = names
        .iter()
        .map(|n| r.check(n).unwrap().detail.as_ref().unwrap()["max_residual"].as_f64().unwrap())
        .fold(0.0, f64::max);
    if worst > 1e-12 {
        return Err(format!("residual {worst:e}"));
    }
    Ok(format!("max interior residual {worst:.1e}"))
}

fn c8() -> Result<String, String> {
    let ps = [SchattenP::Finite(1), SchattenP::Finite(2), SchattenP::Finite(4)];
    let shifts = [[1i64, 0], [1, 1], [2, 1]];
    let mut prev: Option<Vec<f64>> = None;
    let mut worst = 0.0f64;
    let mut trend = Vec::new();
    for n in [4, 6, 8] {
        let b = build_torus_triple(2, n, &DeformMatrix::planar(q(1, 3))).map_err(|e| e.to_string())?;
        let t = NcTorus::new(b.theta().clone());
        let mut cur = Vec::new();
        for r in &shifts {
            let rep = schatten_report(&b, &t.unitary(r).unwrap(), &ps).map_err(|e| e.to_string())?;
            worst = worst.max(rep.max_abs_difference);
            cur.extend(rep.norms.iter().map(|x| x.deformed));
        }
        if let Some(p) = &prev {
            if p.iter().zip(&cur).any(|(a, b)| b <= a) {
                return Err(format!("norm does not increase at N = {n}"));
            }
        }
        trend.push(format!("{:.2}", cur[0]));
        prev = Some(cur);
    }
    if worst > 1e-10 {
        return Err(format!("θ-dependence {worst:e}"));
    }
    Ok(format!("max |Δσ| {worst:.1e}; ‖·‖₁ for r=(1,0): {}", trend.join(" < ")))
}

fn c9() -> Result<String, String> {
    let mut phases = Vec::new();
    for th in [q(0, 1), q(1, 3), q(1, 5)] {
        let rep = certify(th).map_err(|e| e.to_string())?;
        if !rep.passed() {
            return Err(format!("θ = {}: {rep:?}", rep.theta));
        }
        phases.push(format!("θ={}: μ=({}, {})", rep.theta, rep.phases.mu1, rep.phases.mu2));
    }
    Ok(phases.join("; "))
}

fn c10() -> Result<String, String> {
    let th = DeformMatrix::planar(q(1, 3));
    let t = NcTorus::new(th.clone());
    let s = SphereAlgebra::four(q(1, 3));
    let mut rng = sampling::rng_for(10, "reversibility");
    let mut n = 0;
    for (alph, ctx) in [(t.alphabet().clone(), t.context().clone()), (s.alphabet().clone(), s.context().clone())] {
        let back = StarContext::mono(ctx.direction().neg());
        for _ in 0..250 {
            let mut one = || Poly::term(&alph, sampling::monomial(&mut rng, &alph, 3), sampling::scalar(&mut rng));
            let (f, g) = (one(), one());
            if deform_compose(&ctx, &back, &f, &g).unwrap() != f.mul_commutative(&g) {
                return Err(format!("f={f} g={g}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} homogeneous pairs"))
}

#[test]
fn acceptance() {
    type Criterion = (u32, &'static str, u64, fn() -> Result<String, String>);
    let criteria: [Criterion; 10] = [
        (1, "cocycle identity for ρ and σ", 1, c1),
        (2, "derived S^4_θ relations", 1, c2),
        (3, "Hopf suite on U(2) and T²", 30, c3),
        (4, "W and W′ invertibility", 30, c4),
        (5, "homogeneous-space embedding", 30, c5),
        (6, "sphere from SO(5), commutative flag", 10, c6),
        (7, "spin suite interior identities", 60, c7),
        (8, "Schatten θ-independence", 120, c8),
        (9, "Chern certificate", 120, c9),
        (10, "reversibility", 1, c10),
    ];
    let mut failed = Vec::new();
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let res = match res {
            Ok(msg) if took > Duration::from_secs(limit) => Err(format!("{msg}; over the {limit} s bound")),
            r => r,
        };
        match &res {
            Ok(msg) => println!("criterion {id:>2} PASS {:>8.2} s  {title}: {msg}", took.as_secs_f64()),
            Err(msg) => {
                println!("criterion {id:>2} FAIL {:>8.2} s  {title}: {msg}", took.as_secs_f64());
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
