use std::f64::consts::PI;

use isodeform::algebra::{deform_compose, NcTorus, Poly, SphereAlgebra, StarContext};
use isodeform::cocycle::{coboundary_between, rho, sigma};
use isodeform::{CycScalar, DeformMatrix};
use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = CycScalar> {
    prop::collection::vec((-6i64..=6, 1i64..=4, 0i64..24, prop::sample::select(vec![1i64, 2, 3, 4, 5, 6, 8, 12])), 1..4)
        .prop_map(|terms| {
            terms.into_iter().fold(CycScalar::zero(), |acc, (n, d, a, b)| {
                acc + CycScalar::from_ratio(n, d) * CycScalar::phase(Rational64::new(a, b))
            })
        })
}

fn theta(l: usize) -> impl Strategy<Value = DeformMatrix> {
    prop::collection::vec((-12i64..=12, 1i64..=12), l * (l - 1) / 2).prop_map(move |vals| {
        let mut e = vec![vec![Rational64::from_integer(0); l]; l];
        let mut it = vals.into_iter();
        for j in 0..l {
            for k in (j + 1)..l {
                let (n, d) = it.next().unwrap();
                e[j][k] = Rational64::new(n, d);
                e[k][j] = -Rational64::new(n, d);
            }
        }
        DeformMatrix::new(e).unwrap()
    })
}

fn degree(l: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, l)
}

fn torus_element(l: usize) -> impl Strategy<Value = Vec<(Vec<i64>, CycScalar)>> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, l), scalar()), 1..4)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-9 * (1.0 + a.norm())
}

/// Independent float route: `(f × g)` with `U^r U^s = e^{-πi r·θs} U^{r+s}`,
/// accumulated as a map from degree to complex coefficient.
fn float_torus_product(th: &DeformMatrix, f: &[(Vec<i64>, CycScalar)], g: &[(Vec<i64>, CycScalar)]) -> Vec<(Vec<i64>, Complex64)> {
    let mut out: std::collections::BTreeMap<Vec<i64>, Complex64> = Default::default();
    let l = th.rank();
    for (r, a) in f {
        for (s, b) in g {
            let mut x = 0.0;
            for j in 0..l {
                for k in 0..l {
                    let t = th.get(j, k);
                    x += (*t.numer() as f64 / *t.denom() as f64) * (r[j] * s[k]) as f64;
                }
            }
            let ph = Complex64::from_polar(1.0, -PI * x);
            let t: Vec<i64> = r.iter().zip(s).map(|(p, q)| p + q).collect();
            *out.entry(t).or_default() += a.to_complex() * b.to_complex() * ph;
        }
    }
    out.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &CycScalar::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_conj_and_complex_image(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
        prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
        prop_assert!(close(a.conj().to_complex(), a.to_complex().conj()));
    }

    #[test]
    fn phases_invert(n in -30i64..30, d in 1i64..30) {
        let p = CycScalar::phase(Rational64::new(n, d));
        prop_assert!((&p * &p.conj()).is_one());
        prop_assert_eq!(p.inverse().unwrap(), p.conj());
    }

    #[test]
    fn cocycle_identities(l in 2usize..=3, seed in any::<u64>()) {
        let mut rng = isodeform::sampling::rng(seed);
        let th = isodeform::sampling::theta_up_to(&mut rng, l, 12);
        let r = isodeform::sampling::int_vector(&mut rng, l, 6);
        let s = isodeform::sampling::int_vector(&mut rng, l, 6);
        let t = isodeform::sampling::int_vector(&mut rng, l, 6);
        let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        for c in [rho, sigma] {
            let lhs = c(&th, &r, &add(&s, &t)).unwrap() * c(&th, &s, &t).unwrap();
            let rhs = c(&th, &r, &s).unwrap() * c(&th, &add(&r, &s), &t).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sigma_is_rho_times_coboundary(th in theta(3), r in degree(3), s in degree(3)) {
        // brute-force b(r) = exp{πi Σ_{j<k} r_j θ_jk r_k} as a float
        let b = |v: &[i64]| {
            let mut x = 0.0;
            for j in 0..3 {
                for k in (j + 1)..3 {
                    let t = th.get(j, k);
                    x += (*t.numer() as f64 / *t.denom() as f64) * (v[j] * v[k]) as f64;
                }
            }
            Complex64::from_polar(1.0, PI * x)
        };
        let rs: Vec<i64> = r.iter().zip(&s).map(|(x, y)| x + y).collect();
        let want = rho(&th, &r, &s).unwrap().to_complex() * b(&rs) / (b(&r) * b(&s));
        prop_assert!(close(sigma(&th, &r, &s).unwrap().to_complex(), want));
        let exact = rho(&th, &r, &s).unwrap()
            * coboundary_between(&th, &rs).unwrap()
            * coboundary_between(&th, &r).unwrap().conj()
            * coboundary_between(&th, &s).unwrap().conj();
        prop_assert_eq!(sigma(&th, &r, &s).unwrap(), exact);
    }

    #[test]
    fn torus_product_matches_float_route(th in theta(2), f in torus_element(2), g in torus_element(2)) {
        let t = NcTorus::new(th.clone());
        let (ef, eg) = (t.element(f.clone()).unwrap(), t.element(g.clone()).unwrap());
        let prod = t.star(&ef, &eg).unwrap();
        let want = float_torus_product(&th, &NcTorus::coefficients(&ef), &NcTorus::coefficients(&eg));
        for (deg, z) in want {
            let got = t.element(vec![(deg.clone(), CycScalar::one())]).unwrap();
            let (m, _) = got.terms().next().unwrap();
            prop_assert!(close(prod.coefficient(m).to_complex(), z), "degree {:?}", deg);
        }
    }

    #[test]
    fn torus_associative_and_involutive(th in theta(3), f in torus_element(3), g in torus_element(3), h in torus_element(3)) {
        let t = NcTorus::new(th);
        let (f, g, h) = (t.element(f).unwrap(), t.element(g).unwrap(), t.element(h).unwrap());
        let lhs = t.star(&t.star(&f, &g).unwrap(), &h).unwrap();
        let rhs = t.star(&f, &t.star(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(t.star(&f, &g).unwrap().conj(), t.star(&g.conj(), &f.conj()).unwrap());
    }

    #[test]
    fn reversibility(th in theta(2), f in torus_element(2), g in torus_element(2)) {
        let t = NcTorus::new(th.clone());
        let q = StarContext::mono(th.half());
        let back = StarContext::mono(th.half().neg());
        let (f, g) = (t.element(f).unwrap(), t.element(g).unwrap());
        prop_assert_eq!(deform_compose(&q, &back, &f, &g).unwrap(), f.mul_commutative(&g));
    }

    #[test]
    fn sphere_reduce_is_a_normal_form(num in -6i64..=6, den in 1i64..=6, seed in any::<u64>()) {
        let s = SphereAlgebra::four(Rational64::new(num, den));
        let mut rng = isodeform::sampling::rng(seed);
        let f = isodeform::sampling::poly(&mut rng, s.alphabet(), 3, 4);
        let g = isodeform::sampling::poly(&mut rng, s.alphabet(), 2, 3);
        let rel = s.radius_relation().unwrap();
        let r = s.reduce(&f).unwrap();
        prop_assert_eq!(s.reduce(&r).unwrap(), r.clone());
        let shifted = f.add(&s.star(&g, &rel).unwrap());
        prop_assert_eq!(s.reduce(&shifted).unwrap(), r.clone());
        // reducing a sum equals the sum of reductions
        prop_assert_eq!(s.reduce(&f.add(&g)).unwrap(), r.add(&s.reduce(&g).unwrap()));
    }

    #[test]
    fn undeformed_sphere_evaluates_classically(a_re in -1.0f64..1.0, a_im in -1.0f64..1.0, b_re in -1.0f64..1.0, seed in any::<u64>()) {
        // a point on the round S^4 ⊂ C² × R
        let (a, b) = (Complex64::new(a_re, a_im), Complex64::new(b_re, 0.3));
        let norm = (a.norm_sqr() + b.norm_sqr() + 0.25).sqrt();
        let (a, b, x) = (a / norm, b / norm, 0.5 / norm);
        let s = SphereAlgebra::four(Rational64::from_integer(0));
        let idx = |p: Poly| -> usize { p.terms().next().unwrap().0 .0.iter().position(|&e| e == 1).unwrap() };
        let mut vals = vec![Complex64::new(0.0, 0.0); s.alphabet().len()];
        vals[idx(s.alpha(0))] = a;
        vals[idx(s.alpha_star(0))] = a.conj();
        vals[idx(s.alpha(1))] = b;
        vals[idx(s.alpha_star(1))] = b.conj();
        vals[idx(s.x())] = Complex64::new(x, 0.0);
        let mut rng = isodeform::sampling::rng(seed);
        let f = isodeform::sampling::poly(&mut rng, s.alphabet(), 3, 4);
        let g = isodeform::sampling::poly(&mut rng, s.alphabet(), 3, 4);
        prop_assert!(close(s.star(&f, &g).unwrap().eval(&vals), f.eval(&vals) * g.eval(&vals)));
        prop_assert!(close(s.reduce(&f).unwrap().eval(&vals), f.eval(&vals)));
        prop_assert!(s.radius_relation().unwrap().eval(&vals).norm() < 1e-12);
    }
}
