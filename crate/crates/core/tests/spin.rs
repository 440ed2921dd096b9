use isodeform::algebra::NcTorus;
use isodeform::cocycle::sigma;
use isodeform::spin::{
    build_torus_triple, schatten_report, singular_values, SchattenP, TripleBundle, TruncatedOperator,
};
use isodeform::{CycScalar, DeformMatrix};
use nalgebra::SymmetricEigen;
use num_rational::Rational64;
use std::f64::consts::PI;

const TOL: f64 = 1e-12;

fn bundle(n: i64, num: i64, den: i64) -> TripleBundle {
    build_torus_triple(2, n, &DeformMatrix::planar(Rational64::new(num, den))).unwrap()
}

fn shifts() -> Vec<Vec<i64>> {
    vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 2], vec![2, -1]]
}

#[test]
fn clifford_and_spectrum() {
    let b = bundle(2, 1, 3);
    let d = &b.dirac;
    let chi = b.chirality.as_ref().unwrap();
    let id = b.identity().to_dense();
    assert!((chi * chi - &id).norm() < TOL);
    assert!((chi * d + d * chi).norm() < TOL);
    let mut ev: Vec<f64> = SymmetricEigen::new(d.clone()).eigenvalues.iter().cloned().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (a, b) in ev.iter().zip(ev.iter().rev()) {
        assert!((a + b).abs() < 1e-9);
    }
    // momenta commute with each other and with D
    for p in &b.momenta {
        assert!((p * d - d * p).norm() < TOL);
        for q in &b.momenta {
            assert!((p * q - q * p).norm() < TOL);
        }
    }
}

#[test]
fn charge_conjugation() {
    let b = bundle(4, 1, 3);
    let lat = b.lattice();
    let inner = lat.symmetric_interior(0);
    let d = b.dirac_op();
    assert!(b.conjugate_by_c(&d).residual_on(&d, &inner) < TOL);
    for p in &b.momenta {
        let op = TruncatedOperator::from_dense(p, 0);
        assert!(b.conjugate_by_c(&op).residual_on(&op.scale((-1.0).into()), &inner) < TOL);
    }
    for r in shifts() {
        let s = b.sigma_p(&r);
        assert!(b.conjugate_by_c(&s).residual_on(&s, &inner) < TOL);
    }
    // fiber of dimension two: C² = -1 on sites whose reflection stays inside
    let c2 = b.charge_square();
    let minus = b.identity().scale((-1.0).into());
    let c2op = TruncatedOperator::from_dense(&c2, 0);
    assert!(c2op.residual_on(&minus, &inner) < TOL);
}

#[test]
fn sigma_diagonals() {
    let th = DeformMatrix::planar(Rational64::new(1, 3));
    let b = build_torus_triple(2, 3, &th).unwrap();
    let all = b.lattice().interior(0);
    let d = b.dirac_op();
    for r in shifts() {
        let s = b.sigma_p(&r);
        let prod = s.mul(&b.sigma_p_right(&r));
        assert!(prod.residual_on(&b.identity(), &all) < TOL);
        assert!(s.commutator(&d).residual_on(&b.identity().scale(0.0.into()), &all) < TOL);
        for t in shifts() {
            let sum: Vec<i64> = r.iter().zip(&t).map(|(a, c)| a + c).collect();
            // σ(p,r)σ(p,t) = σ(p, r+t) exactly: σ(p,·) is a character
            let lhs = s.mul(&b.sigma_p(&t));
            assert!(lhs.residual_on(&b.sigma_p(&sum), &all) < TOL);
        }
    }
}

#[test]
fn l_multiplicative_and_r_anti() {
    let b = bundle(6, 1, 3);
    let t = b.torus();
    for r in shifts() {
        for s in shifts() {
            let ur = t.unitary(&r).unwrap();
            let us = t.unitary(&s).unwrap();
            let lr = b.l_rep(&ur).unwrap();
            let ls = b.l_rep(&us).unwrap();
            let prod = t.star(&ur, &us).unwrap();
            let inner = b.lattice().interior(lr.radius + ls.radius);
            assert!(lr.mul(&ls).residual_on(&b.l_rep(&prod).unwrap(), &inner) < TOL);
            // explicit phase: L(U^r)L(U^s) = σ(r,s) L(U^{r+s})
            let sum: Vec<i64> = r.iter().zip(&s).map(|(a, c)| a + c).collect();
            let ph = sigma(b.theta(), &r, &s).unwrap().to_complex();
            let rhs = b.l_rep(&t.unitary(&sum).unwrap()).unwrap().scale(ph);
            assert!(lr.mul(&ls).residual_on(&rhs, &inner) < TOL);
            let rr = b.r_rep(&ur).unwrap();
            let rs = b.r_rep(&us).unwrap();
            let rev = t.star(&us, &ur).unwrap();
            assert!(rr.mul(&rs).residual_on(&b.r_rep(&rev).unwrap(), &inner) < TOL);
            let comm = lr.commutator(&rs);
            let zero = b.identity().scale(0.0.into());
            assert!(comm.residual_on(&zero, &inner) < TOL);
            let first = b.dirac_op().commutator(&lr).commutator(&rs);
            assert!(first.residual_on(&zero, &inner) < TOL);
        }
    }
}

#[test]
fn r_matches_charge_form() {
    let b = bundle(5, 1, 3);
    let t = b.torus();
    for r in shifts() {
        let u = t.unitary(&r).unwrap();
        let inner = b.lattice().symmetric_interior(2);
        let a = b.r_rep(&u).unwrap();
        assert!(a.residual_on(&b.r_rep_via_charge(&u).unwrap(), &inner) < TOL);
    }
}

#[test]
fn dirac_commutator_norm() {
    for (num, den) in [(0, 1), (1, 3)] {
        for n in [3, 5] {
            let b = bundle(n, num, den);
            let t = b.torus();
            for r in shifts() {
                let c = b.dirac_op().commutator(&b.l_rep(&t.unitary(&r).unwrap()).unwrap());
                let norm = singular_values(&c.to_dense())[0];
                let expect = 2.0 * PI * ((r[0] * r[0] + r[1] * r[1]) as f64).sqrt();
                assert!((norm - expect).abs() < 1e-9, "{norm} vs {expect}");
            }
        }
    }
}

#[test]
fn schatten_independent_of_theta() {
    let b = bundle(4, 1, 3);
    let t = b.torus();
    let ps = [SchattenP::Finite(1), SchattenP::Finite(2), SchattenP::Infinity];
    for r in [vec![1, 0], vec![1, 1], vec![2, 1]] {
        let rep = schatten_report(&b, &t.unitary(&r).unwrap(), &ps).unwrap();
        assert!(rep.max_abs_difference < 1e-10);
    }
    let one = t.element(vec![(vec![0, 0], CycScalar::one())]).unwrap();
    let rep = schatten_report(&b, &one, &ps).unwrap();
    assert!(rep.singular_values[0] < 1e-12);
}

#[test]
fn exact_path_identities() {
    let b = bundle(4, 1, 3);
    let t = NcTorus::new(b.theta().clone());
    let d = b.exact_dirac();
    for r in [vec![1, 0], vec![1, 1]] {
        for s in [vec![0, 1], vec![-1, 1]] {
            let ur = t.unitary(&r).unwrap();
            let us = t.unitary(&s).unwrap();
            let f = ur.add(&us.scale(&CycScalar::from_ratio(1, 2)));
            let lf = b.exact_l_rep(&f).unwrap();
            let lg = b.exact_l_rep(&us).unwrap();
            let rg = b.exact_r_rep(&ur).unwrap();
            let inner = b.lattice().interior(3);
            let lhs = lf.mul(&lg);
            let rhs = b.exact_l_rep(&t.star(&f, &us).unwrap()).unwrap();
            assert!(lhs.sub(&rhs).vanishes_on(&inner));
            assert!(lf.commutator(&rg).vanishes_on(&inner));
            assert!(d.commutator(&lf).commutator(&rg).vanishes_on(&inner));
        }
    }
}
