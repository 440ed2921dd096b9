use isodeform::algebra::{NcTorus, Poly, TensorElement};
use isodeform::chern::{certify, ch1, instanton_projector, perturbed_instanton, pi_d, sphere_boundary, Chain};
use isodeform::spin::build_torus_triple;
use isodeform::{CycScalar, DeformMatrix};
use num_rational::Rational64;

fn thetas() -> Vec<Rational64> {
    vec![Rational64::from_integer(0), Rational64::new(1, 3), Rational64::new(1, 5)]
}

#[test]
fn instanton_certificate() {
    for th in thetas() {
        let rep = certify(th).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.ch1_terms_before > 0);
        assert_eq!(rep.ch1_terms_after, 0);
    }
}

#[test]
fn certified_phases_satisfy_the_pairing_rule() {
    for th in thetas() {
        let cert = instanton_projector(th).unwrap();
        let lambda = CycScalar::phase(th);
        assert_eq!(cert.phases.mu1, -(lambda * cert.phases.mu2.conj()));
    }
}

#[test]
fn perturbed_projector_is_not_idempotent() {
    for th in thetas() {
        assert!(!perturbed_instanton(th).unwrap().is_projection().unwrap());
    }
}

#[test]
fn boundary_squares_to_zero() {
    let cert = instanton_projector(Rational64::new(1, 3)).unwrap();
    let p = &cert.projector;
    let s = p.sphere();
    let gens: Vec<Poly> = s.generators().into_iter().map(|(_, g)| g).collect();
    let mut t = TensorElement::zero(vec![s.alphabet().clone(); 4]);
    for (i, a) in gens.iter().enumerate() {
        let b = &gens[(i + 1) % gens.len()];
        let c = &gens[(i + 2) % gens.len()];
        let d = p.get(i % 4, (i + 1) % 4);
        t = t.add(&TensorElement::pure(&[a, b, c, d]));
    }
    let c3 = Chain::from_tensor(t).canonical_over(s).unwrap();
    let bb = sphere_boundary(s, &sphere_boundary(s, &c3).unwrap()).unwrap();
    assert!(bb.is_zero());
    // and ch1 is a cycle
    assert!(sphere_boundary(s, &ch1(p).unwrap()).unwrap().is_zero());
}

#[test]
fn pi_d_on_torus_chains() {
    let th = DeformMatrix::planar(Rational64::new(1, 3));
    let b = build_torus_triple(2, 4, &th).unwrap();
    let t = NcTorus::new(th);
    let one = t.unitary(&[0, 0]).unwrap();
    let a = t.unitary(&[1, 0]).unwrap();
    let c = t.unitary(&[0, 1]).unwrap();
    let inner = b.lattice().interior(2);
    let single = Chain::from_tensor(TensorElement::pure(&[&one, &a]));
    let expect = b.dirac_op().commutator(&b.l_rep(&a).unwrap());
    assert!(pi_d(&single, &b).unwrap().residual_on(&expect, &inner) < 1e-12);
    let other = Chain::from_tensor(TensorElement::pure(&[&a, &c]));
    let sum = pi_d(&single.add(&other), &b).unwrap();
    let parts = pi_d(&single, &b).unwrap().add(&pi_d(&other, &b).unwrap());
    assert!(sum.residual_on(&parts, &inner) < 1e-12);
    let zero = single.sub(&single);
    assert!(zero.is_zero());
    assert_eq!(pi_d(&zero, &b).unwrap().max_on(&inner), 0.0);
}

#[test]
fn ch1_detects_nonzero_chains() {
    let cert = instanton_projector(Rational64::new(1, 3)).unwrap();
    let s = cert.projector.sphere().clone();
    let zero = Poly::zero(s.alphabet());
    let mut rows = vec![vec![zero; 4]; 4];
    rows[0][0] = s.x();
    let m = isodeform::chern::AlgebraMatrix::from_entries(&s, rows).unwrap();
    let c = ch1(&m).unwrap();
    assert_eq!(c.num_terms(), 2);
}
