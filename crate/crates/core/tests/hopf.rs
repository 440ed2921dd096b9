use isodeform::algebra::{Poly, TensorElement};
use isodeform::hopf::{MatrixCoeffAlgebra, WVariant};
use isodeform::sampling;
use isodeform::{CycScalar, DeformMatrix};
use num_rational::Rational64;

fn u2(n: i64, d: i64) -> MatrixCoeffAlgebra {
    MatrixCoeffAlgebra::u2(&DeformMatrix::planar(Rational64::new(n, d))).unwrap()
}

fn basis(a: &MatrixCoeffAlgebra, deg: u32) -> Vec<Poly> {
    sampling::all_monomials(a.alphabet(), deg)
        .into_iter()
        .map(|m| Poly::term(a.alphabet(), m, CycScalar::one()))
        .collect()
}

#[test]
fn antipode_identity_on_generators() {
    let a = u2(1, 3);
    for (name, g) in a.generators() {
        let (l, r) = a.antipode_identity(&g).unwrap();
        let e = Poly::constant(a.alphabet(), a.counit(&g).unwrap());
        assert!(a.equal_mod_relations(&l, &e).unwrap(), "left fails on {name}");
        assert!(a.equal_mod_relations(&r, &e).unwrap(), "right fails on {name}");
    }
}

#[test]
fn antipode_identity_degree_two() {
    for a in [u2(1, 3), MatrixCoeffAlgebra::torus(&DeformMatrix::planar(Rational64::new(2, 5)))] {
        for f in basis(&a, 2) {
            let (l, r) = a.antipode_identity(&f).unwrap();
            let e = Poly::constant(a.alphabet(), a.counit(&f).unwrap());
            assert!(a.equal_mod_relations(&l, &e).unwrap(), "{f}");
            assert!(a.equal_mod_relations(&r, &e).unwrap(), "{f}");
        }
    }
}

#[test]
fn coproduct_multiplicative_and_coassociative() {
    let a = u2(1, 3);
    let b = basis(&a, 2);
    for f in &b {
        let df = a.coproduct(f).unwrap();
        let left = a.coproduct_on(&df, 0).unwrap();
        let right = a.coproduct_on(&df, 1).unwrap();
        assert_eq!(left, right);
        for g in &b {
            let lhs = a.coproduct(&a.star(f, g).unwrap()).unwrap();
            let rhs = a.tensor_star(&df, &a.coproduct(g).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn counit_character_and_weight_support() {
    let a = u2(1, 3);
    let b = basis(&a, 2);
    for f in &b {
        let d = f.degree_support().pop().unwrap();
        let eps = a.counit(f).unwrap();
        if !eps.is_zero() {
            assert!(d[..2].iter().zip(&d[2..]).all(|(p, q)| p + q == 0));
        }
        for g in &b {
            let lhs = a.counit(&a.star(f, g).unwrap()).unwrap();
            assert_eq!(lhs, eps.clone() * a.counit(g).unwrap());
        }
    }
}

#[test]
fn antipode_anti_multiplicative() {
    let a = u2(1, 3);
    let b = basis(&a, 2);
    for f in &b {
        let sf = a.antipode(f).unwrap();
        assert_eq!(a.antipode(&sf).unwrap(), *f);
        assert_eq!(a.antipode(&f.conj()).unwrap(), sf.conj());
        for g in &b {
            let lhs = a.antipode(&a.star(f, g).unwrap()).unwrap();
            let rhs = a.star(&a.antipode(g).unwrap(), &sf).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn w_inverse_on_generator_pairs() {
    for a in [u2(1, 3), u2(0, 1)] {
        let gens = basis(&a, 1);
        for variant in [WVariant::W, WVariant::WPrime] {
            for f in &gens {
                for g in &gens {
                    let h = TensorElement::pure(&[f, g]);
                    let w = a.fundamental_w(&h, variant).unwrap();
                    let (k, _) = h.terms().next().unwrap();
                    assert_eq!(a.w_grading_violation(k, &w, variant), None);
                    let back = a.fundamental_w_inverse(&w, variant).unwrap();
                    assert!(a.tensor_equal_mod_relations(&back, &h).unwrap(), "{variant:?} {h}");
                    let fwd = a.fundamental_w(&a.fundamental_w_inverse(&h, variant).unwrap(), variant).unwrap();
                    assert!(a.tensor_equal_mod_relations(&fwd, &h).unwrap(), "{variant:?} {h}");
                }
            }
        }
    }
}

#[test]
fn undeformed_w_is_classical() {
    let a = u2(0, 1);
    let h = TensorElement::pure(&[&a.entry(0, 0), &a.one()]);
    assert_eq!(
        a.fundamental_w(&h, WVariant::W).unwrap(),
        a.coproduct(&a.entry(0, 0)).unwrap()
    );
}
