use isodeform::algebra::{NcTorus, SphereAlgebra};
use isodeform::cocycle::{format_rational, parse_rational, rho, sigma};
use isodeform::{CycScalar, DeformMatrix};
use num_complex::Complex64;
use num_rational::Rational64;
use std::f64::consts::PI;

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn cis(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * turns)
}

#[test]
fn parses_rationals_and_matrices() {
    assert_eq!(parse_rational(" -2/6 ").unwrap(), q(-1, 3));
    assert_eq!(parse_rational("4").unwrap(), q(4, 1));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
    assert_eq!(format_rational(&q(3, -9)), "-1/3");
    let m: DeformMatrix = "[[0, 1/3], [-1/3, 0]]".parse().unwrap();
    assert_eq!(m.get(0, 1), q(1, 3));
    assert_eq!(m.to_string().parse::<DeformMatrix>().unwrap(), m);
    assert!("[[0,1/3],[1/3,0]]".parse::<DeformMatrix>().is_err());
    assert!("[0,1]".parse::<DeformMatrix>().is_err());
}

#[test]
fn frozen_cocycle_values() {
    // θ_12 = -1/3: ρ(e1, e2) = e^{2πi/3}, σ(e1, e2) = e^{πi/3}
    let th = DeformMatrix::planar(q(1, 3));
    let (e1, e2) = ([1, 0], [0, 1]);
    assert!((rho(&th, &e1, &e2).unwrap().to_complex() - cis(1.0 / 3.0)).norm() < 1e-15);
    assert!((sigma(&th, &e1, &e2).unwrap().to_complex() - cis(1.0 / 6.0)).norm() < 1e-15);
    assert_eq!(rho(&th, &e1, &e2).unwrap(), CycScalar::phase(q(1, 3)));
    assert_eq!(sigma(&th, &e1, &e2).unwrap(), CycScalar::phase(q(1, 6)));
    assert!(rho(&th, &e2, &e1).unwrap().is_one());
    assert_eq!(sigma(&th, &e2, &e1).unwrap(), CycScalar::phase(q(-1, 6)));
    assert!(rho(&th, &[1, 2], &[1, 2, 3]).is_err());
}

#[test]
fn frozen_torus_and_sphere_phases() {
    let th = DeformMatrix::planar(q(2, 5));
    let t = NcTorus::new(th.clone());
    let u = t.unitary(&[1, 0]).unwrap();
    let v = t.unitary(&[0, 1]).unwrap();
    let uv = t.star(&u, &v).unwrap();
    let vu = t.star(&v, &u).unwrap();
    assert_eq!(uv, vu.scale(&CycScalar::phase(q(2, 5))));
    let s = SphereAlgebra::four(q(2, 5));
    let ab = s.star(&s.alpha(0), &s.alpha(1)).unwrap();
    let ba = s.star(&s.alpha(1), &s.alpha(0)).unwrap();
    assert_eq!(ab, ba.scale(&s.lambda(0, 1)));
    assert_eq!(s.lambda(0, 1), CycScalar::phase(q(2, 5)));
    let rel = s.radius_relation().unwrap();
    assert_eq!(rel.num_terms(), 4);
}
