mod common;

use common::{random_element, random_nonzero, random_point};
use kummer_core::field::{BranchPoint, FieldElement, FieldHom, Gq, Poly, RatFn};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lin(ca: i64, cb: i64, c0: i64) -> RatFn {
    RatFn::from_poly(Poly::from_int_terms(&[(ca, 1, 0), (cb, 0, 1), (c0, 0, 0)]))
}

fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / x.norm().max(y.norm()).max(1e-300)
}

#[test]
fn field_axioms_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let x = random_element(&mut rng, 3);
        let y = random_element(&mut rng, 3);
        let z = random_element(&mut rng, 3);
        assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        assert_eq!(&x * &y, &y * &x);
        assert_eq!(&x + &y, &y + &x);
        assert!((&x - &x).is_zero());
    }
}

#[test]
fn inverse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let x = random_nonzero(&mut rng, 3);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one(), "x = {x}");
    }
    assert!(FieldElement::zero().inverse().is_err());
}

#[test]
fn leibniz_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..500 {
        let x = random_element(&mut rng, 3);
        let y = random_element(&mut rng, 3);
        for var in 0..2 {
            let lhs = (&x * &y).derive(var);
            let rhs = &(&x.derive(var) * &y) + &(&x * &y.derive(var));
            assert_eq!(lhs, rhs);
        }
    }
}

fn tau_b() -> FieldHom {
    FieldHom::new(
        lin(-1, 0, 1),
        lin(0, -1, 1),
        FieldElement::sqrt_1ma(),
        FieldElement::sqrt_a(),
        FieldElement::sqrt_1mb(),
        FieldElement::sqrt_b(),
    )
    .unwrap()
}

fn tau_a() -> FieldHom {
    FieldHom::new(
        RatFn::a(),
        RatFn::b(),
        FieldElement::sqrt_a(),
        -&FieldElement::sqrt_1ma(),
        FieldElement::sqrt_b(),
        FieldElement::sqrt_1mb(),
    )
    .unwrap()
}

/// a ↦ a/(a−1) with √a ↦ √a/√(1−a)·i, √(1−a) ↦ 1/√(1−a), and b fixed.
fn mobius_hom() -> FieldHom {
    let inv_1ma = FieldElement::monomial(2, lin(-1, 0, 1).inv().unwrap());
    let sa = &(&FieldElement::sqrt_a() * &inv_1ma) * &FieldElement::i();
    FieldHom::new(
        &RatFn::a() / &lin(1, 0, -1),
        RatFn::b(),
        sa,
        inv_1ma,
        FieldElement::sqrt_b(),
        FieldElement::sqrt_1mb(),
    )
    .unwrap()
}

#[test]
fn homs_are_ring_homomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let homs = [tau_a(), tau_b(), mobius_hom(), FieldHom::swap()];
    for k in 0..500 {
        let h = &homs[k % homs.len()];
        let x = random_element(&mut rng, 3);
        let y = random_element(&mut rng, 3);
        assert_eq!(h.apply(&(&x * &y)), &h.apply(&x) * &h.apply(&y));
        assert_eq!(h.apply(&(&x + &y)), &h.apply(&x) + &h.apply(&y));
    }
}

#[test]
fn hom_rejects_inconsistent_roots() {
    let bad = FieldHom::new(
        RatFn::a(),
        RatFn::b(),
        FieldElement::sqrt_1ma(),
        FieldElement::sqrt_1ma(),
        FieldElement::sqrt_b(),
        FieldElement::sqrt_1mb(),
    );
    assert!(bad.is_err());
}

#[test]
fn eval_commutes_with_arithmetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..300 {
        let p = random_point(&mut rng);
        let x = random_element(&mut rng, 4);
        let y = random_element(&mut rng, 4);
        let (ex, ey) = (x.eval(&p).unwrap(), y.eval(&p).unwrap());
        let sum = (&x + &y).eval(&p).unwrap();
        let prod = (&x * &y).eval(&p).unwrap();
        assert!(rel(sum, ex + ey) <= 1e-12 || (sum - ex - ey).norm() <= 1e-12 * (ex.norm() + ey.norm()));
        assert!(rel(prod, ex * ey) <= 1e-12);
    }
}

#[test]
fn monomials_are_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let base = random_point(&mut rng);
    let m = DMatrix::from_fn(16, 16, |s, k| base.with_signs(s).monomial_value(k));
    let sv = m.singular_values();
    let cond = sv.max() / sv.min();
    assert!(cond < 1e6, "condition number {cond}");
}

#[test]
fn derivative_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    // √(1−a)/√(1−b) = √(1−a)√(1−b)/(1−b)
    let f = FieldElement::monomial(2 | 8, lin(0, -1, 1).inv().unwrap());
    let df = f.derive_a();
    let expected = FieldElement::monomial(2 | 8, (&lin(-1, 0, 1) * &lin(0, -1, 1)).scale(&Gq::from_int(-2)).inv().unwrap());
    assert_eq!(df, expected);
    let h = 1e-5;
    for _ in 0..5 {
        let p = random_point(&mut rng);
        let fd = (f.eval(&p.shifted(h, 0.0)).unwrap() - f.eval(&p.shifted(-h, 0.0)).unwrap()) / (2.0 * h);
        assert!(rel(fd, df.eval(&p).unwrap()) <= 1e-8);
    }
}

#[test]
fn worked_examples() {
    let x = &FieldElement::from_ratfn(&RatFn::a() / &lin(1, -1, 0)) + &FieldElement::from_ratfn(&RatFn::b() / &lin(-1, 1, 0));
    assert!(x.is_one());

    let s = FieldElement::sqrt_a();
    assert_eq!(&s + &s, FieldElement::monomial(1, RatFn::from_int(2)));
    assert_eq!(&s * &s, FieldElement::a());
    let m = &(&s * &FieldElement::sqrt_1ma()) * &FieldElement::sqrt_b();
    assert_eq!(m, FieldElement::monomial(1 | 2 | 4, RatFn::one()));
    let q = FieldElement::monomial(8 | 2, lin(-1, 0, 1).inv().unwrap());
    assert!((&q * &q.inverse().unwrap()).is_one());

    assert_eq!(
        FieldElement::sqrt_1ma().inverse().unwrap(),
        FieldElement::monomial(2, lin(-1, 0, 1).inv().unwrap())
    );
    let one_plus = &FieldElement::one() + &FieldElement::sqrt_a();
    let expect = (&FieldElement::one() - &FieldElement::sqrt_a()).scale_ratfn(&lin(-1, 0, 1).inv().unwrap());
    assert_eq!(one_plus.inverse().unwrap(), expect);

    assert_eq!(FieldElement::sqrt_a().derive_a(), FieldElement::monomial(1, RatFn::a().scale(&Gq::from_int(2)).inv().unwrap()));
    assert!(FieldElement::sqrt_b().derive_a().is_zero());

    assert_eq!(tau_a().apply(&FieldElement::sqrt_1ma()), -&FieldElement::sqrt_1ma());
    assert_eq!(tau_b().apply(&FieldElement::a()), FieldElement::from_ratfn(lin(-1, 0, 1)));
    assert!(FieldHom::identity().apply(&one_plus) == one_plus);

    let p = BranchPoint::principal(-1.0, -2.0).unwrap();
    let v = FieldElement::from_ratfn(lin(1, -1, 0).inv().unwrap()).eval(&p).unwrap();
    assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    let p = BranchPoint::principal(-1.0, -4.0).unwrap();
    let v = FieldElement::monomial(1 | 4, RatFn::one()).eval(&p).unwrap();
    assert!((v - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
}

#[test]
fn eval_reports_poles() {
    let p = BranchPoint::principal(-1.0, -2.0).unwrap();
    let x = FieldElement::from_ratfn(lin(1, 0, 1).inv().unwrap());
    assert!(x.eval(&p).is_err());
}
