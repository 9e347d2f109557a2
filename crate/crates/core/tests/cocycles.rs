use kummer_core::cocycle::{self, Cocycle, Sampling, Var};
use kummer_core::field::{FieldElement, RatFn};
use kummer_core::group::{data, table1};

fn elliptic_f(c: &RatFn, z: &RatFn) -> RatFn {
    let one = RatFn::one();
    &(z * &(&one - z)) * &(&one - &(c * z))
}

#[test]
fn eta_table_agrees_with_table1_pullback() {
    // With c = a and z = b, the pullback of the Legendre-type differential
    // dz²/f(z) under each row of the c-action table rescales it by a function of c alone.
    let (c, z) = (RatFn::a(), RatFn::b());
    let f = elliptic_f(&c, &z);
    for rec in table1().records() {
        let w = &rec.z_image;
        let pulled = elliptic_f(&rec.c_image, w);
        let dw = w.derive_b();
        let ratio = &pulled / &(&f * &dw.pow(2));
        assert!(ratio.derive_b().is_zero(), "{}: ratio depends on z", rec.perm);
        let u = table1().underline(&rec.perm).unwrap();
        let expected = cocycle::eta_factor(&u, Var::A);
        let eta = FieldElement::from_ratfn(ratio.inv().unwrap());
        assert_eq!(eta, expected, "{}", rec.perm);
    }
}

#[test]
fn chi_squares_to_eta() {
    let bad = cocycle::chi_square_failures();
    assert!(bad.is_empty(), "{} failures", bad.len());
}

#[test]
fn eta_is_sign_times_phi_squared() {
    let bad = cocycle::eta_phi_failures();
    assert!(bad.is_empty(), "{} failures, first {:?}", bad.len(), bad.first());
}

#[test]
fn phi_separates_variables() {
    assert!(cocycle::variable_separation_failures().is_empty());
    assert!(cocycle::phi_values_in_family());
}

#[test]
fn phi_on_named_automorphisms() {
    let gt = &data().gt;
    let find = |base: &str, signs: (i8, i8)| {
        gt.elements.iter().position(|e| e.base.to_string() == base && e.signs == signs).unwrap() as u8
    };
    let id = gt.identity;
    let tau_a = find("id", (1, -1));
    assert_eq!(*cocycle::phi(tau_a, id, 1), -&FieldElement::one());
    assert_eq!(*cocycle::phi(tau_a, id, 2), FieldElement::one());
    assert_eq!(*cocycle::phi(id, id, 1), FieldElement::one());
}

#[test]
fn cocycle_identities_on_random_pairs() {
    for which in [Cocycle::Eta, Cocycle::Chi, Cocycle::Phi1, Cocycle::Phi2] {
        let r = cocycle::verify_cocycle(which, Sampling::Random { pairs: 10_000, seed: 11 });
        assert!(r.pairs_checked > 10_000);
        assert!(r.passed(), "{}: {:?}", r.name, &r.failures[..r.failures.len().min(3)]);
    }
}

#[test]
fn phi_cocycle_exhaustive_over_tau_classes() {
    let r = cocycle::verify_cocycle(Cocycle::Phi1, Sampling::Exhaustive);
    assert_eq!(r.pairs_checked, 576 * 576);
    assert!(r.passed());
}

#[test]
fn chi_of_inverse() {
    assert!(cocycle::chi_inverse_failures(100, 3).is_empty());
}

#[test]
fn chi_evaluates_as_product_of_factors() {
    // χ evaluated numerically equals ζ times the product of the φ values.
    let d = data();
    let p = kummer_core::field::BranchPoint::principal(-0.7, -1.3).unwrap();
    for g in d.elements.iter().step_by(97) {
        let lhs = cocycle::chi(g).eval(&p).unwrap();
        let f1 = cocycle::phi(g.t1, g.t2, 1).eval(&p).unwrap();
        let f2 = cocycle::phi(g.t1, g.t2, 2).eval(&p).unwrap();
        let z = num_complex::Complex64::i().powu(g.z as u32);
        assert!((lhs - z * f1 * f2).norm() < 1e-12);
    }
}
