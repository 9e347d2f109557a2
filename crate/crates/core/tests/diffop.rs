mod common;

use common::{random_element, random_nonzero};
use kummer_core::diffop::{self, op_apply, op_compose, pullback_operator, DifferentialOperator};
use kummer_core::error::OperatorError;
use kummer_core::field::{FieldElement, Gq};
use kummer_core::group::{data, GxElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn div(x: &FieldElement, y: &FieldElement) -> FieldElement {
    x * &y.inverse().unwrap()
}

fn random_operator(rng: &mut impl Rng, max_order: u32) -> DifferentialOperator {
    let mut terms = Vec::new();
    for i in 0..=max_order {
        for j in 0..=(max_order - i) {
            if rng.gen_bool(0.5) {
                terms.push(((i, j), random_element(rng, 2)));
            }
        }
    }
    DifferentialOperator::from_terms(terms)
}

fn rho_named(sigma: &str, base: &str, signs: (i8, i8)) -> GxElement {
    let d = data();
    let r = d.sigma.iter().position(|p| p.to_string() == sigma).unwrap() as u8;
    let t1 = d.gt.elements.iter().position(|e| e.base.to_string() == base && e.signs == signs).unwrap() as u8;
    let t2 = t1;
    let g = GxElement { r1: r, r2: r, t1, t2, z: 0 };
    let g = if base == "id" { GxElement { t2: d.gt.identity, ..g } } else { g };
    assert!(d.is_valid(&g), "{g:?}");
    g
}

#[test]
fn pf_coefficients_and_trivial_applications() {
    let pf = diffop::build_pf();
    let a = FieldElement::a();
    let b = FieldElement::b();
    assert_eq!(pf.first.coeff(2, 0), &a * &(&fe(1) - &a));
    assert_eq!(pf.second.coeff(0, 1), &fe(1) - &b.scale(&Gq::from_int(2)));
    assert!(pf.first.coeff(0, 2).is_zero());
    assert_eq!(op_apply(&pf.first, &fe(1)), FieldElement::constant(Gq::from_frac(-1, 4)));
    let f = random_element(&mut ChaCha8Rng::seed_from_u64(1), 4);
    assert_eq!(op_apply(&DifferentialOperator::identity(), &f), f);
}

#[test]
fn pf_on_seed_matches_expansion() {
    // 𝒟₁ of (√(1−b)/√(1−a) − 1)/(a−b), expanded by hand through the
    // derivatives of (1−a)^{-1/2}(a−b)^{-1}.
    let pf = diffop::build_pf();
    let a = FieldElement::a();
    let b = FieldElement::b();
    let s1ma = FieldElement::sqrt_1ma();
    let s1mb = FieldElement::sqrt_1mb();
    let one = fe(1);
    let amb = &a - &b;
    let r = div(&s1mb, &s1ma);
    let f = div(&(&r - &one), &amb);
    let lhs = op_apply(&pf.first, &f);
    // f = r/(a−b) − 1/(a−b), with r' = r/(2(1−a)), r'' = 3r/(4(1−a)²).
    let oma = &one - &a;
    let r1 = div(&r, &oma.scale(&Gq::from_int(2)));
    let r2 = div(&r.scale(&Gq::from_int(3)), &oma.pow(2).scale(&Gq::from_int(4)));
    let g = div(&one, &amb);
    let g1 = -&div(&one, &amb.pow(2));
    let g2 = div(&fe(2), &amb.pow(3));
    let fa = &(&(&r1 * &g) + &(&r * &g1)) - &g1;
    let faa = &(&(&(&r2 * &g) + &(&r1 * &g1).scale(&Gq::from_int(2))) + &(&r * &g2)) - &g2;
    let rhs = &(&(&(&a * &oma) * &faa) + &(&(&one - &a.scale(&Gq::from_int(2))) * &fa))
        - &f.scale(&Gq::from_frac(1, 4));
    assert_eq!(lhs, rhs);
}

#[test]
fn compose_examples() {
    let a = FieldElement::a();
    let da = DifferentialOperator::derivative(1, 0);
    let ma = DifferentialOperator::multiplication(a.clone());
    let expected = DifferentialOperator::from_terms([((1, 0), a.clone()), ((0, 0), fe(1))]);
    assert_eq!(op_compose(&da, &ma).unwrap(), expected);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (f, g) = (random_element(&mut rng, 3), random_element(&mut rng, 3));
    let fg = op_compose(&DifferentialOperator::multiplication(f.clone()), &DifferentialOperator::multiplication(g.clone()));
    assert_eq!(fg.unwrap(), DifferentialOperator::multiplication(&f * &g));
    let d3 = DifferentialOperator::derivative(3, 0);
    assert_eq!(op_compose(&d3, &d3), Err(OperatorError::OrderTooHigh(6)));
}

#[test]
fn compose_is_associative_and_acts_as_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let (d, e, g) = (random_operator(&mut rng, 1), random_operator(&mut rng, 1), random_operator(&mut rng, 2));
        let left = op_compose(&op_compose(&d, &e).unwrap(), &g).unwrap();
        let right = op_compose(&d, &op_compose(&e, &g).unwrap()).unwrap();
        assert_eq!(left, right);
        let f = random_element(&mut rng, 3);
        let de = op_compose(&d, &e).unwrap();
        assert_eq!(op_apply(&de, &f), op_apply(&d, &op_apply(&e, &f)));
    }
}

#[test]
fn pullback_examples() {
    let d = data();
    let pf = diffop::build_pf();
    let id = d.tau_hom_by_index(d.gt.identity as usize * 25);
    assert_eq!(pullback_operator(&pf.first, id).unwrap(), pf.first);
    let t = d.gt.elements.iter().position(|e| e.base.to_string() == "(1 ∞)").unwrap();
    let tau = d.tau_hom_by_index(t * 24 + d.gt.identity as usize);
    let one = fe(1);
    let a = FieldElement::a();
    let am1 = &a - &one;
    let expected = DifferentialOperator::from_terms([((1, 0), -&am1.pow(2))]);
    assert_eq!(pullback_operator(&DifferentialOperator::derivative(1, 0), tau).unwrap(), expected);
    let oma = &one - &a;
    let listed = DifferentialOperator::from_terms([
        ((2, 0), -&(&a * &oma.pow(2))),
        ((1, 0), -&oma.pow(2)),
        ((0, 0), FieldElement::constant(Gq::from_frac(-1, 4))),
    ]);
    assert_eq!(pullback_operator(&pf.first, tau).unwrap(), listed);
}

#[test]
fn pullback_is_functorial_and_intertwines() {
    let d = data();
    let pf = diffop::build_pf();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = d.gt.len() * d.gt.len();
    for _ in 0..30 {
        let (k1, k2) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (t1, t2) = (d.tau_hom_by_index(k1), d.tau_hom_by_index(k2));
        // (ττ′)♯ = τ′♯ ∘ τ♯.
        let composite = t2.compose(t1);
        for op in [&pf.first, &pf.second] {
            let once = pullback_operator(op, &composite).unwrap();
            let twice = pullback_operator(&pullback_operator(op, t1).unwrap(), t2).unwrap();
            assert_eq!(once, twice);
        }
        let f = random_element(&mut rng, 3);
        let lhs = op_apply(&pullback_operator(&pf.first, t1).unwrap(), &t1.apply(&f));
        assert_eq!(lhs, t1.apply(&op_apply(&pf.first, &f)));
    }
}

#[test]
fn transformation_law_on_all_of_gt() {
    let bad = diffop::transformation_failures();
    assert!(bad.is_empty(), "{} failures", bad.len());
    assert!(diffop::listed_operator_failures().is_empty());
}

fn seed_pair() -> (FieldElement, FieldElement) {
    let a = FieldElement::a();
    let b = FieldElement::b();
    let one = fe(1);
    let k = div(&fe(2), &(&a - &b));
    let q = div(&FieldElement::sqrt_1mb(), &FieldElement::sqrt_1ma());
    (&k * &(&q - &one), &k * &(&one - &q.inverse().unwrap()))
}

#[test]
fn theta_on_seed() {
    let s = seed_pair();
    let id = data().identity();
    assert_eq!(diffop::theta(&id, &s), s);

    let rho_a = rho_named("id", "id", (1, -1));
    let a = FieldElement::a();
    let b = FieldElement::b();
    let one = fe(1);
    let k = div(&fe(2), &(&a - &b));
    let q = div(&FieldElement::sqrt_1mb(), &FieldElement::sqrt_1ma());
    let expected = (&k * &(&one + &q), -&(&k * &(&one + &q.inverse().unwrap())));
    assert_eq!(diffop::theta(&rho_a, &s), expected);

    let rho_b = rho_named("(1 ∞)", "(0 1)", (1, 1));
    let kb = div(&fe(2), &(&b - &a));
    let p = div(&FieldElement::sqrt_b(), &FieldElement::sqrt_a());
    let expected = (&kb * &(&p - &one), &kb * &(&one - &p.inverse().unwrap()));
    assert_eq!(diffop::theta(&rho_b, &s), expected);
}

#[test]
fn psi_linearization_and_equivariance() {
    let d = data();
    let pf = diffop::build_pf();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f0 = random_element(&mut rng, 3);
    assert_eq!(diffop::psi(&d.identity(), &f0), f0);
    for _ in 0..100 {
        let (g, h) = (d.random(&mut rng), d.random(&mut rng));
        let f = random_nonzero(&mut rng, 2);
        let gh = d.mul(&g, &h);
        assert_eq!(diffop::psi(&gh, &f), diffop::psi(&h, &diffop::psi(&g, &f)));
        let lhs = diffop::apply_pair(&pf, &diffop::psi(&g, &f));
        let rhs = diffop::theta(&g, &diffop::apply_pair(&pf, &f));
        assert_eq!(lhs, rhs);
        let v = (random_element(&mut rng, 2), random_element(&mut rng, 2));
        assert_eq!(diffop::theta(&gh, &v), diffop::theta(&h, &diffop::theta(&g, &v)));
    }
}
