#![allow(dead_code)]

use kummer_core::field::{BranchPoint, FieldElement, Gq, Poly, RatFn};
use rand::Rng;

fn small_gq<R: Rng>(rng: &mut R) -> Gq {
    let re = rng.gen_range(-3..=3);
    let im = if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 };
    Gq::from_parts(re, im)
}

/// A rational function with a numerator of degree ≤ 1 in each variable and a
/// denominator drawn from a short list of linear factors.
pub fn random_ratfn<R: Rng>(rng: &mut R) -> RatFn {
    let mut terms = Vec::new();
    for (ea, eb) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        if rng.gen_bool(0.6) {
            terms.push((ea, eb, small_gq(rng)));
        }
    }
    let num = Poly::from_terms(terms);
    let dens: [&[(i64, u32, u32)]; 6] = [
        &[(1, 0, 0)],
        &[(1, 1, 0), (-1, 0, 1)],
        &[(1, 1, 0), (2, 0, 0)],
        &[(1, 0, 1), (3, 0, 0)],
        &[(1, 1, 0), (1, 0, 1), (-1, 0, 0)],
        &[(1, 1, 1), (-1, 0, 0)],
    ];
    let den = Poly::from_int_terms(dens[rng.gen_range(0..dens.len())]);
    RatFn::new(num, den)
}

/// A field element supported on at most `max_terms` random monomials.
pub fn random_element<R: Rng>(rng: &mut R, max_terms: usize) -> FieldElement {
    let mut x = FieldElement::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let m = rng.gen_range(0..16);
        x = &x + &FieldElement::monomial(m, random_ratfn(rng));
    }
    x
}

pub fn random_nonzero<R: Rng>(rng: &mut R, max_terms: usize) -> FieldElement {
    loop {
        let x = random_element(rng, max_terms);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A principal branch point with `a, b ∈ (−2, −0.2)`.
pub fn random_point<R: Rng>(rng: &mut R) -> BranchPoint {
    loop {
        let a: f64 = rng.gen_range(-2.0..-0.2);
        let b: f64 = rng.gen_range(-2.0..-0.2);
        if (a - b).abs() > 0.05 && (a * b - 1.0).abs() > 0.05 {
            if let Ok(p) = BranchPoint::principal(a, b) {
                return p;
            }
        }
    }
}
