//! Ring homomorphisms F → F given by images of the six generators.

use super::element::FieldElement;
use super::ratfn::{RatFn, Substitution};
use crate::error::FieldError;

/// A homomorphism determined by the images of `a`, `b`, `√a`, `√(1−a)`,
/// `√b`, `√(1−b)`.
#[derive(Clone, Debug)]
pub struct FieldHom {
    image_a: RatFn,
    image_b: RatFn,
    roots: [FieldElement; 4],
    subst: Substitution,
    monomials: Vec<FieldElement>,
}

impl PartialEq for FieldHom {
    fn eq(&self, o: &Self) -> bool {
        self.image_a == o.image_a && self.image_b == o.image_b && self.roots == o.roots
    }
}

impl Eq for FieldHom {}

impl FieldHom {
    /// Builds the homomorphism, checking the defining relations of the
    /// square roots exactly.
    pub fn new(
        image_a: RatFn,
        image_b: RatFn,
        sqrt_a: FieldElement,
        sqrt_1ma: FieldElement,
        sqrt_b: FieldElement,
        sqrt_1mb: FieldElement,
    ) -> Result<Self, FieldError> {
        let one = RatFn::one();
        let targets = [
            (&sqrt_a, image_a.clone(), "image(√a)² != image(a)"),
            (&sqrt_1ma, &one - &image_a, "image(√(1-a))² != 1 - image(a)"),
            (&sqrt_b, image_b.clone(), "image(√b)² != image(b)"),
            (&sqrt_1mb, &one - &image_b, "image(√(1-b))² != 1 - image(b)"),
        ];
        for (root, target, msg) in targets {
            if root * root != FieldElement::from_ratfn(target) {
                return Err(FieldError::NotAHom(msg.to_string()));
            }
        }
        Ok(FieldHom::build(image_a, image_b, [sqrt_a, sqrt_1ma, sqrt_b, sqrt_1mb]))
    }

    fn build(image_a: RatFn, image_b: RatFn, roots: [FieldElement; 4]) -> Self {
        let subst = Substitution::new(&image_a, &image_b);
        let monomials = (0..16)
            .map(|m| {
                let mut v = FieldElement::one();
                for (bit, r) in roots.iter().enumerate() {
                    if m & (1 << bit) != 0 {
                        v = &v * r;
                    }
                }
                v
            })
            .collect();
        FieldHom { image_a, image_b, roots, subst, monomials }
    }

    pub fn identity() -> Self {
        FieldHom::build(
            RatFn::a(),
            RatFn::b(),
            [FieldElement::sqrt_a(), FieldElement::sqrt_1ma(), FieldElement::sqrt_b(), FieldElement::sqrt_1mb()],
        )
    }

    /// Exchanges `a ↔ b` together with their square roots.
    pub fn swap() -> Self {
        FieldHom::build(
            RatFn::b(),
            RatFn::a(),
            [FieldElement::sqrt_b(), FieldElement::sqrt_1mb(), FieldElement::sqrt_a(), FieldElement::sqrt_1ma()],
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == FieldHom::identity()
    }

    pub fn image_a(&self) -> &RatFn {
        &self.image_a
    }

    pub fn image_b(&self) -> &RatFn {
        &self.image_b
    }

    /// Image of `√a`, `√(1−a)`, `√b`, `√(1−b)` for `k = 0..4`.
    pub fn root_image(&self, k: usize) -> &FieldElement {
        &self.roots[k]
    }

    /// Image of a rational coefficient.
    pub fn apply_ratfn(&self, r: &RatFn) -> RatFn {
        self.subst.apply(r)
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        let mut out = FieldElement::zero();
        for (m, r) in x.coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let c = self.subst.apply(r);
            let term = self.monomials[m].scale_ratfn(&c);
            out = if out.is_zero() { term } else { &out + &term };
        }
        out
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &FieldHom) -> FieldHom {
        FieldHom::build(
            self.apply_ratfn(&inner.image_a),
            self.apply_ratfn(&inner.image_b),
            std::array::from_fn(|k| self.apply(&inner.roots[k])),
        )
    }
}
