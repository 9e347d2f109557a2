//! The 24 automorphisms of Spec ℚ(i)(c)[√c, √(1−c)] over the three-point
//! automorphisms of the base, realized on the `a`-variables (and mirrored to `b`).

use std::collections::HashMap;

use super::perm::BasePerm;
use super::sigma::{mobius_point_perm, parse_expr};
use crate::error::GroupError;
use crate::field::element::square_factor;
use crate::field::{FieldElement, FieldHom, RatFn};

/// The six base permutations in the fixed enumeration order.
pub const BASE_ORDER: [&str; 6] = ["id", "(0 1)", "(1 ∞)", "(0 ∞)", "(0 1 ∞)", "(0 ∞ 1)"];

const MOBIUS_CANDIDATES: [&str; 6] = ["c", "1-c", "c/(c-1)", "1/c", "1/(1-c)", "(c-1)/c"];

/// Sign pairs for (√c, √(1−c)) in enumeration order.
pub const SIGN_ORDER: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// One automorphism: base permutation plus images of `√c`, `√(1−c)`,
/// written here in the `a`-variables.
#[derive(Clone, Debug)]
pub struct GtFactorElement {
    pub base: BasePerm,
    /// Pullback of `c` under the base permutation.
    pub mobius: RatFn,
    pub s_c: FieldElement,
    pub s_1mc: FieldElement,
    /// Signs relative to the canonical roots.
    pub signs: (i8, i8),
    /// The homomorphism on the `a`-variables (identity on `b`).
    pub hom_a: FieldHom,
    /// The same automorphism acting on the `b`-variables (identity on `a`).
    pub hom_b: FieldHom,
}

impl GtFactorElement {
    pub fn label(&self) -> String {
        let s = |x: i8| if x > 0 { '+' } else { '-' };
        format!("{}[{}{}]", self.base, s(self.signs.0), s(self.signs.1))
    }
}

/// The Möbius map in `c` (stored in `a`) inducing `base` on {0, 1, ∞}.
pub fn mobius_of(base: &BasePerm) -> Result<RatFn, GroupError> {
    for text in MOBIUS_CANDIDATES {
        let m = parse_expr(text)?;
        if mobius_point_perm(&m).as_ref() == Some(base) {
            return Ok(m);
        }
    }
    Err(GroupError::NoMatch(format!("no Möbius map induces {base}")))
}

/// Square root of a rational function of `a` inside F, as `q·M` with `M` one
/// of 1, √a, √(1−a), √a√(1−a). The root whose rational factor has a positive
/// leading coefficient is returned.
pub fn sqrt_in_a(r: &RatFn) -> Option<FieldElement> {
    for m in [0usize, 1, 2, 3] {
        let q2 = r / square_factor(m);
        if let Some(q) = q2.sqrt() {
            return Some(FieldElement::monomial(m, q));
        }
    }
    None
}

fn swap_hom(h: &FieldHom) -> FieldHom {
    let s = FieldHom::swap();
    s.compose(h).compose(&s)
}

/// All 24 elements with their composition table.
#[derive(Clone, Debug)]
pub struct GtGroup {
    pub elements: Vec<GtFactorElement>,
    /// `mul[i][j]` is the index of `τᵢτⱼ`, whose pullback is `τⱼ♯ ∘ τᵢ♯`.
    pub mul: Vec<Vec<u8>>,
    pub inv: Vec<u8>,
    pub identity: u8,
}

impl GtGroup {
    pub fn build() -> Result<Self, GroupError> {
        let mut elements = Vec::with_capacity(24);
        for text in BASE_ORDER {
            let base = BasePerm::parse(text)?;
            let mobius = mobius_of(&base)?;
            let one_minus = &RatFn::one() - &mobius;
            let root_c = sqrt_in_a(&mobius).ok_or_else(|| GroupError::NoMatch(format!("no √ of {mobius}")))?;
            let root_1mc =
                sqrt_in_a(&one_minus).ok_or_else(|| GroupError::NoMatch(format!("no √ of {one_minus}")))?;
            for signs in SIGN_ORDER {
                let s_c = root_c.scale(&crate::field::Gq::from_int(signs.0 as i64));
                let s_1mc = root_1mc.scale(&crate::field::Gq::from_int(signs.1 as i64));
                let hom_a = FieldHom::new(
                    mobius.clone(),
                    RatFn::b(),
                    s_c.clone(),
                    s_1mc.clone(),
                    FieldElement::sqrt_b(),
                    FieldElement::sqrt_1mb(),
                )?;
                let hom_b = swap_hom(&hom_a);
                elements.push(GtFactorElement { base, mobius: mobius.clone(), s_c, s_1mc, signs, hom_a, hom_b });
            }
        }
        let lookup: HashMap<(FieldElement, FieldElement), u8> =
            elements.iter().enumerate().map(|(k, e)| ((e.s_c.clone(), e.s_1mc.clone()), k as u8)).collect();
        let n = elements.len();
        let mut mul = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in 0..n {
                let hj = &elements[j].hom_a;
                let key = (hj.apply(&elements[i].s_c), hj.apply(&elements[i].s_1mc));
                mul[i][j] = *lookup
                    .get(&key)
                    .ok_or_else(|| GroupError::TableNotClosed(format!("{} * {}", elements[i].label(), elements[j].label())))?;
            }
        }
        let identity = (0..n)
            .find(|&k| elements[k].hom_a.is_identity())
            .ok_or_else(|| GroupError::TableNotClosed("no identity".into()))? as u8;
        let mut inv = vec![0u8; n];
        for i in 0..n {
            inv[i] = (0..n)
                .find(|&j| mul[i][j] == identity)
                .ok_or_else(|| GroupError::TableNotClosed(format!("no inverse for {}", elements[i].label())))?
                as u8;
        }
        Ok(GtGroup { elements, mul, inv, identity })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn order_of(&self, k: u8) -> usize {
        let mut p = k;
        let mut n = 1;
        while p != self.identity {
            p = self.mul[p as usize][k as usize];
            n += 1;
        }
        n
    }

    pub fn involution_count(&self) -> usize {
        (0..self.len() as u8).filter(|&k| self.order_of(k) == 2).count()
    }

    pub fn center_size(&self) -> usize {
        let n = self.len();
        (0..n).filter(|&i| (0..n).all(|j| self.mul[i][j] == self.mul[j][i])).count()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let ij = self.mul[i][j] as usize;
                    let jk = self.mul[j][k] as usize;
                    self.mul[ij][k] == self.mul[i][jk]
                })
            })
        })
    }

    /// Whether the base map is a homomorphism onto 𝔖({0, 1, ∞}).
    pub fn base_is_homomorphism(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let k = self.mul[i][j] as usize;
                self.elements[k].base == self.elements[i].base.compose(&self.elements[j].base)
            })
        })
    }
}
