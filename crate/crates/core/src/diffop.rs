//! Linear differential operators in `∂/∂a`, `∂/∂b` with coefficients in F,
//! the Picard-Fuchs pair and its transformation under the symmetry group.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cocycle::{chi, phi};
use crate::error::OperatorError;
use crate::field::{FieldElement, FieldHom, Gq, RatFn};
use crate::group::{data, BasePerm, GxElement};

/// Largest total derivative order an operator may carry.
pub const MAX_ORDER: u32 = 4;

/// `Σ c_{ij} ∂aⁱ ∂bʲ`, coefficients on the left.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DifferentialOperator {
    terms: BTreeMap<(u32, u32), FieldElement>,
}

/// The pair `(𝒟₁, 𝒟₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPair {
    pub first: DifferentialOperator,
    pub second: DifferentialOperator,
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

impl DifferentialOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::multiplication(FieldElement::one())
    }

    /// Multiplication by `f`.
    pub fn multiplication(f: FieldElement) -> Self {
        Self::from_terms([((0, 0), f)])
    }

    /// `∂aⁱ ∂bʲ`.
    pub fn derivative(i: u32, j: u32) -> Self {
        Self::from_terms([((i, j), FieldElement::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), FieldElement)>) -> Self {
        let mut op = Self::zero();
        for (k, c) in terms {
            op.add_term(k, c);
        }
        op
    }

    fn add_term(&mut self, k: (u32, u32), c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElement)> {
        self.terms.iter()
    }

    /// Coefficient of `∂aⁱ∂bʲ` (zero if absent).
    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn scale(&self, f: &FieldElement) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, f * c)))
    }
}

fn derive_n(f: &FieldElement, i: u32, j: u32) -> FieldElement {
    let mut g = f.clone();
    for _ in 0..i {
        g = g.derive_a();
    }
    for _ in 0..j {
        g = g.derive_b();
    }
    g
}

/// `Σ c_{ij} · ∂aⁱ∂bʲ f`.
pub fn op_apply(d: &DifferentialOperator, f: &FieldElement) -> FieldElement {
    d.terms.iter().fold(FieldElement::zero(), |acc, ((i, j), c)| &acc + &(c * &derive_n(f, *i, *j)))
}

/// `D ∘ E` in normal form.
pub fn op_compose(d: &DifferentialOperator, e: &DifferentialOperator) -> Result<DifferentialOperator, OperatorError> {
    let order = d.order() + e.order();
    if order > MAX_ORDER && !d.terms.is_empty() && !e.terms.is_empty() {
        return Err(OperatorError::OrderTooHigh(order));
    }
    let mut out = DifferentialOperator::zero();
    for ((i, j), c) in &d.terms {
        for ((k, l), g) in &e.terms {
            for p in 0..=*i {
                for q in 0..=*j {
                    let w = Gq::from_int(binom(*i, p) * binom(*j, q));
                    let coeff = (c * &derive_n(g, p, q)).scale(&w);
                    out.add_term((i - p + k, j - q + l), coeff);
                }
            }
        }
    }
    Ok(out)
}

/// `(𝒟₁, 𝒟₂)` with `𝒟₁ = a(1−a)∂a² + (1−2a)∂a − 1/4`.
pub fn build_pf() -> OperatorPair {
    let first = pf_operator(&FieldElement::a(), (1, 0));
    let second = pf_operator(&FieldElement::b(), (0, 1));
    OperatorPair { first, second }
}

fn pf_operator(x: &FieldElement, step: (u32, u32)) -> DifferentialOperator {
    let one = FieldElement::one();
    let two = (2 * step.0, 2 * step.1);
    DifferentialOperator::from_terms([
        (two, x * &(&one - x)),
        (step, &one - &x.scale(&Gq::from_int(2))),
        ((0, 0), FieldElement::constant(Gq::from_frac(-1, 4))),
    ])
}

fn is_mobius_in(r: &RatFn, var_a: bool) -> bool {
    let (num, den) = (r.numer(), r.denom());
    let (deg, other) = if var_a {
        (num.deg_a().max(den.deg_a()), num.deg_b().max(den.deg_b()))
    } else {
        (num.deg_b().max(den.deg_b()), num.deg_a().max(den.deg_a()))
    };
    deg == 1 && other == 0
}

/// `D^τ`: coefficients pulled back by `τ♯` and `∂/∂a` replaced by
/// `∂/∂a′ = (1/m′(a))·∂/∂a` for `a′ = τ♯(a) = m(a)`, likewise in `b`.
pub fn pullback_operator(d: &DifferentialOperator, tau: &FieldHom) -> Result<DifferentialOperator, OperatorError> {
    let (ma, mb) = (tau.image_a(), tau.image_b());
    if !is_mobius_in(ma, true) {
        return Err(OperatorError::NonMobiusPullback(ma.to_string()));
    }
    if !is_mobius_in(mb, false) {
        return Err(OperatorError::NonMobiusPullback(mb.to_string()));
    }
    let inv_da = FieldElement::from_ratfn(ma.derive_a().inv().expect("Möbius derivative is nonzero"));
    let inv_db = FieldElement::from_ratfn(mb.derive_b().inv().expect("Möbius derivative is nonzero"));
    let da = DifferentialOperator::from_terms([((1, 0), inv_da)]);
    let db = DifferentialOperator::from_terms([((0, 1), inv_db)]);
    let mut out = DifferentialOperator::zero();
    for ((i, j), c) in &d.terms {
        let mut term = DifferentialOperator::multiplication(tau.apply(c));
        for _ in 0..*i {
            term = op_compose(&term, &da)?;
        }
        for _ in 0..*j {
            term = op_compose(&term, &db)?;
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// `f^k ∘ D ∘ f^{-1}` for multiplication operators.
fn conjugate(d: &DifferentialOperator, f: &FieldElement, k: u32) -> Result<DifferentialOperator, OperatorError> {
    let left = DifferentialOperator::multiplication(f.pow(k));
    let right = DifferentialOperator::multiplication(f.inverse()?);
    op_compose(&left, &op_compose(d, &right)?)
}

/// Whether `φᵢ(τ)³·𝒟ᵢ·φᵢ(τ)⁻¹ = 𝒟ᵢ^τ` holds for both `i` at `τ = (t1, t2)`.
pub fn verify_transformation(t1: u8, t2: u8) -> Result<bool, OperatorError> {
    let d = data();
    let tau = d.tau_hom_by_index(t1 as usize * d.gt.len() + t2 as usize);
    let pf = build_pf();
    for (which, op) in [(1u8, &pf.first), (2, &pf.second)] {
        let lhs = conjugate(op, phi(t1, t2, which), 3)?;
        if lhs != pullback_operator(op, tau)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indices `(t1, t2)` of the G_T elements failing [`verify_transformation`].
pub fn transformation_failures() -> Vec<(u8, u8)> {
    let n = data().gt.len() as u8;
    (0..n)
        .flat_map(|t1| (0..n).map(move |t2| (t1, t2)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&(t1, t2)| !matches!(verify_transformation(t1, t2), Ok(true)))
        .collect()
}

/// The transformed operator `𝒟₁^τ` listed for each class of the induced
/// permutation `ρ̄₁` of {0, 1, ∞}.
pub fn listed_transformed_operator(class: &BasePerm) -> DifferentialOperator {
    let a = FieldElement::a();
    let one = FieldElement::one();
    let oma = &one - &a;
    let quarter = FieldElement::constant(Gq::from_frac(-1, 4));
    let (c2, c1) = match class.to_string().as_str() {
        "id" | "(0 1)" => (&a * &oma, &one - &a.scale(&Gq::from_int(2))),
        "(1 ∞)" | "(0 1 ∞)" => (-&(&a * &oma.pow(2)), -&oma.pow(2)),
        _ => (-&(&a.pow(2) * &oma), a.pow(2)),
    };
    DifferentialOperator::from_terms([((2, 0), c2), ((1, 0), c1), ((0, 0), quarter)])
}

/// `ρ̄₁` classes whose transformed operator differs from the listed one.
pub fn listed_operator_failures() -> Vec<String> {
    let d = data();
    let pf = build_pf();
    let mut bad = Vec::new();
    for (t, e) in d.gt.elements.iter().enumerate() {
        let tau = d.tau_hom_by_index(t * d.gt.len() + d.gt.identity as usize);
        let class = e.base;
        match pullback_operator(&pf.first, tau) {
            Ok(op) if op == listed_transformed_operator(&class) => {}
            _ => bad.push(e.label()),
        }
    }
    bad
}

/// `Θ_ρ(v) = (χ⁻¹φ₁⁻²·τ♯v₁, χ⁻¹φ₂⁻²·τ♯v₂)`.
pub fn theta(rho: &GxElement, v: &(FieldElement, FieldElement)) -> (FieldElement, FieldElement) {
    let tau = data().tau_hom(rho);
    let chi_inv = chi(rho).inverse().expect("χ is a unit");
    let comp = |w: &FieldElement, which: u8| {
        let p = phi(rho.t1, rho.t2, which).pow(2).inverse().expect("φ is a unit");
        &(&chi_inv * &p) * &tau.apply(w)
    };
    (comp(&v.0, 1), comp(&v.1, 2))
}

/// `Ψ_ρ(f) = χ⁻¹·τ♯f`.
pub fn psi(rho: &GxElement, f: &FieldElement) -> FieldElement {
    let chi_inv = chi(rho).inverse().expect("χ is a unit");
    &chi_inv * &data().tau_hom(rho).apply(f)
}

/// `𝒟(f) = (𝒟₁f, 𝒟₂f)`.
pub fn apply_pair(pf: &OperatorPair, f: &FieldElement) -> (FieldElement, FieldElement) {
    (op_apply(&pf.first, f), op_apply(&pf.second, f))
}

/// Random `ρ` with a fixed seed, for sampled equivariance checks.
pub fn sample_elements(n: usize, seed: u64) -> Vec<GxElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| data().random(&mut rng)).collect()
}

impl fmt::Debug for DifferentialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for DifferentialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|((i, j), c)| match (i, j) {
                (0, 0) => format!("({c})"),
                _ => format!("({c})*Da^{i}*Db^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
