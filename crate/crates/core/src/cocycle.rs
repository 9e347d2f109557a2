//! The 1-cocycles η, φ₁, φ₂ and χ on the symmetry groups and checks of their
//! defining identities.
//!
//! Convention: for `g, h ∈ G_𝒳` the pullback of `gh` is `h♯ ∘ g♯`, and a
//! 1-cocycle satisfies `c(gh) = h♯(c(g)) · c(h)`.

use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::field::{FieldElement, Gq, RatFn};
use crate::group::gt::BASE_ORDER;
use crate::group::{data, BasePerm, GxElement};

/// Which of the two variables a factor lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    A,
    B,
}

/// `η₁(σ)` (in `a`) or `η₂(σ)` (in `b`) for a permutation of {0, 1, ∞}.
pub fn eta_factor(sigma: &BasePerm, var: Var) -> FieldElement {
    let x = match var {
        Var::A => RatFn::a(),
        Var::B => RatFn::b(),
    };
    let one = RatFn::one();
    let pos = BASE_ORDER.iter().position(|t| BasePerm::parse(t).ok().as_ref() == Some(sigma));
    let r = match pos.map(|k| BASE_ORDER[k]) {
        Some("id") => one,
        Some("(0 1)") => RatFn::from_int(-1),
        Some("(1 ∞)") => &one - &x,
        Some("(0 1 ∞)") => &x - &one,
        Some("(0 ∞)") => x,
        Some("(0 ∞ 1)") => -&x,
        _ => unreachable!("not a permutation of three points: {sigma}"),
    };
    FieldElement::from_ratfn(r)
}

pub fn eta(rho: &GxElement) -> FieldElement {
    let (u1, u2) = data().underlines(rho);
    &eta_factor(&u1, Var::A) * &eta_factor(&u2, Var::B)
}

/// `√a√(1−a)/(a²−a+1)` and its `b`-analogue.
fn coboundary_seed(var: Var) -> FieldElement {
    let u = FieldElement::monomial(
        1 | 2,
        RatFn::from_poly(crate::field::Poly::from_int_terms(&[(1, 2, 0), (-1, 1, 0), (1, 0, 0)])).inv().unwrap(),
    );
    match var {
        Var::A => u,
        Var::B => u.swap_vars(),
    }
}

struct PhiTables {
    phi1: Vec<FieldElement>,
    phi2: Vec<FieldElement>,
}

static PHI: Lazy<PhiTables> = Lazy::new(|| {
    let gt = &data().gt;
    let table = |var: Var| {
        let u = coboundary_seed(var);
        let u_inv = u.inverse().expect("seed is a unit");
        gt.elements
            .iter()
            .map(|e| {
                let h = if var == Var::A { &e.hom_a } else { &e.hom_b };
                &h.apply(&u) * &u_inv
            })
            .collect()
    };
    PhiTables { phi1: table(Var::A), phi2: table(Var::B) }
});

/// `φᵢ(τ)` for `τ = (τ₁, τ₂)` given by indices into the 𝔖₄ factor; it depends
/// on `τ₁` alone for `i = 1` and on `τ₂` alone for `i = 2`.
pub fn phi(t1: u8, t2: u8, which: u8) -> &'static FieldElement {
    match which {
        1 => &PHI.phi1[t1 as usize],
        2 => &PHI.phi2[t2 as usize],
        _ => panic!("phi index must be 1 or 2"),
    }
}

/// `φᵢ(τ)` computed from the full pullback of `τ`, without the table.
pub fn phi_direct(t1: u8, t2: u8, which: u8) -> FieldElement {
    let d = data();
    let var = if which == 1 { Var::A } else { Var::B };
    let u = coboundary_seed(var);
    let h = d.tau_hom_by_index(t1 as usize * d.gt.len() + t2 as usize);
    &h.apply(&u) * &u.inverse().unwrap()
}

/// `χ(ρ) = ζ · φ₁(τ) · φ₂(τ)`.
pub fn chi(rho: &GxElement) -> FieldElement {
    let p = phi(rho.t1, rho.t2, 1) * phi(rho.t1, rho.t2, 2);
    p.scale(&Gq::i_pow(rho.z))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cocycle {
    Eta,
    Chi,
    Phi1,
    Phi2,
}

impl Cocycle {
    pub fn name(self) -> &'static str {
        match self {
            Cocycle::Eta => "eta",
            Cocycle::Chi => "chi",
            Cocycle::Phi1 => "phi1",
            Cocycle::Phi2 => "phi2",
        }
    }

    fn value(self, g: &GxElement) -> FieldElement {
        match self {
            Cocycle::Eta => eta(g),
            Cocycle::Chi => chi(g),
            Cocycle::Phi1 => phi(g.t1, g.t2, 1).clone(),
            Cocycle::Phi2 => phi(g.t1, g.t2, 2).clone(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Sampling {
    /// Random pairs from a seeded generator, plus all pairs of generators.
    Random { pairs: usize, seed: u64 },
    /// Every pair: over G_T for φ, over the 576 τ-classes for η and χ
    /// (both sides only see `τ`, the underlines and `ζ`).
    Exhaustive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub name: String,
    pub pairs_checked: usize,
    pub failures: Vec<(String, String)>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn holds(which: Cocycle, g: &GxElement, h: &GxElement) -> bool {
    let d = data();
    let gh = d.mul(g, h);
    let lhs = which.value(&gh);
    let rhs = &d.tau_hom(h).apply(&which.value(g)) * &which.value(h);
    lhs == rhs
}

/// Representatives of G_𝒳 with `ρ₁ = ρ₂ = id` and `ζ = 1` or `i` (as the
/// fiber condition requires) for every `τ` compatible with some `ρ`.
fn tau_representatives() -> Vec<GxElement> {
    let d = data();
    let mut seen = std::collections::HashSet::new();
    d.elements.iter().filter(|e| seen.insert((e.t1, e.t2))).copied().collect()
}

/// Checks `c(gh) = h♯(c(g))·c(h)`.
pub fn verify_cocycle(which: Cocycle, sampling: Sampling) -> CocycleReport {
    let d = data();
    let pairs: Vec<(GxElement, GxElement)> = match sampling {
        Sampling::Random { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out: Vec<_> = (0..pairs).map(|_| (d.random(&mut rng), d.random(&mut rng))).collect();
            let gens = d.generators();
            for g in &gens {
                for h in &gens {
                    out.push((*g, *h));
                }
            }
            out
        }
        Sampling::Exhaustive => {
            let reps = tau_representatives();
            let mut out = Vec::with_capacity(reps.len() * reps.len());
            for g in &reps {
                for h in &reps {
                    out.push((*g, *h));
                }
            }
            out
        }
    };
    let failures: Vec<(String, String)> = pairs
        .par_iter()
        .filter(|(g, h)| !holds(which, g, h))
        .map(|(g, h)| (d.label(g), d.label(h)))
        .collect();
    CocycleReport { name: which.name().to_string(), pairs_checked: pairs.len(), failures }
}

/// Elements with `χ(ρ)² ≠ η(ρ)`, over all of G_𝒳.
pub fn chi_square_failures() -> Vec<GxElement> {
    data().elements.par_iter().filter(|g| chi(g).pow(2) != eta(g)).copied().collect()
}

/// Elements of G_𝒴 (ζ dropped) violating `ηᵢ(ρ̄ᵢ) = sgn(ρ̄ᵢ)·φᵢ(τ)²` for
/// `i = 1` or `2`, checked over every `(ρ₁, ρ₂, τ)`.
pub fn eta_phi_failures() -> Vec<(GxElement, u8)> {
    let d = data();
    let classes: Vec<GxElement> = d.elements.iter().filter(|e| e.z < 2).copied().collect();
    classes
        .par_iter()
        .flat_map_iter(|g| {
            let (u1, u2) = d.underlines(g);
            let mut bad = Vec::new();
            for (which, u, var) in [(1u8, u1, Var::A), (2, u2, Var::B)] {
                let rhs = phi(g.t1, g.t2, which).pow(2).scale(&Gq::from_int(u.sign() as i64));
                if eta_factor(&u, var) != rhs {
                    bad.push((*g, which));
                }
            }
            bad
        })
        .collect()
}

/// Pairs `(t1, t2)` where the tabulated φᵢ differs from the one computed from
/// the full pullback of `τ`.
pub fn variable_separation_failures() -> Vec<(u8, u8, u8)> {
    let n = data().gt.len() as u8;
    (0..n)
        .into_par_iter()
        .flat_map_iter(|t1| {
            (0..n).flat_map(move |t2| {
                [1u8, 2].into_iter().filter(move |&w| phi_direct(t1, t2, w) != *phi(t1, t2, w)).map(move |w| (t1, t2, w))
            })
        })
        .collect()
}

/// Samples where `χ(ρ⁻¹) ≠ (ρ⁻¹)♯(χ(ρ))⁻¹`.
pub fn chi_inverse_failures(samples: usize, seed: u64) -> Vec<GxElement> {
    let d = data();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rhos: Vec<GxElement> = (0..samples).map(|_| d.random(&mut rng)).collect();
    rhos.par_iter()
        .filter(|g| {
            let gi = d.inverse(g);
            let rhs = d.tau_hom(&gi).apply(&chi(g)).inverse().expect("χ is a unit");
            chi(&gi) != rhs
        })
        .copied()
        .collect()
}

/// Whether every tabulated φᵢ squares to one of ±1, ±x, ±(1−x).
pub fn phi_values_in_family() -> bool {
    let allowed = |var: Var| -> Vec<FieldElement> {
        let x = match var {
            Var::A => FieldElement::a(),
            Var::B => FieldElement::b(),
        };
        let one = FieldElement::one();
        let omx = &one - &x;
        vec![one.clone(), -&one, x.clone(), -&x, omx.clone(), -&omx]
    };
    let (la, lb) = (allowed(Var::A), allowed(Var::B));
    PHI.phi1.iter().all(|p| la.contains(&p.pow(2))) && PHI.phi2.iter().all(|p| lb.contains(&p.pow(2)))
}

/// Draws a random element; exposed for reproducible sampling in reports.
pub fn random_element(rng: &mut impl Rng) -> GxElement {
    data().random(rng)
}
