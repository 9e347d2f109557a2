//! The canonical images of the three cycles under the Picard-Fuchs operator,
//! their transforms by the group, and rank certificates for the span.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;
use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diffop::theta;
use crate::error::RankError;
use crate::field::{BranchPoint, FieldElement, Gq, Poly, RatFn};
use crate::group::{data, BasePerm, GxElement, SigmaPerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Bullet {
    Zero,
    One,
    Infinity,
}

impl Bullet {
    pub const ALL: [Bullet; 3] = [Bullet::Zero, Bullet::One, Bullet::Infinity];

    pub fn label(self) -> &'static str {
        match self {
            Bullet::Zero => "0",
            Bullet::One => "1",
            Bullet::Infinity => "∞",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleLabel {
    pub rho: GxElement,
    pub bullet: Bullet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFunctionImage {
    pub label: CycleLabel,
    pub d_image: (FieldElement, FieldElement),
}

type Pair = (FieldElement, FieldElement);

fn inv(x: &FieldElement) -> FieldElement {
    x.inverse().expect("catalog entries are units")
}

/// `√(num)/√(den)` for square-root flag masks (bit 0: √a, 1: √(1−a),
/// 2: √b, 3: √(1−b)).
fn root_ratio(num: usize, den: usize) -> FieldElement {
    &FieldElement::monomial(num, RatFn::one()) * &inv(&FieldElement::monomial(den, RatFn::one()))
}

/// Denominators of the six `F₁`: a−b, a+b−1, ab−a−b, ab−b+1, ab−1, a−ab−1.
pub fn f1_denominators() -> Vec<Poly> {
    [
        vec![(1, 1, 0), (-1, 0, 1)],
        vec![(1, 1, 0), (1, 0, 1), (-1, 0, 0)],
        vec![(1, 1, 1), (-1, 1, 0), (-1, 0, 1)],
        vec![(1, 1, 1), (-1, 0, 1), (1, 0, 0)],
        vec![(1, 1, 1), (-1, 0, 0)],
        vec![(1, 1, 0), (-1, 1, 1), (-1, 0, 0)],
    ]
    .iter()
    .map(|t| Poly::from_int_terms(t))
    .collect()
}

/// Mask pairs `(numerator, denominator)` of the nine `F₂`: 1, √b/√a,
/// √(1−b)/√(1−a), √(1−b)/√a, √b/√(1−a), 1/√(1−a), √(1−b), 1/√a, √b.
const F2_MASKS: [(usize, usize); 9] = [(0, 0), (4, 1), (8, 2), (8, 1), (4, 2), (0, 2), (8, 0), (0, 1), (4, 0)];

/// The mirror family for second components: 1, √a/√b, √(1−a)/√(1−b),
/// √a/√(1−b), √(1−a)/√b, √(1−a), 1/√(1−b), √a, 1/√b.
const G2_MASKS: [(usize, usize); 9] = [(0, 0), (1, 4), (2, 8), (1, 8), (2, 4), (2, 0), (0, 8), (1, 0), (0, 4)];

struct Catalog {
    f1: Vec<FieldElement>,
    /// `(2·F₁·F₂)⁻¹` indexed `[f1][f2]`.
    first_inv: Vec<Vec<FieldElement>>,
    second_inv: Vec<Vec<FieldElement>>,
}

static CATALOG: Lazy<Catalog> = Lazy::new(|| {
    let f1: Vec<FieldElement> =
        f1_denominators().into_iter().map(|d| inv(&FieldElement::from_poly(d))).collect();
    let table = |masks: &[(usize, usize); 9]| -> Vec<Vec<FieldElement>> {
        f1.iter()
            .map(|f| masks.iter().map(|&(n, d)| inv(&(f * &root_ratio(n, d)).scale(&Gq::from_int(2)))).collect())
            .collect()
    };
    Catalog { first_inv: table(&F2_MASKS), second_inv: table(&G2_MASKS), f1 }
});

/// `ζ ∈ μ₄` (as the exponent of `i`) and catalog indices with
/// `x = 2ζ·F₁·F₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factorization {
    pub zeta: u8,
    pub f1: usize,
    pub f2: usize,
}

fn factor_with(x: &FieldElement, invs: &[Vec<FieldElement>]) -> Option<Factorization> {
    if x.support().count_ones() != 1 {
        return None;
    }
    for (i, row) in invs.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let r = x * e;
            if let Some(k) = r.as_ratfn().and_then(|q| q.constant_value()).and_then(|c| c.as_unit_power()) {
                return Some(Factorization { zeta: k, f1: i, f2: j });
            }
        }
    }
    None
}

/// Factors a first component over the `F₁ × F₂ × μ₄` catalog.
pub fn factor_first(x: &FieldElement) -> Result<Factorization, RankError> {
    factor_with(x, &CATALOG.first_inv).ok_or_else(|| RankError::FactorizationFailure(x.to_string()))
}

/// Factors a second component over `F₁ × (mirror family) × μ₄`.
pub fn factor_second(x: &FieldElement) -> Result<Factorization, RankError> {
    factor_with(x, &CATALOG.second_inv).ok_or_else(|| RankError::FactorizationFailure(x.to_string()))
}

/// `𝒟(ν(ξ₁ − ξ₀)) = (2/(a−b))·(√(1−b)/√(1−a) − 1, 1 − √(1−a)/√(1−b))`.
pub fn seed_image() -> Pair {
    let k = CATALOG.f1[0].scale(&Gq::from_int(2));
    let q = root_ratio(8, 2);
    let one = FieldElement::one();
    (&k * &(&q - &one), &k * &(&one - &inv(&q)))
}

fn stored_canonical() -> [Pair; 3] {
    let k = CATALOG.f1[0].scale(&Gq::from_int(2));
    let pair = |x: FieldElement, y: FieldElement| (&k * &x, -&(&k * &y));
    [
        pair(FieldElement::one(), FieldElement::one()),
        pair(root_ratio(8, 2), root_ratio(2, 8)),
        pair(root_ratio(4, 1), root_ratio(1, 4)),
    ]
}

fn half(p: &Pair) -> Pair {
    let h = Gq::from_frac(1, 2);
    (p.0.scale(&h), p.1.scale(&h))
}

fn add(p: &Pair, q: &Pair) -> Pair {
    (&p.0 + &q.0, &p.1 + &q.1)
}

fn sub(p: &Pair, q: &Pair) -> Pair {
    (&p.0 - &q.0, &p.1 - &q.1)
}

fn find_gx(r: &str, t_base: &str, signs: (i8, i8), second_tau_identity: bool) -> GxElement {
    let d = data();
    let r = d.sigma.iter().position(|p| p.to_string() == r).expect("listed permutation") as u8;
    let t1 = d.gt.elements.iter().position(|e| e.base.to_string() == t_base && e.signs == signs).expect("listed τ") as u8;
    let t2 = if second_tau_identity { d.gt.identity } else { t1 };
    let g = GxElement { r1: r, r2: r, t1, t2, z: 0 };
    debug_assert!(d.is_valid(&g));
    g
}

/// `ρᵃ = (id, id, τᵃ, 1)` with `τᵃ` flipping `√(1−a)` only.
pub fn rho_a() -> GxElement {
    find_gx("id", "id", (1, -1), true)
}

/// `ρᵇ = ((1 ∞), (1 ∞), τᵇ, 1)` with `τᵇ` exchanging `√x` and `√(1−x)`.
pub fn rho_b() -> GxElement {
    find_gx("(1 ∞)", "(0 1)", (1, 1), false)
}

/// The images of `ξ₀, ξ₁, ξ∞`, checked against their derivation from the
/// seed: `Θ_{ρᵃ}` sends it to the image of `ξ₀ + ξ₁` and `Θ_{ρᵇ}` to that
/// of `ξ₀ − ξ∞`.
pub fn canonical_images() -> Result<Vec<NormalFunctionImage>, RankError> {
    let stored = stored_canonical();
    let s = seed_image();
    let ta = theta(&rho_a(), &s);
    let tb = theta(&rho_b(), &s);
    let d0 = half(&sub(&ta, &s));
    let d1 = half(&add(&ta, &s));
    let dinf = sub(&d0, &tb);
    for (derived, b) in [(d0, Bullet::Zero), (d1, Bullet::One), (dinf, Bullet::Infinity)] {
        if derived != stored[b.index()] {
            return Err(RankError::DerivationMismatch(b.label().to_string()));
        }
    }
    let id = data().identity();
    Ok(Bullet::ALL
        .iter()
        .map(|&b| NormalFunctionImage { label: CycleLabel { rho: id, bullet: b }, d_image: stored[b.index()].clone() })
        .collect())
}

fn canonical_pairs() -> Result<[Pair; 3], RankError> {
    canonical_images()?;
    Ok(stored_canonical())
}

/// Deterministic lift of `(ρ₁, ρ₂)` in the embedded 𝔖({0, 1, ∞}) ⊂ 𝔖(Σ):
/// the first G_T element (in enumeration order) over each `ρ̄ᵢ`, which is
/// the `(+, +)` branch, and `ζ = 1`, or `ζ = i` when `sgn ρ̄₁ · sgn ρ̄₂ = −1`.
pub fn lift_rho(target: (SigmaPerm, SigmaPerm)) -> Option<GxElement> {
    let d = data();
    target.0.restrict()?;
    target.1.restrict()?;
    let r1 = d.sigma.iter().position(|p| *p == target.0)? as u8;
    let r2 = d.sigma.iter().position(|p| *p == target.1)? as u8;
    let u1 = d.sigma_underline[r1 as usize];
    let u2 = d.sigma_underline[r2 as usize];
    let t1 = d.gt_base.iter().position(|&b| b == u1)? as u8;
    let t2 = d.gt_base.iter().position(|&b| b == u2)? as u8;
    let sgn = d.base[u1 as usize].sign() * d.base[u2 as usize].sign();
    let g = GxElement { r1, r2, t1, t2, z: if sgn == 1 { 0 } else { 1 } };
    d.is_valid(&g).then_some(g)
}

/// The six lifts for the table rows `(id, σ)`, σ running over
/// 𝔖({0, 1, ∞}) in the order id, (0 1), (1 ∞), (0 1 ∞), (0 ∞), (0 ∞ 1).
///
/// Row labels read cycles in the opposite direction to [`BasePerm::parse`],
/// so the row `(id, σ)` is the lift of `(id, σ⁻¹)`. This only matters for
/// the two 3-cycles.
pub fn table2_lifts() -> Vec<(String, GxElement)> {
    ["id", "(0 1)", "(1 ∞)", "(0 1 ∞)", "(0 ∞)", "(0 ∞ 1)"]
        .iter()
        .map(|s| {
            let p = BasePerm::parse(s).expect("valid permutation").inverse().embed();
            let g = lift_rho((SigmaPerm::identity(), p)).expect("embedded permutations lift");
            (format!("(id,{s})"), g)
        })
        .collect()
}

/// One reference entry: `ζ₀·(2/den)·(first, second)` with each component
/// `±√(num)/√(den)` given by a sign and two masks.
struct RefEntry {
    imaginary: bool,
    first: (i64, usize, usize),
    second: (i64, usize, usize),
}

const fn e(imaginary: bool, first: (i64, usize, usize), second: (i64, usize, usize)) -> RefEntry {
    RefEntry { imaginary, first, second }
}

/// Denominator index into [`f1_denominators`] for each row.
const REF_DEN: [usize; 6] = [0, 2, 1, 5, 4, 3];

const REFERENCE: [[RefEntry; 3]; 6] = [
    [e(false, (1, 0, 0), (-1, 0, 0)), e(false, (1, 8, 2), (-1, 2, 8)), e(false, (1, 4, 1), (-1, 1, 4))],
    [e(false, (1, 8, 0), (1, 0, 8)), e(false, (1, 0, 2), (1, 2, 0)), e(true, (1, 4, 1), (-1, 1, 4))],
    [e(true, (1, 0, 0), (-1, 0, 0)), e(true, (1, 4, 2), (-1, 2, 4)), e(true, (1, 8, 1), (-1, 1, 8))],
    [e(true, (1, 8, 0), (1, 0, 8)), e(false, (1, 4, 2), (-1, 2, 4)), e(true, (1, 0, 1), (1, 1, 0))],
    [e(false, (1, 4, 0), (1, 0, 4)), e(true, (1, 8, 2), (-1, 2, 8)), e(false, (1, 0, 1), (1, 1, 0))],
    [e(true, (1, 4, 0), (1, 0, 4)), e(true, (1, 0, 2), (1, 2, 0)), e(false, (1, 8, 1), (-1, 1, 8))],
];

/// The reference table entry for `row` and `bullet`, with the printed signs.
pub fn reference_entry(row: usize, bullet: Bullet) -> Pair {
    let r = &REFERENCE[row][bullet.index()];
    let k = CATALOG.f1[REF_DEN[row]].scale(&if r.imaginary { Gq::from_parts(0, 2) } else { Gq::from_int(2) });
    let comp = |(s, n, d): (i64, usize, usize)| (&k * &root_ratio(n, d)).scale(&Gq::from_int(s));
    (comp(r.first), comp(r.second))
}

/// `u ∈ μ₄` (exponent of `i`) with `x = u·y` in both components, if any.
fn mu4_factor(x: &Pair, y: &Pair) -> Option<u8> {
    (0..4u8).find(|&k| {
        let u = Gq::i_pow(k);
        x.0 == y.0.scale(&u) && x.1 == y.1.scale(&u)
    })
}

#[derive(Clone, Debug)]
pub struct Table2Row {
    pub rho_label: String,
    pub image: NormalFunctionImage,
    pub first: Factorization,
    pub second: Factorization,
    /// `u ∈ μ₄` (exponent of `i`) with computed = u · reference.
    pub reference_factor: u8,
}

/// `Θ_{ρⁱ}` of the canonical images for the six lifts, each matched with the
/// reference table up to μ₄.
pub fn table2() -> Result<Vec<Table2Row>, RankError> {
    let canon = canonical_pairs()?;
    let mut rows = Vec::with_capacity(18);
    for (row, (name, rho)) in table2_lifts().into_iter().enumerate() {
        for b in Bullet::ALL {
            let img = theta(&rho, &canon[b.index()]);
            let factor = mu4_factor(&img, &reference_entry(row, b))
                .ok_or_else(|| RankError::Table2Mismatch { row, bullet: b.label().to_string() })?;
            rows.push(Table2Row {
                rho_label: name.clone(),
                first: factor_first(&img.0)?,
                second: factor_second(&img.1)?,
                image: NormalFunctionImage { label: CycleLabel { rho, bullet: b }, d_image: img },
                reference_factor: factor,
            });
        }
    }
    Ok(rows)
}

/// Number of distinct `(F₁, F₂)` pairs among the first components.
pub fn structural_rank(rows: &[NormalFunctionImage]) -> Result<usize, RankError> {
    let mut seen = BTreeSet::new();
    for r in rows {
        let f = factor_first(&r.d_image.0)?;
        seen.insert((f.f1, f.f2));
    }
    Ok(seen.len())
}

/// Numerical rank of the matrix of first components evaluated at `points`,
/// counting singular values above `threshold · σ₁`.
pub fn numeric_rank(rows: &[NormalFunctionImage], points: &[BranchPoint], threshold: f64) -> Result<usize, RankError> {
    let mut m = DMatrix::<Complex64>::zeros(points.len(), rows.len());
    for (i, p) in points.iter().enumerate() {
        for (j, r) in rows.iter().enumerate() {
            m[(i, j)] = r.d_image.0.eval(p)?;
        }
    }
    let sv = m.singular_values();
    let top = sv.max();
    if top == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > threshold * top).count())
}

/// `n` principal-branch points with `a, b ∈ (−2, −0.2)` drawn from `seed`,
/// kept away from the loci where catalog denominators vanish.
pub fn sample_points(n: usize, seed: u64) -> Vec<BranchPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let a = rng.gen_range(-2.0..-0.2);
        let b = rng.gen_range(-2.0..-0.2);
        let dens = [a - b, a + b - 1.0, a * b - a - b, a * b - b + 1.0, a * b - 1.0, a - a * b - 1.0];
        if dens.iter().any(|d: &f64| d.abs() < 0.05) {
            continue;
        }
        if let Ok(p) = BranchPoint::principal(a, b) {
            out.push(p);
        }
    }
    out
}

/// Exact rank over ℚ(i) of the span of image pairs, by Gaussian elimination
/// on the polynomial coefficients after clearing a common denominator.
pub fn exact_rank(images: &[Pair]) -> usize {
    let mut common = Poly::one();
    for (x, y) in images {
        for comp in [x, y] {
            for r in comp.coeffs() {
                if !r.is_zero() {
                    let g = Poly::gcd(&common, r.denom());
                    common = &common * &r.denom().div_exact(&g).expect("gcd divides");
                }
            }
        }
    }
    let mut columns: HashMap<(usize, usize, u32, u32), usize> = HashMap::new();
    let mut rows: Vec<BTreeMap<usize, Gq>> = Vec::new();
    for (x, y) in images {
        let mut row = BTreeMap::new();
        for (ci, comp) in [x, y].into_iter().enumerate() {
            for (m, r) in comp.coeffs().iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let scale = common.div_exact(r.denom()).expect("common multiple");
                let p = r.numer() * &scale;
                for (ea, eb, c) in p.terms() {
                    let n = columns.len();
                    let col = *columns.entry((ci, m, *ea, *eb)).or_insert(n);
                    row.insert(col, c.clone());
                }
            }
        }
        rows.push(row);
    }
    eliminate(rows)
}

fn eliminate(mut rows: Vec<BTreeMap<usize, Gq>>) -> usize {
    let mut rank = 0;
    let mut pivots: Vec<(usize, BTreeMap<usize, Gq>)> = Vec::new();
    for row in rows.iter_mut() {
        for (col, prow) in &pivots {
            if let Some(f) = row.get(col).cloned() {
                for (k, v) in prow {
                    let nv = row.get(k).cloned().unwrap_or_else(Gq::zero) - &f * v;
                    if nv.is_zero() {
                        row.remove(k);
                    } else {
                        row.insert(*k, nv);
                    }
                }
            }
        }
        if let Some((&col, lead)) = row.iter().next() {
            let lead = lead.clone();
            let normalized: BTreeMap<usize, Gq> = row.iter().map(|(k, v)| (*k, v / &lead)).collect();
            pivots.push((col, normalized));
            rank += 1;
        }
    }
    rank
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRank {
    pub images: usize,
    /// Distinct images up to sign.
    pub distinct: usize,
    /// Distinct `(F₁, F₂)` among first components.
    pub structural: usize,
    /// Exact ℚ(i)-rank of the distinct images.
    pub exact: usize,
}

/// Sign-normalized key of a pair: the pair itself or its negative, whichever
/// serializes first.
fn up_to_sign(p: &Pair) -> (String, String) {
    let a = (p.0.to_string(), p.1.to_string());
    let n = (-&p.0, -&p.1);
    let b = (n.0.to_string(), n.1.to_string());
    a.min(b)
}

/// Images `Θ_ρ(canonical •)` for every `ρ` in `elements` and every `•`,
/// reduced up to sign and ranked structurally and exactly over ℚ.
pub fn orbit_rank(elements: &[GxElement]) -> Result<OrbitRank, RankError> {
    let canon = canonical_pairs()?;
    let mut classes: BTreeMap<(u8, u8, u8), GxElement> = BTreeMap::new();
    for g in elements {
        classes.entry((g.t1, g.t2, g.z)).or_insert(*g);
    }
    let reps: Vec<GxElement> = classes.values().copied().collect();
    let images: Vec<Pair> = reps.par_iter().flat_map_iter(|g| canon.iter().map(move |v| theta(g, v))).collect();
    let mut distinct: BTreeMap<(String, String), Pair> = BTreeMap::new();
    for img in images {
        distinct.entry(up_to_sign(&img)).or_insert(img);
    }
    let list: Vec<Pair> = distinct.into_values().collect();
    let mut sig = BTreeSet::new();
    for (x, y) in &list {
        let f = factor_first(x)?;
        factor_second(y)?;
        sig.insert((f.f1, f.f2));
    }
    Ok(OrbitRank {
        images: elements.len() * 3,
        distinct: list.len(),
        structural: sig.len(),
        exact: exact_rank(&list),
    })
}

/// [`orbit_rank`] over all of G_𝒳.
pub fn orbit_rank_full() -> Result<OrbitRank, RankError> {
    orbit_rank(&data().elements)
}
