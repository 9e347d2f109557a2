//! Periods `P₁`, `P₂`, the regulator integral `ℒ(a, b)` and numerical
//! Picard-Fuchs checks.

use nalgebra::Matrix2;
use num_complex::Complex64;

use super::quad::{self, integrate, QuadratureSpec};
use crate::error::NumericsError;
use crate::field::{BranchPoint, FieldElement};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `P₁(c) = ∫₀¹ dx/√(x(1−x)(1−cx))` and `P₂(c) = ∫₁^∞` of the same form,
/// the latter through `x = 1/u` as `−i∫₀¹ du/(√u√(1−u)√(u−c))`.
///
/// On the path the principal roots of `1 − cx` and `u − c` never cross the
/// cut when `c ∉ [0, ∞)`, so the principal branch is the continuous one.
pub fn period_p(which: u8, cv: Complex64, spec: &QuadratureSpec) -> Result<Complex64, NumericsError> {
    if cv.im == 0.0 && cv.re >= 0.0 {
        return Err(NumericsError::DomainError(format!("c = {cv} lies in [0, ∞)")));
    }
    match which {
        1 => integrate(|x, xc| 1.0 / (c(x.sqrt() * xc.sqrt()) * (c(1.0) - cv * x).sqrt()), spec),
        2 => integrate(|u, uc| -I / (c(u.sqrt() * uc.sqrt()) * (c(u) - cv).sqrt()), spec),
        _ => Err(NumericsError::InvalidParameter(format!("period index {which}"))),
    }
}

/// `π·Σ ((1/2)_n / n!)² cⁿ`, summed until terms drop below rounding.
pub fn hypergeometric_p1(cv: Complex64) -> Result<Complex64, NumericsError> {
    if cv.norm() >= 1.0 {
        return Err(NumericsError::DomainError(format!("series diverges at |c| = {}", cv.norm())));
    }
    let mut term = c(1.0);
    let mut sum = term;
    for n in 0..10_000 {
        let r = (n as f64 + 0.5) / (n as f64 + 1.0);
        term *= cv * (r * r);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            return Ok(sum * std::f64::consts::PI);
        }
    }
    Err(NumericsError::NoConvergence(term.norm()))
}

/// The region where ℒ is evaluated: real `a, b < 0` with `√(1−a)`, `√(1−b)`
/// real positive.
fn real_ab(p: &BranchPoint) -> Result<(f64, f64), NumericsError> {
    let ok = p.a.im == 0.0
        && p.b.im == 0.0
        && p.a.re < 0.0
        && p.b.re < 0.0
        && p.sqrt_1ma.im == 0.0
        && p.sqrt_1ma.re > 0.0
        && p.sqrt_1mb.im == 0.0
        && p.sqrt_1mb.re > 0.0;
    if ok {
        Ok((p.a.re, p.b.re))
    } else {
        Err(NumericsError::DomainError("ℒ needs real a, b < 0 with positive √(1−a), √(1−b)".into()))
    }
}

fn p1_real(cv: f64, spec: &QuadratureSpec) -> Result<f64, NumericsError> {
    integrate(|x, xc| 1.0 / (x.sqrt() * xc.sqrt() * (1.0 - cv * x).sqrt()), spec)
}

/// `∫₀ˣ dy/√(y(1−y)(1−by))` for `x` given with its complement. The
/// integral runs from whichever endpoint of [0, 1] is nearer, so the only
/// singular factor sits at `s = 0` after rescaling.
fn incomplete(b: f64, x: f64, xc: f64, full: f64, spec: &QuadratureSpec) -> Result<f64, NumericsError> {
    if x <= 0.5 {
        let r = integrate(|s, _| 1.0 / (s.sqrt() * (1.0 - x * s).sqrt() * (1.0 - b * x * s).sqrt()), spec)?;
        Ok(x.sqrt() * r)
    } else {
        let r = integrate(
            |s, _| {
                let y = 1.0 - xc * s;
                1.0 / (s.sqrt() * y.sqrt() * (1.0 - b * y).sqrt())
            },
            spec,
        )?;
        Ok(full - xc.sqrt() * r)
    }
}

/// `ℒ(a, b) = 2∫_{0<y<x<1} dxdy / (√(x(1−x)(1−ax))·√(y(1−y)(1−by)))`,
/// as an outer integral in `x` of the inner integral over `y = x·s`.
pub fn eval_l(p: &BranchPoint, spec: &QuadratureSpec) -> Result<Complex64, NumericsError> {
    let (a, b) = real_ab(p)?;
    l_real(a, b, spec).map(c)
}

fn l_real(a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64, NumericsError> {
    let full = p1_real(b, spec)?;
    let err = std::cell::RefCell::new(None);
    let v = integrate(
        |x, xc| {
            let inner = incomplete(b, x, xc, full, spec).unwrap_or_else(|e| {
                err.borrow_mut().get_or_insert(e);
                0.0
            });
            inner / (x.sqrt() * xc.sqrt() * (1.0 - a * x).sqrt())
        },
        spec,
    )?;
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(2.0 * v),
    }
}

/// The same integral as [`eval_l`] by a tensor-product rule on the unit
/// square with `y = u`, `x = u + (1−u)v`, refined level by level until two
/// levels agree to `tol` relative.
pub fn eval_l_tensor(p: &BranchPoint, tol: f64, max_level: u32) -> Result<Complex64, NumericsError> {
    let (a, b) = real_ab(p)?;
    let mut prev = f64::NAN;
    let mut diff = f64::INFINITY;
    for level in 3..=max_level.min(quad::MAX_LEVEL) {
        let nodes = quad::nodes(level);
        let mut total = 0.0;
        for &(u, uc, wu) in &nodes {
            let gy = 1.0 / (u.sqrt() * uc.sqrt() * (1.0 - b * u).sqrt());
            let mut row = 0.0;
            for &(v, vc, wv) in &nodes {
                let x = u + uc * v;
                let xc = uc * vc;
                if x == 0.0 || xc == 0.0 {
                    continue;
                }
                row += wv / (x.sqrt() * xc.sqrt() * (1.0 - a * x).sqrt());
            }
            total += wu * gy * uc * row;
        }
        let value = 2.0 * total;
        diff = (value - prev).abs();
        if diff <= tol * value.abs() {
            return Ok(c(value));
        }
        prev = value;
    }
    Err(NumericsError::NoConvergence(diff))
}

/// Central differences of step `h` with one Richardson step (`h`, `h/2`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdScheme {
    pub h: f64,
}

impl Default for FdScheme {
    fn default() -> Self {
        FdScheme { h: 1e-3 }
    }
}

impl FdScheme {
    pub fn new(h: f64) -> Result<Self, NumericsError> {
        if h > 1e-6 && h < 1e-2 {
            Ok(FdScheme { h })
        } else {
            Err(NumericsError::InvalidParameter(format!("step {h} outside (1e-6, 1e-2)")))
        }
    }
}

/// First and second derivative along one coordinate, Richardson-extrapolated.
fn derivatives(
    f: &impl Fn(f64) -> Result<Complex64, NumericsError>,
    h: f64,
) -> Result<(Complex64, Complex64), NumericsError> {
    let f0 = f(0.0)?;
    let stencil = |h: f64| -> Result<(Complex64, Complex64), NumericsError> {
        let (fp, fm) = (f(h)?, f(-h)?);
        Ok(((fp - fm) / (2.0 * h), (fp - f0 * 2.0 + fm) / (h * h)))
    };
    let (d1h, d2h) = stencil(h)?;
    let (d1, d2) = stencil(h / 2.0)?;
    Ok((d1 + (d1 - d1h) / 3.0, d2 + (d2 - d2h) / 3.0))
}

/// `(𝒟₁f, 𝒟₂f)` at `p` by finite differences, with branches of the shifted
/// points following `p` continuously.
pub fn fd_apply_pf(
    sampler: impl Fn(&BranchPoint) -> Result<Complex64, NumericsError>,
    p: &BranchPoint,
    fd: &FdScheme,
) -> Result<(Complex64, Complex64), NumericsError> {
    let f0 = sampler(p)?;
    let (fa, faa) = derivatives(&|d| sampler(&p.shifted(d, 0.0)), fd.h)?;
    let (fb, fbb) = derivatives(&|d| sampler(&p.shifted(0.0, d)), fd.h)?;
    let op = |x: Complex64, d1: Complex64, d2: Complex64| x * (c(1.0) - x) * d2 + (c(1.0) - x * 2.0) * d1 - f0 / 4.0;
    Ok((op(p.a, fa, faa), op(p.b, fb, fbb)))
}

/// `(2/(a−b))·(√(1−b)/√(1−a) − 1, 1 − √(1−a)/√(1−b))` as a field element pair.
pub fn inhomogeneous_rhs() -> (FieldElement, FieldElement) {
    let a = FieldElement::a();
    let b = FieldElement::b();
    let one = FieldElement::one();
    let k = &FieldElement::from_int(2) * &(&a - &b).inverse().expect("a − b is a unit");
    let q = &FieldElement::sqrt_1mb() * &FieldElement::sqrt_1ma().inverse().expect("unit");
    let q_inv = q.inverse().expect("unit");
    (&k * &(&q - &one), &k * &(&one - &q_inv))
}

#[derive(Clone, Copy, Debug)]
pub struct InhomogeneousResidual {
    /// `𝒟ℒ` by finite differences.
    pub lhs: (Complex64, Complex64),
    pub rhs: (Complex64, Complex64),
    /// `|lhs − rhs| / |rhs|` per component.
    pub relative: (f64, f64),
    /// `|lhs₂ + rhs₂| / |rhs₂|`.
    pub relative_negated_second: f64,
}

/// Compares `𝒟ℒ` by finite differences with the closed-form right-hand side.
pub fn check_inhomogeneous(p: &BranchPoint, spec: &QuadratureSpec, fd: &FdScheme) -> Result<InhomogeneousResidual, NumericsError> {
    let lhs = fd_apply_pf(|q| eval_l(q, spec), p, fd)?;
    let (r1, r2) = inhomogeneous_rhs();
    let rhs = (r1.eval(p)?, r2.eval(p)?);
    let rel = |x: Complex64, y: Complex64| (x - y).norm() / y.norm();
    Ok(InhomogeneousResidual {
        lhs,
        rhs,
        relative: (rel(lhs.0, rhs.0), rel(lhs.1, rhs.1)),
        relative_negated_second: rel(lhs.1, -rhs.1),
    })
}

/// `∫₀¹ dz/((1−bz)^{1/2}(1−az)^{3/2})`, which equals the first component of
/// `𝒟ℒ` once the inner `x`-integral is done in closed form.
pub fn reduced_first_component(p: &BranchPoint, spec: &QuadratureSpec) -> Result<Complex64, NumericsError> {
    let (a, b) = real_ab(p)?;
    integrate(|z, _| 1.0 / ((1.0 - b * z).sqrt() * (1.0 - a * z).powf(1.5)), spec).map(c)
}

/// `−∫₀¹ dz/((1−az)^{1/2}(1−bz)^{3/2})`, the second component of `𝒟ℒ`
/// obtained the same way with the roles of the variables exchanged.
pub fn reduced_second_component(p: &BranchPoint, spec: &QuadratureSpec) -> Result<Complex64, NumericsError> {
    let (a, b) = real_ab(p)?;
    integrate(|z, _| -1.0 / ((1.0 - a * z).sqrt() * (1.0 - b * z).powf(1.5)), spec).map(c)
}

/// `H(a, x) = −√(x(1−x))/(2(1−ax)^{3/2})`.
pub fn h_function(a: f64, x: f64) -> f64 {
    -(x * (1.0 - x)).sqrt() / (2.0 * (1.0 - a * x).powf(1.5))
}

/// `|𝒟₁(1/√(x(1−x)(1−ax))) − ∂H/∂x|` relative to the larger side, both by
/// finite differences (in `a` and in `x`).
pub fn check_h_identity(a: f64, x: f64, fd: &FdScheme) -> Result<f64, NumericsError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(NumericsError::DomainError(format!("x = {x} outside (0, 1)")));
    }
    let g = |aa: f64| 1.0 / (x * (1.0 - x) * (1.0 - aa * x)).sqrt();
    let (ga, gaa) = derivatives(&|d| Ok(c(g(a + d))), fd.h)?;
    let lhs = c(a * (1.0 - a)) * gaa + c(1.0 - 2.0 * a) * ga - c(g(a) / 4.0);
    let (hx, _) = derivatives(&|d| Ok(c(h_function(a, x + d))), fd.h)?;
    Ok((lhs - hx).norm() / lhs.norm().max(hx.norm()))
}

/// Condition number of `[[P₁, P₁′], [P₂, P₂′]]` at `c`, derivatives by
/// finite differences.
pub fn wronskian_condition(cv: f64, spec: &QuadratureSpec, fd: &FdScheme) -> Result<f64, NumericsError> {
    let mut m = Matrix2::<Complex64>::zeros();
    for (row, which) in [1u8, 2].into_iter().enumerate() {
        let f = |d: f64| period_p(which, c(cv + d), spec);
        let (d1, _) = derivatives(&f, fd.h)?;
        m[(row, 0)] = f(0.0)?;
        m[(row, 1)] = d1;
    }
    let sv = m.singular_values();
    Ok(sv.max() / sv.min())
}

/// The residual `|c(1−c)P″ + (1−2c)P′ − P/4| / |P|` of the one-variable
/// Picard-Fuchs equation for `Pᵢ` at real `c < 0`.
pub fn period_ode_residual(which: u8, cv: f64, spec: &QuadratureSpec, fd: &FdScheme) -> Result<f64, NumericsError> {
    let f = |d: f64| period_p(which, c(cv + d), spec);
    let p0 = f(0.0)?;
    let (d1, d2) = derivatives(&f, fd.h)?;
    let r = c(cv * (1.0 - cv)) * d2 + c(1.0 - 2.0 * cv) * d1 - p0 / 4.0;
    Ok(r.norm() / p0.norm())
}

/// `|𝒟ᵢ(Pⱼ(a)P_k(b))| / |Pⱼ(a)P_k(b)|`, the larger of the two operators.
pub fn product_residual(j: u8, k: u8, p: &BranchPoint, spec: &QuadratureSpec, fd: &FdScheme) -> Result<f64, NumericsError> {
    let sampler = |q: &BranchPoint| Ok(period_p(j, q.a, spec)? * period_p(k, q.b, spec)?);
    let v = sampler(p)?;
    let (r1, r2) = fd_apply_pf(sampler, p, fd)?;
    Ok(r1.norm().max(r2.norm()) / v.norm())
}

/// `ℒ(a, b) + ℒ(b, a)` against `2P₁(a)P₁(b)`, relative.
pub fn square_split_residual(p: &BranchPoint, spec: &QuadratureSpec) -> Result<f64, NumericsError> {
    let (a, b) = real_ab(p)?;
    let sum = l_real(a, b, spec)? + l_real(b, a, spec)?;
    let full = 2.0 * p1_real(a, spec)? * p1_real(b, spec)?;
    Ok((sum - full).abs() / full.abs())
}
