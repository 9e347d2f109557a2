//! Tanh-sinh quadrature on (0, 1).
//!
//! Integrands receive both `x` and `1 − x`, each computed without
//! cancellation, so that singular factors at either endpoint keep full
//! relative precision.

use std::ops::{Add, Mul};

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::error::NumericsError;

pub const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;
/// Abscissae stop where the nearer endpoint distance would underflow below
/// about 1e−300; this depends on the node alone, not on the integrand.
const T_MAX: f64 = 6.08;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub max_level: u32,
    pub target_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { max_level: MAX_LEVEL, target_tol: 1e-12 }
    }
}

impl QuadratureSpec {
    pub fn new(max_level: u32, target_tol: f64) -> Result<Self, NumericsError> {
        let spec = QuadratureSpec { max_level, target_tol };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.target_tol > 1e-14 && self.target_tol < 1e-2) {
            return Err(NumericsError::InvalidParameter(format!("target_tol {} outside (1e-14, 1e-2)", self.target_tol)));
        }
        if self.max_level < MIN_LEVEL || self.max_level > MAX_LEVEL {
            return Err(NumericsError::InvalidParameter(format!("max_level {} outside [{MIN_LEVEL}, {MAX_LEVEL}]", self.max_level)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
struct Node {
    x: f64,
    xc: f64,
    w: f64,
}

fn node(t: f64, h: f64) -> Node {
    let u = std::f64::consts::PI * t.sinh();
    let x = 1.0 / (1.0 + (-u).exp());
    let xc = 1.0 / (1.0 + u.exp());
    Node { x, xc, w: h * std::f64::consts::PI * t.cosh() * x * xc }
}

/// Nodes new at each level: every integer multiple of `h = 1` at level 0,
/// the odd multiples of `h = 2^{-ℓ}` after that.
static NODES: Lazy<Vec<Vec<Node>>> = Lazy::new(|| {
    (0..=MAX_LEVEL)
        .map(|level| {
            let h = 0.5f64.powi(level as i32);
            let kmax = (T_MAX / h).floor() as i64;
            let step = if level == 0 { 1 } else { 2 };
            let start = if level == 0 { -kmax } else { -kmax + (kmax + 1) % 2 };
            (0..)
                .map(|n| start + step * n)
                .take_while(|&k| k <= kmax)
                .map(|k| node(k as f64 * h, h))
                .collect()
        })
        .collect()
});

pub trait Scalar: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Sum of `w·f` over the nodes of one level, along with `Σ|w·f|`.
fn level_sum<T: Scalar>(f: &impl Fn(f64, f64) -> T, level: u32) -> (T, f64) {
    let mut s = T::zero();
    let mut abs = 0.0;
    for n in &NODES[level as usize] {
        let v = f(n.x, n.xc) * n.w;
        s = s + v;
        abs += v.magnitude();
    }
    (s, abs)
}

/// Integral over (0, 1) of `f(x, 1 − x)`, refined until two successive
/// levels agree to `target_tol` relative (or to rounding of the node sum).
pub fn integrate<T: Scalar>(f: impl Fn(f64, f64) -> T, spec: &QuadratureSpec) -> Result<T, NumericsError> {
    let (mut s, mut abs) = level_sum(&f, 0);
    let mut prev = s;
    let mut diff = f64::INFINITY;
    for level in 1..=spec.max_level {
        let (ds, dabs) = level_sum(&f, level);
        s = s * 0.5 + ds;
        abs = abs * 0.5 + dabs;
        diff = (s + prev * -1.0).magnitude();
        if level >= MIN_LEVEL && (diff <= spec.target_tol * s.magnitude() || diff <= 16.0 * f64::EPSILON * abs) {
            return Ok(s);
        }
        prev = s;
    }
    Err(NumericsError::NoConvergence(diff))
}

/// Complex-valued integrand on (0, 1).
pub fn quad_ts(integrand: impl Fn(f64, f64) -> Complex64, spec: &QuadratureSpec) -> Result<Complex64, NumericsError> {
    integrate(integrand, spec)
}

/// The node sum at a single fixed level, with no convergence test. All
/// levels up to `level` are included.
pub fn fixed_level<T: Scalar>(f: impl Fn(f64, f64) -> T, level: u32) -> T {
    let mut s = level_sum(&f, 0).0;
    for l in 1..=level.min(MAX_LEVEL) {
        s = s * 0.5 + level_sum(&f, l).0;
    }
    s
}

/// Abscissae and weights of all nodes up to `level`, in a fixed order.
pub fn nodes(level: u32) -> Vec<(f64, f64, f64)> {
    let scale = 0.5f64.powi(level.min(MAX_LEVEL) as i32);
    let mut out = Vec::new();
    for l in 0..=level.min(MAX_LEVEL) {
        let h_l = 0.5f64.powi(l as i32);
        for n in &NODES[l as usize] {
            out.push((n.x, n.xc, n.w / h_l * scale));
        }
    }
    out
}
