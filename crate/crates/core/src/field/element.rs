//! Elements of F = ℚ(i)(a,b)[√a, √(1−a), √b, √(1−b)].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use once_cell::sync::Lazy;

use super::branch::BranchPoint;
use super::gaussian::Gq;
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::FieldError;

/// Bit flags of a square-root monomial.
pub const SQRT_A: usize = 1;
pub const SQRT_1MA: usize = 2;
pub const SQRT_B: usize = 4;
pub const SQRT_1MB: usize = 8;

/// Squares of the four generators: a, 1−a, b, 1−b.
fn generator_square(bit: usize) -> Poly {
    match bit {
        0 => Poly::var_a(),
        1 => Poly::from_int_terms(&[(-1, 1, 0), (1, 0, 0)]),
        2 => Poly::var_b(),
        _ => Poly::from_int_terms(&[(-1, 0, 1), (1, 0, 0)]),
    }
}

/// `SQUARE_FACTOR[m]` is the product of the squares of the generators in `m`,
/// i.e. the polynomial `M²` for the monomial `M` with flags `m`.
static SQUARE_FACTOR: Lazy<Vec<RatFn>> = Lazy::new(|| {
    (0..16)
        .map(|m| {
            let mut p = Poly::one();
            for bit in 0..4 {
                if m & (1 << bit) != 0 {
                    p = &p * &generator_square(bit);
                }
            }
            RatFn::from_poly(p)
        })
        .collect()
});

pub fn square_factor(m: usize) -> &'static RatFn {
    &SQUARE_FACTOR[m]
}

/// Human-readable name of a monomial.
pub fn monomial_name(m: usize) -> String {
    let names = ["√a", "√(1-a)", "√b", "√(1-b)"];
    let parts: Vec<&str> = (0..4).filter(|k| m & (1 << k) != 0).map(|k| names[k]).collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("")
    }
}

/// A field element: one rational-function coefficient for each of the 16
/// square-root monomials. Slot `m` holds the coefficient of the monomial whose
/// generator set is given by the bit flags of `m`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    coeffs: [RatFn; 16],
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::default()
    }

    pub fn one() -> Self {
        FieldElement::from_ratfn(RatFn::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::from_ratfn(RatFn::from_int(n))
    }

    pub fn constant(c: Gq) -> Self {
        FieldElement::from_ratfn(RatFn::constant(c))
    }

    pub fn from_ratfn(r: RatFn) -> Self {
        FieldElement::monomial(0, r)
    }

    pub fn from_poly(p: Poly) -> Self {
        FieldElement::from_ratfn(RatFn::from_poly(p))
    }

    /// `r · M` for the monomial with flags `m`.
    pub fn monomial(m: usize, r: RatFn) -> Self {
        let mut x = FieldElement::zero();
        x.coeffs[m] = r;
        x
    }

    pub fn a() -> Self {
        FieldElement::from_ratfn(RatFn::a())
    }

    pub fn b() -> Self {
        FieldElement::from_ratfn(RatFn::b())
    }

    pub fn sqrt_a() -> Self {
        FieldElement::monomial(SQRT_A, RatFn::one())
    }

    pub fn sqrt_1ma() -> Self {
        FieldElement::monomial(SQRT_1MA, RatFn::one())
    }

    pub fn sqrt_b() -> Self {
        FieldElement::monomial(SQRT_B, RatFn::one())
    }

    pub fn sqrt_1mb() -> Self {
        FieldElement::monomial(SQRT_1MB, RatFn::one())
    }

    pub fn i() -> Self {
        FieldElement::constant(Gq::i())
    }

    pub fn coeff(&self, m: usize) -> &RatFn {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[RatFn; 16] {
        &self.coeffs
    }

    pub fn from_coeffs(coeffs: [RatFn; 16]) -> Self {
        FieldElement { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFn::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(RatFn::is_zero)
    }

    /// Bit set of occupied monomial slots.
    pub fn support(&self) -> u16 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(0u16, |acc, (m, _)| acc | (1 << m))
    }

    /// `Some((m, r))` if the element equals `r·M` for a single monomial.
    pub fn as_single_monomial(&self) -> Option<(usize, &RatFn)> {
        let s = self.support();
        if s.count_ones() == 1 {
            let m = s.trailing_zeros() as usize;
            Some((m, &self.coeffs[m]))
        } else {
            None
        }
    }

    /// The rational function if only the constant-monomial slot is occupied.
    pub fn as_ratfn(&self) -> Option<&RatFn> {
        if self.coeffs[1..].iter().all(RatFn::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Gq) -> Self {
        FieldElement { coeffs: std::array::from_fn(|m| self.coeffs[m].scale(c)) }
    }

    pub fn scale_ratfn(&self, r: &RatFn) -> Self {
        FieldElement { coeffs: std::array::from_fn(|m| &self.coeffs[m] * r) }
    }

    /// Applies the sign flips of the generators in `mask`.
    pub fn conjugate(&self, mask: usize) -> Self {
        FieldElement {
            coeffs: std::array::from_fn(|m| {
                if (m & mask).count_ones() % 2 == 1 {
                    -&self.coeffs[m]
                } else {
                    self.coeffs[m].clone()
                }
            }),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = FieldElement::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse via the norm down the tower of quadratic extensions.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        if let Some((m, r)) = self.as_single_monomial() {
            let denom = r * square_factor(m);
            let inv = denom.inv().ok_or(FieldError::DegenerateNorm)?;
            return Ok(FieldElement::monomial(m, inv));
        }
        let common = (0..16).filter(|&m| !self.coeffs[m].is_zero()).fold(15, |acc, m| acc & m);
        if common != 0 {
            // every term carries the monomial `common`; divide it out
            let rest = FieldElement {
                coeffs: std::array::from_fn(|m| {
                    if m & common == 0 {
                        self.coeffs[m | common].clone()
                    } else {
                        RatFn::zero()
                    }
                }),
            };
            let m_inv = FieldElement::monomial(common, square_factor(common).inv().expect("nonzero"));
            return Ok(&m_inv * &rest.inverse()?);
        }
        // y_{k+1} = y_k · c_k with c_k the conjugate of y_k; then
        // y_k⁻¹ = c_k · y_{k+1}⁻¹, unwound from the rational norm outwards.
        let mut conjugates = Vec::new();
        let mut y = self.clone();
        for bit in 0..4 {
            let c = y.conjugate(1 << bit);
            if c == y {
                continue;
            }
            y = &y * &c;
            conjugates.push(c);
        }
        let norm = y.as_ratfn().ok_or(FieldError::DegenerateNorm)?;
        let mut inv = FieldElement::from_ratfn(norm.inv().ok_or(FieldError::DegenerateNorm)?);
        for c in conjugates.iter().rev() {
            inv = c * &inv;
        }
        Ok(inv)
    }

    pub fn derive_a(&self) -> Self {
        self.derive(0)
    }

    pub fn derive_b(&self) -> Self {
        self.derive(1)
    }

    /// Partial derivative in `a` (`var = 0`) or `b` (`var = 1`).
    pub fn derive(&self, var: usize) -> Self {
        let (bit_x, bit_1mx) = if var == 0 { (SQRT_A, SQRT_1MA) } else { (SQRT_B, SQRT_1MB) };
        let x = if var == 0 { RatFn::a() } else { RatFn::b() };
        let one_minus_x = &RatFn::one() - &x;
        let half = Gq::from_frac(1, 2);
        let d_sqrt_x = x.inv().unwrap().scale(&half);
        let d_sqrt_1mx = one_minus_x.inv().unwrap().scale(&-half);
        FieldElement {
            coeffs: std::array::from_fn(|m| {
                let r = &self.coeffs[m];
                if r.is_zero() {
                    return RatFn::zero();
                }
                let mut out = if var == 0 { r.derive_a() } else { r.derive_b() };
                let mut log_d = RatFn::zero();
                if m & bit_x != 0 {
                    log_d = &log_d + &d_sqrt_x;
                }
                if m & bit_1mx != 0 {
                    log_d = &log_d + &d_sqrt_1mx;
                }
                if !log_d.is_zero() {
                    out = &out + &(r * &log_d);
                }
                out
            }),
        }
    }

    /// Numeric value at a branch point.
    pub fn eval(&self, p: &BranchPoint) -> Result<Complex64, FieldError> {
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, r) in self.coeffs.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let v = r.eval(p.a, p.b).ok_or(FieldError::PoleAtPoint)?;
            sum += v * p.monomial_value(m);
        }
        Ok(sum)
    }

    /// Swaps the `a`-generators with the `b`-generators.
    pub fn swap_vars(&self) -> Self {
        FieldElement {
            coeffs: std::array::from_fn(|m| {
                let src = ((m & 3) << 2) | (m >> 2);
                self.coeffs[src].swap_vars()
            }),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement { coeffs: std::array::from_fn(|m| &self.coeffs[m] + &o.coeffs[m]) }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement { coeffs: std::array::from_fn(|m| &self.coeffs[m] - &o.coeffs[m]) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { coeffs: std::array::from_fn(|m| -&self.coeffs[m]) }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        let mut out: [RatFn; 16] = Default::default();
        for (m1, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (m2, y) in o.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mut t = x * y;
                let shared = m1 & m2;
                if shared != 0 {
                    t = &t * square_factor(shared);
                }
                let slot = m1 ^ m2;
                out[slot] = &out[slot] + &t;
            }
        }
        FieldElement { coeffs: out }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| if m == 0 { format!("{c}") } else { format!("[{c}]*{}", monomial_name(m)) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_squares() {
        assert_eq!(&FieldElement::sqrt_a() * &FieldElement::sqrt_a(), FieldElement::a());
        let x = &(&FieldElement::sqrt_a() * &FieldElement::sqrt_1ma()) * &FieldElement::sqrt_b();
        assert_eq!(x.as_single_monomial().map(|(m, r)| (m, r.is_one())), Some((SQRT_A | SQRT_1MA | SQRT_B, true)));
    }

    #[test]
    fn inverse_of_one_plus_sqrt_a() {
        let x = &FieldElement::one() + &FieldElement::sqrt_a();
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        let expect = (&FieldElement::one() - &FieldElement::sqrt_a())
            .scale_ratfn(&(&RatFn::one() - &RatFn::a()).inv().unwrap());
        assert_eq!(inv, expect);
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(FieldElement::zero().inverse(), Err(FieldError::ZeroInverse)));
    }

    #[test]
    fn derivative_of_sqrt_a() {
        let d = FieldElement::sqrt_a().derive_a();
        let expect = FieldElement::monomial(SQRT_A, RatFn::a().inv().unwrap().scale(&Gq::from_frac(1, 2)));
        assert_eq!(d, expect);
        assert!(FieldElement::sqrt_b().derive_a().is_zero());
    }
}
