//! Gaussian rationals `p + q·i` with `p, q ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gq {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Gq {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gq { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Gq { re: rat(n), im: BigRational::zero() }
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Gq { re: BigRational::new(BigInt::from(n), BigInt::from(d)), im: BigRational::zero() }
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        Gq { re: rat(re), im: rat(im) }
    }

    pub fn i() -> Self {
        Gq::from_parts(0, 1)
    }

    /// `i^k` for `k mod 4`.
    pub fn i_pow(k: u8) -> Self {
        match k % 4 {
            0 => Gq::from_int(1),
            1 => Gq::from_parts(0, 1),
            2 => Gq::from_int(-1),
            _ => Gq::from_parts(0, -1),
        }
    }

    pub fn zero() -> Self {
        Gq::default()
    }

    pub fn one() -> Self {
        Gq::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gq { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero Gaussian rational");
        Gq { re: &self.re / &n, im: -(&self.im / &n) }
    }

    /// Sign used to pick canonical representatives: positive real part, or
    /// zero real part and positive imaginary part.
    pub fn is_positive(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_positive()
        } else {
            self.im.is_positive()
        }
    }

    /// Returns `Some(k)` if `self = i^k`.
    pub fn as_unit_power(&self) -> Option<u8> {
        (0..4u8).find(|&k| *self == Gq::i_pow(k))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact square root in ℚ(i), if one exists. Returns the root with
    /// [`Gq::is_positive`] true.
    pub fn sqrt(&self) -> Option<Gq> {
        if self.is_zero() {
            return Some(Gq::zero());
        }
        // (x + iy)² = p + iq  ⇒  x² = (p + |z|)/2, y² = (|z| - p)/2.
        let modulus = rat_sqrt(&self.norm_sqr())?;
        let two = rat(2);
        let x2 = (&self.re + &modulus) / &two;
        let y2 = (&modulus - &self.re) / &two;
        let x = rat_sqrt(&x2)?;
        let mut y = rat_sqrt(&y2)?;
        // fix the relative sign from 2xy = q
        if (&x * &y * &two) != self.im {
            y = -y;
        }
        let r = Gq { re: x, im: y };
        debug_assert!(&r * &r == *self);
        Some(if r.is_positive() { r } else { -r })
    }
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

fn rat_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(BigRational::new(n, d))
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => write!(f, "({}{}{}i)", self.re, if self.im.is_negative() { "" } else { "+" }, self.im),
        }
    }
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, o: &Gq) -> Gq {
        Gq { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, o: &Gq) -> Gq {
        Gq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, o: &Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq { re: &self.re * &o.re, im: BigRational::zero() };
        }
        Gq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn div(self, o: &Gq) -> Gq {
        if o.im.is_zero() {
            return Gq { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv()
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, o: Gq) -> Gq {
        &self + &o
    }
}

impl Sub for Gq {
    type Output = Gq;
    fn sub(self, o: Gq) -> Gq {
        &self - &o
    }
}

impl Mul for Gq {
    type Output = Gq;
    fn mul(self, o: Gq) -> Gq {
        &self * &o
    }
}

impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, o: &Gq) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re, im: -self.im }
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re.clone(), im: -self.im.clone() }
    }
}
