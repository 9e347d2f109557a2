//! Rational functions in `a`, `b` over ℚ(i), kept in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gaussian::Gq;
use super::poly::Poly;

/// `numerator / denominator` with the gcd removed and the denominator's
/// lex-leading coefficient equal to 1. Zero is stored as `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRationalFunction {
    num: Poly,
    den: Poly,
}

pub type RatFn = GaussianRationalFunction;

impl Default for GaussianRationalFunction {
    fn default() -> Self {
        RatFn::zero()
    }
}

impl GaussianRationalFunction {
    /// Builds `num / den` in canonical form. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
        };
        RatFn::normalized(num, den)
    }

    /// Normalizes the leading coefficient only; the caller guarantees coprimality.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.lead_coeff();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.inv();
            RatFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFn::constant(Gq::one())
    }

    pub fn constant(c: Gq) -> Self {
        RatFn { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RatFn::constant(Gq::from_int(n))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn a() -> Self {
        RatFn::from_poly(Poly::var_a())
    }

    pub fn b() -> Self {
        RatFn::from_poly(Poly::var_b())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn constant_value(&self) -> Option<Gq> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Gq) -> Self {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFn::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFn { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Exact square root in ℚ(i)(a, b), if it exists.
    pub fn sqrt(&self) -> Option<Self> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(RatFn::new(n, d))
    }

    pub fn derive_a(&self) -> Self {
        self.derive_with(Poly::derive_a)
    }

    pub fn derive_b(&self) -> Self {
        self.derive_with(Poly::derive_b)
    }

    fn derive_with(&self, d: impl Fn(&Poly) -> Poly) -> Self {
        if self.den.is_constant() {
            return RatFn::new(d(&self.num), self.den.clone());
        }
        let num = &(&d(&self.num) * &self.den) - &(&self.num * &d(&self.den));
        RatFn::new(num, &self.den * &self.den)
    }

    pub fn swap_vars(&self) -> Self {
        RatFn::new(self.num.swap_vars(), self.den.swap_vars())
    }

    /// Numeric value at `(a, b)`, `None` at a pole.
    pub fn eval(&self, a: Complex64, b: Complex64) -> Option<Complex64> {
        let d = self.den.eval(a, b);
        if d == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(self.num.eval(a, b) / d)
    }

    /// Substitutes `a ↦ ra`, `b ↦ rb`.
    pub fn substitute(&self, ra: &RatFn, rb: &RatFn) -> Self {
        let sub = Substitution::new(ra, rb);
        sub.apply(self)
    }
}

/// Precomputed data for substituting rational functions into `a` and `b`.
#[derive(Clone, Debug)]
pub struct Substitution {
    a_num: Vec<Poly>,
    a_den: Vec<Poly>,
    b_num: Vec<Poly>,
    b_den: Vec<Poly>,
    trivial: bool,
}

impl Substitution {
    pub fn new(ra: &RatFn, rb: &RatFn) -> Self {
        Substitution {
            a_num: vec![Poly::one(), ra.num.clone()],
            a_den: vec![Poly::one(), ra.den.clone()],
            b_num: vec![Poly::one(), rb.num.clone()],
            b_den: vec![Poly::one(), rb.den.clone()],
            trivial: *ra == RatFn::a() && *rb == RatFn::b(),
        }
    }

    fn power(table: &[Poly], k: u32) -> Poly {
        if (k as usize) < table.len() {
            table[k as usize].clone()
        } else {
            table[1].pow(k)
        }
    }

    /// Homogenized image `P(nA/dA, nB/dB)·dA^da·dB^db` of a polynomial.
    fn apply_poly(&self, p: &Poly) -> (Poly, u32, u32) {
        let da = p.deg_a();
        let db = p.deg_b();
        let mut acc = Poly::zero();
        for (i, j, c) in p.terms() {
            let t = &(&Self::power(&self.a_num, *i) * &Self::power(&self.a_den, da - i))
                * &(&Self::power(&self.b_num, *j) * &Self::power(&self.b_den, db - j));
            acc = &acc + &t.scale(c);
        }
        (acc, da, db)
    }

    pub fn apply(&self, r: &RatFn) -> RatFn {
        if self.trivial || r.is_zero() {
            return r.clone();
        }
        if let Some(c) = r.constant_value() {
            return RatFn::constant(c);
        }
        let (mut n, na, nb) = self.apply_poly(&r.num);
        let (mut d, dda, ddb) = self.apply_poly(&r.den);
        // N/D = (n / (dA^na dB^nb)) / (d / (dA^dda dB^ddb))
        if dda > na {
            n = &n * &Self::power(&self.a_den, dda - na);
        } else if na > dda {
            d = &d * &Self::power(&self.a_den, na - dda);
        }
        if ddb > nb {
            n = &n * &Self::power(&self.b_den, ddb - nb);
        } else if nb > ddb {
            d = &d * &Self::power(&self.b_den, nb - ddb);
        }
        RatFn::new(n, d)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFn::normalized(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        if o.den.is_one() {
            return RatFn::normalized(&self.num + &(&o.num * &self.den), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &o.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = o.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&o.num * &d1);
        RatFn::new(num, &self.den * &d2)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + &(-o)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        // cross-cancel so the product is already in lowest terms
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFn::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RatFn) -> RatFn {
        self * &o.inv().expect("division by zero rational function")
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(ca: i64, cb: i64, c0: i64) -> RatFn {
        RatFn::from_poly(Poly::from_int_terms(&[(ca, 1, 0), (cb, 0, 1), (c0, 0, 0)]))
    }

    #[test]
    fn sum_cancels_to_one() {
        // a/(a-b) + b/(b-a) = 1
        let x = &RatFn::a() / &lin(1, -1, 0);
        let y = &RatFn::b() / &lin(-1, 1, 0);
        assert!((&x + &y).is_one());
    }

    #[test]
    fn canonical_equality() {
        let x = &lin(2, 0, 0) / &lin(2, -2, 0);
        let y = &RatFn::a() / &lin(1, -1, 0);
        assert_eq!(x, y);
        assert!(x.denom().lead_coeff().is_one());
    }

    #[test]
    fn substitution_of_mobius() {
        // a ↦ a/(a-1) applied to 1 - a gives 1/(1-a)
        let m = &RatFn::a() / &lin(1, 0, -1);
        let one_minus_a = lin(-1, 0, 1);
        let got = one_minus_a.substitute(&m, &RatFn::b());
        assert_eq!(got, lin(-1, 0, 1).inv().unwrap());
    }

    #[test]
    fn quotient_rule() {
        // d/da (1/(1-a)) = 1/(1-a)^2
        let r = lin(-1, 0, 1).inv().unwrap();
        assert_eq!(r.derive_a(), lin(-1, 0, 1).pow(2).inv().unwrap());
    }
}
