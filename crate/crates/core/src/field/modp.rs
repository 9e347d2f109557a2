//! Reduction of ℚ(i) modulo a prime above p ≡ 1 (mod 4), used as a fast
//! sufficient test for coprimality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use once_cell::sync::Lazy;

use super::gaussian::Gq;

pub const P: u64 = 998_244_353;

/// A square root of −1 modulo `P`.
static SQRT_M1: Lazy<u64> = Lazy::new(|| pow_mod(3, (P - 1) / 4));

fn mul_mod(x: u64, y: u64) -> u64 {
    ((x as u128 * y as u128) % P as u128) as u64
}

fn pow_mod(mut x: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, x);
        }
        x = mul_mod(x, x);
        e >>= 1;
    }
    acc
}

fn inv_mod(x: u64) -> u64 {
    pow_mod(x, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

fn reduce_rat(r: &BigRational) -> Option<u64> {
    let d = reduce_int(r.denom());
    if d == 0 {
        return None;
    }
    Some(mul_mod(reduce_int(r.numer()), inv_mod(d)))
}

/// Image of `x` in 𝔽_P, or `None` if a denominator vanishes there.
pub fn reduce(x: &Gq) -> Option<u64> {
    let re = reduce_rat(&x.re)?;
    let im = reduce_rat(&x.im)?;
    Some((re + mul_mod(im, *SQRT_M1)) % P)
}

pub fn eval(p: &[u64], x: u64) -> u64 {
    p.iter().rev().fold(0, |acc, c| (mul_mod(acc, x) + c) % P)
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of the gcd of two nonzero polynomials over 𝔽_P (ascending coefficients).
pub fn gcd_degree(f: &[u64], g: &[u64]) -> usize {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        if b.len() == 1 {
            return 0;
        }
        let inv = inv_mod(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = mul_mod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (k, bc) in b.iter().enumerate() {
                a[k + shift] = (a[k + shift] + P - mul_mod(c, *bc)) % P;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_minus_one() {
        let i = *SQRT_M1;
        assert_eq!(mul_mod(i, i), P - 1);
        assert_eq!(reduce(&Gq::i()), Some(i));
    }

    #[test]
    fn gcd_degrees() {
        // (x-1)(x-2) and (x-1)(x+5)
        let f = [2, P - 3, 1];
        let g = [P - 5, 4, 1];
        assert_eq!(gcd_degree(&f, &g), 1);
        assert_eq!(gcd_degree(&[1, 1], &[2, 1]), 0);
    }
}
