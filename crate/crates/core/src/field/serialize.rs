//! Canonical prefix serialization of field elements.
//!
//! ```text
//! element  := "0" | "(fe" slot+ ")"
//! slot     := "(" monomial ratfn ")"
//! monomial := "1" | gen ("*" gen)*          gen ∈ Ra, R1a, Rb, R1b
//! ratfn    := poly | "(/" poly poly ")"
//! poly     := "0" | "(p" term+ ")"
//! term     := "(" coeff ea eb ")"
//! coeff    := rational | "(i" rational rational ")"
//! rational := integer | integer "/" integer
//! ```
//!
//! `Ra`, `R1a`, `Rb`, `R1b` stand for `√a`, `√(1−a)`, `√b`, `√(1−b)`. Slots are
//! listed in the order (1, √a, √(1−a), √a√(1−a)) × (1, √b, √(1−b), √b√(1−b)),
//! with the `a`-part varying slowest; polynomial terms are in descending lex
//! order. `(i re im)` is `re + im·i`. Rational functions are in lowest terms
//! with the denominator's leading coefficient equal to 1, so equal elements
//! serialize to equal strings.

use num_rational::BigRational;
use num_traits::Zero;

use super::element::FieldElement;
use super::gaussian::Gq;
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::FieldError;

const GEN_NAMES: [&str; 4] = ["Ra", "R1a", "Rb", "R1b"];

/// Slot index of the `k`-th monomial in serialization order.
pub fn slot_in_order(k: usize) -> usize {
    let a_part = k / 4;
    let b_part = k % 4;
    a_part | (b_part << 2)
}

fn monomial_token(m: usize) -> String {
    let parts: Vec<&str> = (0..4).filter(|b| m & (1 << b) != 0).map(|b| GEN_NAMES[b]).collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn gq_to_string(c: &Gq) -> String {
    if c.im.is_zero() {
        c.re.to_string()
    } else {
        format!("(i {} {})", c.re, c.im)
    }
}

pub fn poly_to_string(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> =
        p.terms().iter().map(|(i, j, c)| format!("({} {} {})", gq_to_string(c), i, j)).collect();
    format!("(p {})", terms.join(" "))
}

pub fn ratfn_to_string(r: &RatFn) -> String {
    if r.denom().is_one() {
        poly_to_string(r.numer())
    } else {
        format!("(/ {} {})", poly_to_string(r.numer()), poly_to_string(r.denom()))
    }
}

pub fn to_string(x: &FieldElement) -> String {
    let slots: Vec<String> = (0..16)
        .map(slot_in_order)
        .filter(|&m| !x.coeff(m).is_zero())
        .map(|m| format!("({} {})", monomial_token(m), ratfn_to_string(x.coeff(m))))
        .collect();
    if slots.is_empty() {
        "0".to_string()
    } else {
        format!("(fe {})", slots.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn tokenize(s: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<Tok>| {
        if !cur.is_empty() {
            out.push(Tok::Atom(std::mem::take(cur)));
        }
    };
    for ch in s.chars() {
        match ch {
            '(' => {
                flush(&mut cur, &mut out);
                out.push(Tok::Open);
            }
            ')' => {
                flush(&mut cur, &mut out);
                out.push(Tok::Close);
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

fn err(msg: impl Into<String>) -> FieldError {
    FieldError::Parse(msg.into())
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok, FieldError> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| err("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Tok) -> Result<(), FieldError> {
        let got = self.next()?;
        if got == t {
            Ok(())
        } else {
            Err(err(format!("expected {t:?}, found {got:?}")))
        }
    }

    fn atom(&mut self) -> Result<String, FieldError> {
        match self.next()? {
            Tok::Atom(a) => Ok(a),
            t => Err(err(format!("expected atom, found {t:?}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), FieldError> {
        let a = self.atom()?;
        if a == kw {
            Ok(())
        } else {
            Err(err(format!("expected `{kw}`, found `{a}`")))
        }
    }

    fn rational(&mut self) -> Result<BigRational, FieldError> {
        let a = self.atom()?;
        a.parse::<BigRational>().map_err(|_| err(format!("bad rational `{a}`")))
    }

    fn exponent(&mut self) -> Result<u32, FieldError> {
        let a = self.atom()?;
        a.parse::<u32>().map_err(|_| err(format!("bad exponent `{a}`")))
    }

    fn coeff(&mut self) -> Result<Gq, FieldError> {
        if self.peek() == Some(&Tok::Open) {
            self.expect(Tok::Open)?;
            self.keyword("i")?;
            let re = self.rational()?;
            let im = self.rational()?;
            self.expect(Tok::Close)?;
            Ok(Gq::new(re, im))
        } else {
            Ok(Gq::new(self.rational()?, BigRational::zero()))
        }
    }

    fn poly(&mut self) -> Result<Poly, FieldError> {
        if let Some(Tok::Atom(a)) = self.peek() {
            if a == "0" {
                self.pos += 1;
                return Ok(Poly::zero());
            }
        }
        self.expect(Tok::Open)?;
        self.keyword("p")?;
        let mut terms = Vec::new();
        while self.peek() == Some(&Tok::Open) {
            self.expect(Tok::Open)?;
            let c = self.coeff()?;
            let i = self.exponent()?;
            let j = self.exponent()?;
            self.expect(Tok::Close)?;
            terms.push((i, j, c));
        }
        self.expect(Tok::Close)?;
        Ok(Poly::from_terms(terms))
    }

    fn ratfn(&mut self) -> Result<RatFn, FieldError> {
        if self.toks.get(self.pos) == Some(&Tok::Open) && self.toks.get(self.pos + 1) == Some(&Tok::Atom("/".into())) {
            self.pos += 2;
            let n = self.poly()?;
            let d = self.poly()?;
            self.expect(Tok::Close)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(RatFn::new(n, d))
        } else {
            Ok(RatFn::from_poly(self.poly()?))
        }
    }

    fn monomial(&mut self) -> Result<usize, FieldError> {
        let a = self.atom()?;
        if a == "1" {
            return Ok(0);
        }
        let mut m = 0;
        for part in a.split('*') {
            let bit = GEN_NAMES.iter().position(|g| *g == part).ok_or_else(|| err(format!("bad monomial `{a}`")))?;
            m |= 1 << bit;
        }
        Ok(m)
    }

    fn element(&mut self) -> Result<FieldElement, FieldError> {
        if let Some(Tok::Atom(a)) = self.peek() {
            if a == "0" {
                self.pos += 1;
                return Ok(FieldElement::zero());
            }
        }
        self.expect(Tok::Open)?;
        self.keyword("fe")?;
        let mut acc = FieldElement::zero();
        while self.peek() == Some(&Tok::Open) {
            self.expect(Tok::Open)?;
            let m = self.monomial()?;
            let r = self.ratfn()?;
            self.expect(Tok::Close)?;
            acc = &acc + &FieldElement::monomial(m, r);
        }
        self.expect(Tok::Close)?;
        Ok(acc)
    }
}

/// Parses the canonical prefix form (or any equivalent non-canonical input).
pub fn parse(s: &str) -> Result<FieldElement, FieldError> {
    let mut p = Parser { toks: tokenize(s), pos: 0 };
    let x = p.element()?;
    if p.pos != p.toks.len() {
        return Err(err("trailing input"));
    }
    Ok(x)
}
