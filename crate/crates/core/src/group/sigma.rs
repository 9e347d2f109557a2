//! The 𝔖(Σ)-action on ℙ¹ × S₀ as literal pullback data, with its induced
//! permutations of {0, 1, ∞}.

use std::collections::HashMap;

use once_cell::sync::Lazy;

use super::perm::{BasePerm, SigmaPerm};
use crate::error::GroupError;
use crate::field::{Poly, RatFn};

/// The 24 pullback records: permutation of Σ, image of `c`, image of `z`.
pub const TABLE1: [(&str, &str, &str); 24] = [
    ("id", "c", "z"),
    ("(0 1)", "c/(c-1)", "1-z"),
    ("(1/c ∞)", "c/(c-1)", "(1-c)*z/(1-c*z)"),
    ("(0 1/c)", "1-c", "(1-c*z)/(1-c)"),
    ("(1 ∞)", "1-c", "z/(z-1)"),
    ("(0 ∞)", "1/c", "1/z"),
    ("(1 1/c)", "1/c", "c*z"),
    ("(0 1)(1/c ∞)", "c", "(1-z)/(1-c*z)"),
    ("(0 1/c)(1 ∞)", "c", "(1-c*z)/(c*(1-z))"),
    ("(0 ∞)(1 1/c)", "c", "1/(c*z)"),
    ("(0 1 1/c)", "1/(1-c)", "1-c*z"),
    ("(0 1/c 1)", "(c-1)/c", "c*(1-z)/(c-1)"),
    ("(0 ∞ 1)", "1/(1-c)", "(z-1)/z"),
    ("(0 1 ∞)", "(c-1)/c", "1/(1-z)"),
    ("(0 1/c ∞)", "1/(1-c)", "(1-c)/(1-c*z)"),
    ("(0 ∞ 1/c)", "(c-1)/c", "(1-c*z)/((1-c)*z)"),
    ("(1 ∞ 1/c)", "1/(1-c)", "(c-1)*z/(1-z)"),
    ("(1 1/c ∞)", "(c-1)/c", "c*z/(c*z-1)"),
    ("(0 1/c 1 ∞)", "c/(c-1)", "(c-1)/(c*(1-z))"),
    ("(0 1 1/c ∞)", "1-c", "1/(1-c*z)"),
    ("(0 1 ∞ 1/c)", "1/c", "(1-c*z)/(1-z)"),
    ("(0 ∞ 1 1/c)", "c/(c-1)", "(c*z-1)/(c*z)"),
    ("(0 ∞ 1/c 1)", "1-c", "(1-z)/((c-1)*z)"),
    ("(0 1/c ∞ 1)", "1/c", "c*(1-z)/(1-c*z)"),
];

/// One record of the action: `ρ♯(c)` and `ρ♯(z)`. Internally `c` is stored
/// as the variable `a` and `z` as the variable `b` of [`RatFn`].
#[derive(Clone, Debug)]
pub struct SigmaAction {
    pub perm: SigmaPerm,
    pub c_image: RatFn,
    pub z_image: RatFn,
    pub c_text: String,
    pub z_text: String,
}

#[derive(Clone, Debug)]
pub struct SigmaTable {
    records: Vec<SigmaAction>,
    index: HashMap<SigmaPerm, usize>,
}

static TABLE: Lazy<SigmaTable> =
    Lazy::new(|| SigmaTable::from_literal(&TABLE1).expect("built-in action table parses"));

pub fn table1() -> &'static SigmaTable {
    &TABLE
}

/// A copy of the literal data with one `c`-image replaced by a map that does
/// not permute {0, 1, ∞}; used for fault injection.
pub fn corrupted_literal() -> Vec<(&'static str, &'static str, &'static str)> {
    let mut rows = TABLE1.to_vec();
    rows[4] = ("(1 ∞)", "2*c", "z/(z-1)");
    rows
}

impl SigmaTable {
    pub fn from_literal(rows: &[(&str, &str, &str)]) -> Result<Self, GroupError> {
        let mut records = Vec::with_capacity(rows.len());
        let mut index = HashMap::new();
        for (k, (p, c, z)) in rows.iter().enumerate() {
            let perm = SigmaPerm::parse(p)?;
            if index.insert(perm, k).is_some() {
                return Err(GroupError::TableNotClosed(format!("duplicate row for {perm}")));
            }
            records.push(SigmaAction {
                perm,
                c_image: parse_expr(c)?,
                z_image: parse_expr(z)?,
                c_text: c.to_string(),
                z_text: z.to_string(),
            });
        }
        Ok(SigmaTable { records, index })
    }

    pub fn records(&self) -> &[SigmaAction] {
        &self.records
    }

    pub fn get(&self, rho: &SigmaPerm) -> Option<&SigmaAction> {
        self.index.get(rho).map(|&k| &self.records[k])
    }

    /// The permutation of {0, 1, ∞} by which the Möbius map `ρ♯(c)` acts on
    /// the three marked values.
    pub fn underline(&self, rho: &SigmaPerm) -> Result<BasePerm, GroupError> {
        let rec = self.get(rho).ok_or_else(|| GroupError::NoMatch(format!("no record for {rho}")))?;
        mobius_point_perm(&rec.c_image).ok_or_else(|| GroupError::NoMatch(format!("{rho}: c ↦ {}", rec.c_text)))
    }

    /// Checks `(ρσ)♯ = σ♯ ∘ ρ♯` on `c` and `z` for every ordered pair.
    /// Returns the failing pairs.
    pub fn closure_failures(&self) -> Vec<(SigmaPerm, SigmaPerm)> {
        let mut bad = Vec::new();
        for r in &self.records {
            for s in &self.records {
                let prod = r.perm.compose(&s.perm);
                let Some(rs) = self.get(&prod) else {
                    bad.push((r.perm, s.perm));
                    continue;
                };
                let c = r.c_image.substitute(&s.c_image, &RatFn::b());
                let z = r.z_image.substitute(&s.c_image, &s.z_image);
                if c != rs.c_image || z != rs.z_image {
                    bad.push((r.perm, s.perm));
                }
            }
        }
        bad
    }

    /// Checks that each record sends the section `z = s(c)` to the section
    /// `z = ρ(s)` evaluated at `ρ♯(c)`. Returns failing `(ρ, point index)`.
    pub fn section_failures(&self) -> Vec<(SigmaPerm, usize)> {
        let mut bad = Vec::new();
        for r in &self.records {
            let Some(z) = linear_in_z(&r.z_image) else {
                bad.extend((0..4).map(|p| (r.perm, p)));
                continue;
            };
            for p in 0..4 {
                let (z0, z1) = section(p, &RatFn::a());
                let img = (&(&z.0 * &z0) + &(&z.1 * &z1), &(&z.2 * &z0) + &(&z.3 * &z1));
                let target = section(r.perm.apply(p), &r.c_image);
                let zero = img.0.is_zero() && img.1.is_zero();
                if zero || &img.0 * &target.1 != &img.1 * &target.0 {
                    bad.push((r.perm, p));
                }
            }
        }
        bad
    }
}

/// Projective coordinates of the section through point `p` of Σ, at parameter `c`.
fn section(p: usize, c: &RatFn) -> (RatFn, RatFn) {
    match p {
        0 => (RatFn::zero(), RatFn::one()),
        1 => (RatFn::one(), RatFn::one()),
        2 => (RatFn::one(), c.clone()),
        _ => (RatFn::one(), RatFn::zero()),
    }
}

/// Writes `(αz + β)/(γz + δ)` as `(α, β, γ, δ)` with coefficients in ℚ(c).
fn linear_in_z(r: &RatFn) -> Option<(RatFn, RatFn, RatFn, RatFn)> {
    let split = |p: &Poly| -> Option<(RatFn, RatFn)> {
        if p.deg_b() > 1 {
            return None;
        }
        let lin = Poly::from_terms(p.terms().iter().filter(|t| t.1 == 1).map(|(i, _, c)| (*i, 0, c.clone())));
        let cst = Poly::from_terms(p.terms().iter().filter(|t| t.1 == 0).cloned());
        Some((RatFn::from_poly(lin), RatFn::from_poly(cst)))
    };
    let (al, be) = split(r.numer())?;
    let (ga, de) = split(r.denom())?;
    Some((al, be, ga, de))
}

/// The permutation of {0, 1, ∞} induced by a Möbius map in `c` (stored in `a`).
pub fn mobius_point_perm(m: &RatFn) -> Option<BasePerm> {
    let coeffs = |p: &Poly| -> Option<(crate::field::Gq, crate::field::Gq)> {
        if p.deg_b() > 0 || p.deg_a() > 1 {
            return None;
        }
        let mut c1 = crate::field::Gq::zero();
        let mut c0 = crate::field::Gq::zero();
        for (i, _, c) in p.terms() {
            if *i == 1 {
                c1 = c.clone();
            } else {
                c0 = c.clone();
            }
        }
        Some((c1, c0))
    };
    let (p1, p0) = coeffs(m.numer())?;
    let (q1, q0) = coeffs(m.denom())?;
    // marked points in projective form: 0 = (0:1), 1 = (1:1), ∞ = (1:0)
    let pts = [(0i64, 1i64), (1, 1), (1, 0)];
    let mut images = [0u8; 3];
    for (k, (x0, x1)) in pts.iter().enumerate() {
        let g = |v: i64| crate::field::Gq::from_int(v);
        let num = &(&p1 * &g(*x0)) + &(&p0 * &g(*x1));
        let den = &(&q1 * &g(*x0)) + &(&q0 * &g(*x1));
        images[k] = match (num.is_zero(), den.is_zero()) {
            (true, true) => return None,
            (true, false) => 0,
            (false, true) => 2,
            (false, false) if num == den => 1,
            _ => return None,
        };
    }
    BasePerm::from_images(images)
}

/// Parses an arithmetic expression in `c`, `z` with integer constants.
pub fn parse_expr(s: &str) -> Result<RatFn, GroupError> {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = ExprParser { toks, pos: 0, src: s };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error());
    }
    Ok(r)
}

struct ExprParser<'a> {
    toks: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl ExprParser<'_> {
    fn error(&self) -> GroupError {
        GroupError::NoMatch(format!("cannot parse expression `{}`", self.src))
    }

    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFn, GroupError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn, GroupError> {
        let mut acc = self.factor()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = if op == '*' {
                &acc * &f
            } else {
                if f.is_zero() {
                    return Err(self.error());
                }
                &acc / &f
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFn, GroupError> {
        match self.peek().ok_or_else(|| self.error())? {
            '-' => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            '(' => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error());
                }
                self.pos += 1;
                Ok(e)
            }
            'c' => {
                self.pos += 1;
                Ok(RatFn::a())
            }
            'z' => {
                self.pos += 1;
                Ok(RatFn::b())
            }
            d if d.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: String = self.toks[start..self.pos].iter().collect();
                let n: i64 = n.parse().map_err(|_| self.error())?;
                Ok(RatFn::from_int(n))
            }
            _ => Err(self.error()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_rows() {
        let t = table1();
        let rec = t.get(&SigmaPerm::parse("(0 ∞)").unwrap()).unwrap();
        assert_eq!(rec.c_image, parse_expr("1/c").unwrap());
        assert_eq!(rec.z_image, parse_expr("1/z").unwrap());
        let rec = t.get(&SigmaPerm::parse("(0 1 1/c)").unwrap()).unwrap();
        assert_eq!(rec.c_image, parse_expr("1/(1-c)").unwrap());
    }

    #[test]
    fn underline_examples() {
        let t = table1();
        let u = |s: &str| t.underline(&SigmaPerm::parse(s).unwrap()).unwrap();
        assert!(u("id").is_identity());
        assert_eq!(u("(0 1)"), BasePerm::parse("(1 ∞)").unwrap());
        assert!(u("(0 1)(1/c ∞)").is_identity());
    }

    #[test]
    fn corrupted_table_reports_no_match() {
        let t = SigmaTable::from_literal(&corrupted_literal()).unwrap();
        assert!(matches!(t.underline(&SigmaPerm::parse("(1 ∞)").unwrap()), Err(GroupError::NoMatch(_))));
    }
}
