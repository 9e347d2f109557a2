//! Sparse bivariate polynomials in `a`, `b` over ℚ(i), with exact division
//! and a primitive-PRS greatest common divisor.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gaussian::Gq;
use super::modp;

/// A polynomial `Σ c·aⁱbʲ`. Terms are kept sorted in descending lex order
/// (`a` before `b`) with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(u32, u32, Gq)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Gq::one())
    }

    pub fn constant(c: Gq) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(0, 0, c)] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Gq::from_int(n))
    }

    pub fn monomial(c: Gq, ea: u32, eb: u32) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(ea, eb, c)] }
        }
    }

    pub fn var_a() -> Self {
        Poly::monomial(Gq::one(), 1, 0)
    }

    pub fn var_b() -> Self {
        Poly::monomial(Gq::one(), 0, 1)
    }

    /// Builds a polynomial from integer coefficients `(coeff, ea, eb)`.
    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        Poly::from_terms(terms.iter().map(|&(c, i, j)| (i, j, Gq::from_int(c))))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Gq)>) -> Self {
        let mut acc: BTreeMap<(u32, u32), Gq> = BTreeMap::new();
        for (i, j, c) in terms {
            *acc.entry((i, j)).or_default() += &c;
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: BTreeMap<(u32, u32), Gq>) -> Self {
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), c)| (i, j, c))
            .collect();
        Poly { terms }
    }

    pub fn terms(&self) -> &[(u32, u32, Gq)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == 0)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].2.is_one()
    }

    /// The constant value if this polynomial is constant.
    pub fn constant_value(&self) -> Option<Gq> {
        if self.is_zero() {
            Some(Gq::zero())
        } else if self.is_constant() {
            Some(self.terms[0].2.clone())
        } else {
            None
        }
    }

    /// Lexicographically leading coefficient (zero for the zero polynomial).
    pub fn lead_coeff(&self) -> Gq {
        self.terms.first().map(|t| t.2.clone()).unwrap_or_default()
    }

    pub fn deg_a(&self) -> u32 {
        self.terms.iter().map(|t| t.0).max().unwrap_or(0)
    }

    pub fn deg_b(&self) -> u32 {
        self.terms.iter().map(|t| t.1).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Gq) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(i, j, x)| (*i, *j, x * c)).collect() }
    }

    /// Divides by the leading coefficient so the result has lex-leading
    /// coefficient 1. Returns the factor that was divided out.
    pub fn make_monic(&self) -> (Poly, Gq) {
        if self.is_zero() {
            return (Poly::zero(), Gq::one());
        }
        let lc = self.lead_coeff();
        if lc.is_one() {
            return (self.clone(), lc);
        }
        (self.scale(&lc.inv()), lc)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn derive_a(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|t| t.0 > 0)
                .map(|(i, j, c)| (i - 1, *j, c * &Gq::from_int(*i as i64))),
        )
    }

    pub fn derive_b(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|t| t.1 > 0)
                .map(|(i, j, c)| (*i, j - 1, c * &Gq::from_int(*j as i64))),
        )
    }

    /// Swaps the roles of `a` and `b`.
    pub fn swap_vars(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(i, j, c)| (*j, *i, c.clone())))
    }

    pub fn eval(&self, a: Complex64, b: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(i, j, c)| c.to_c64() * a.powu(*i) * b.powu(*j))
            .sum()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()));
        }
        let (da, db, dc) = d.terms[0].clone();
        let dc_inv = dc.inv();
        let mut rem: BTreeMap<(u32, u32), Gq> =
            self.terms.iter().map(|(i, j, c)| ((*i, *j), c.clone())).collect();
        let mut quot: Vec<(u32, u32, Gq)> = Vec::new();
        while let Some((&(ra, rb), rc)) = rem.iter().next_back() {
            if ra < da || rb < db {
                return None;
            }
            let (qa, qb, qc) = (ra - da, rb - db, rc * &dc_inv);
            for (ta, tb, tc) in &d.terms {
                let key = (ta + qa, tb + qb);
                let delta = tc * &qc;
                let e = rem.entry(key).or_default();
                *e = &*e - &delta;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((qa, qb, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Exact square root, if `self` is the square of a polynomial over ℚ(i).
    /// The root returned has a leading coefficient with [`Gq::is_positive`].
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (ea, eb, c) = self.terms[0].clone();
        if ea % 2 != 0 || eb % 2 != 0 {
            return None;
        }
        let lead = Poly::monomial(c.sqrt()?, ea / 2, eb / 2);
        let two_lead = lead.scale(&Gq::from_int(2));
        let mut root = lead.clone();
        let budget = (self.deg_a() as usize + 1) * (self.deg_b() as usize + 1);
        for _ in 0..budget {
            let rem = self - &(&root * &root);
            if rem.is_zero() {
                return Some(root);
            }
            let (ra, rb, rc) = rem.terms[0].clone();
            if ra < ea / 2 || rb < eb / 2 {
                return None;
            }
            let next = Poly::monomial(&rc / &two_lead.lead_coeff(), ra - ea / 2, rb - eb / 2);
            if next.terms[0].0 > ea / 2 || (next.terms[0].0 == ea / 2 && next.terms[0].1 >= eb / 2) {
                return None;
            }
            root = &root + &next;
        }
        None
    }

    /// Monic greatest common divisor (lex-leading coefficient 1).
    pub fn gcd(p: &Poly, q: &Poly) -> Poly {
        if p.is_zero() {
            return q.make_monic().0;
        }
        if q.is_zero() {
            return p.make_monic().0;
        }
        if p.is_constant() || q.is_constant() {
            return Poly::one();
        }
        if p.terms.len() == 1 || q.terms.len() == 1 {
            return monomial_gcd(p, q);
        }
        if p == q {
            return p.make_monic().0;
        }
        let rp = to_rec(p);
        let rq = to_rec(q);
        let cp = rec_content(&rp);
        let cq = rec_content(&rq);
        let content = upoly::gcd(&cp, &cq);
        let f = rec_div_upoly(&rp, &cp);
        let g = rec_div_upoly(&rq, &cq);
        let f = interpolated_gcd(&f, &g);
        let out: Vec<Vec<Gq>> = f.iter().map(|c| upoly::mul(c, &content)).collect();
        from_rec(&out).make_monic().0
    }
}

/// gcd when at least one side is a single term: the common power of `a`, `b`
/// dividing every term of the other.
fn monomial_gcd(p: &Poly, q: &Poly) -> Poly {
    let min_a = p.terms.iter().chain(q.terms.iter()).map(|t| t.0).min().unwrap_or(0);
    let min_b = p.terms.iter().chain(q.terms.iter()).map(|t| t.1).min().unwrap_or(0);
    Poly::monomial(Gq::one(), min_a, min_b)
}

// Recursive view: coefficients of `a^k` as dense univariate polynomials in `b`.
type Rec = Vec<Vec<Gq>>;

fn to_rec(p: &Poly) -> Rec {
    let mut out: Rec = vec![Vec::new(); p.deg_a() as usize + 1];
    for (i, j, c) in &p.terms {
        let row = &mut out[*i as usize];
        if row.len() <= *j as usize {
            row.resize(*j as usize + 1, Gq::zero());
        }
        row[*j as usize] = c.clone();
    }
    out.iter_mut().for_each(upoly::trim);
    while out.last().is_some_and(|r| r.is_empty()) {
        out.pop();
    }
    out
}

fn from_rec(r: &[Vec<Gq>]) -> Poly {
    Poly::from_terms(r.iter().enumerate().flat_map(|(i, row)| {
        row.iter().enumerate().map(move |(j, c)| (i as u32, j as u32, c.clone()))
    }))
}

fn rec_content(r: &Rec) -> Vec<Gq> {
    if r.iter().any(|c| c.len() == 1) {
        return vec![Gq::one()];
    }
    let rows: Vec<&Vec<Gq>> = r.iter().filter(|c| !c.is_empty()).collect();
    if rows.len() >= 2 && modular_coprime_univariate(rows[rows.len() - 1], rows[rows.len() - 2]) {
        return vec![Gq::one()];
    }
    let mut g: Vec<Gq> = Vec::new();
    for c in r.iter().rev() {
        if c.is_empty() {
            continue;
        }
        g = upoly::gcd(&g, c);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn rec_div_upoly(r: &Rec, d: &[Gq]) -> Rec {
    if d.len() == 1 && d[0].is_one() {
        return r.clone();
    }
    r.iter().map(|c| upoly::div_exact(c, d)).collect()
}

/// Primitive part, scaled so the leading scalar coefficient is 1.
fn rec_primitive(r: &Rec) -> Rec {
    let c = rec_content(r);
    let mut out = rec_div_upoly(r, &c);
    if let Some(lead) = out.last().and_then(|row| row.last()).cloned() {
        if !lead.is_one() {
            let inv = lead.inv();
            for row in out.iter_mut() {
                for x in row.iter_mut() {
                    *x = &*x * &inv;
                }
            }
        }
    }
    out
}

fn upoly_eval(p: &[Gq], x: &Gq) -> Gq {
    let mut acc = Gq::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Sufficient test for coprimality of primitive `f`, `g`: reduce modulo a
/// prime of ℤ[i], specialize `b`, and find a trivial univariate gcd at a point
/// where both leading coefficients in `a` survive.
fn modular_coprime(f: &Rec, g: &Rec) -> bool {
    let reduce = |r: &Rec| -> Option<Vec<Vec<u64>>> {
        r.iter().map(|row| row.iter().map(modp::reduce).collect()).collect()
    };
    let (Some(fr), Some(gr)) = (reduce(f), reduce(g)) else {
        return false;
    };
    for b0 in [2u64, 3, 5, 7, 11] {
        let fs: Vec<u64> = fr.iter().map(|c| modp::eval(c, b0)).collect();
        let gs: Vec<u64> = gr.iter().map(|c| modp::eval(c, b0)).collect();
        if fs.last() == Some(&0) || gs.last() == Some(&0) {
            continue;
        }
        if modp::gcd_degree(&fs, &gs) == 0 {
            return true;
        }
    }
    false
}

/// Sufficient test for coprimality of two univariate polynomials in `b`.
fn modular_coprime_univariate(f: &[Gq], g: &[Gq]) -> bool {
    let reduce = |p: &[Gq]| -> Option<Vec<u64>> { p.iter().map(modp::reduce).collect() };
    match (reduce(f), reduce(g)) {
        (Some(fr), Some(gr)) if fr.last() != Some(&0) && gr.last() != Some(&0) => modp::gcd_degree(&fr, &gr) == 0,
        _ => false,
    }
}

/// gcd of two primitive polynomials (recursive view) by specializing `b` at
/// integer points, taking univariate gcds in `a`, and interpolating the
/// coefficients back in `b`. The candidate is accepted once it divides both
/// inputs exactly; unlucky points only delay acceptance.
fn interpolated_gcd(f: &Rec, g: &Rec) -> Rec {
    if modular_coprime(f, g) {
        return vec![vec![Gq::one()]];
    }
    let gamma = upoly::gcd(f.last().unwrap(), g.last().unwrap());
    let deg_b = |r: &Rec| r.iter().map(|c| c.len()).max().unwrap_or(1) - 1;
    let bound = gamma.len() - 1 + deg_b(f).min(deg_b(g));
    let (pf, pg) = (from_rec(f), from_rec(g));
    let mut points: Vec<Gq> = Vec::new();
    let mut images: Vec<Vec<Gq>> = Vec::new();
    let mut min_deg = usize::MAX;
    let mut k: i64 = 0;
    loop {
        k += 1;
        let x = Gq::from_int(if k % 2 == 0 { k / 2 } else { -(k / 2) - 1 });
        let gx = upoly_eval(&gamma, &x);
        if gx.is_zero()
            || upoly_eval(f.last().unwrap(), &x).is_zero()
            || upoly_eval(g.last().unwrap(), &x).is_zero()
        {
            continue;
        }
        let fs: Vec<Gq> = f.iter().map(|c| upoly_eval(c, &x)).collect();
        let gs: Vec<Gq> = g.iter().map(|c| upoly_eval(c, &x)).collect();
        let u = upoly::gcd(&fs, &gs);
        if u.len() == 1 {
            return vec![vec![Gq::one()]];
        }
        if u.len() > min_deg {
            continue;
        }
        if u.len() < min_deg {
            min_deg = u.len();
            points.clear();
            images.clear();
        }
        points.push(x);
        images.push(u.iter().map(|c| c * &gx).collect());
        if points.len() < bound + 1 {
            continue;
        }
        let cand: Rec = (0..min_deg)
            .map(|j| {
                let ys: Vec<Gq> = images.iter().map(|u| u[j].clone()).collect();
                upoly::interpolate(&points, &ys)
            })
            .collect();
        let cand = rec_primitive(&cand);
        let pc = from_rec(&cand);
        if pf.div_exact(&pc).is_some() && pg.div_exact(&pc).is_some() {
            return cand;
        }
    }
}

/// Dense univariate polynomials over ℚ(i), ascending coefficients, trimmed.
mod upoly {
    use super::Gq;

    pub fn trim(p: &mut Vec<Gq>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn mul(p: &[Gq], q: &[Gq]) -> Vec<Gq> {
        if p.is_empty() || q.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Gq::zero(); p.len() + q.len() - 1];
        for (i, x) in p.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in q.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        trim(&mut out);
        out
    }

    /// Newton interpolation through `(xs[k], ys[k])`.
    pub fn interpolate(xs: &[Gq], ys: &[Gq]) -> Vec<Gq> {
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                dd[k] = &(&dd[k] - &dd[k - 1]) / &(&xs[k] - &xs[k - level]);
            }
        }
        let mut out: Vec<Gq> = vec![dd[n - 1].clone()];
        for k in (0..n - 1).rev() {
            // out = out * (b - xs[k]) + dd[k]
            let mut next = vec![Gq::zero(); out.len() + 1];
            for (i, c) in out.iter().enumerate() {
                next[i + 1] += c;
                next[i] = &next[i] - &(c * &xs[k]);
            }
            next[0] += &dd[k];
            out = next;
        }
        trim(&mut out);
        out
    }

    fn monic(p: &[Gq]) -> Vec<Gq> {
        match p.last() {
            None => Vec::new(),
            Some(l) if l.is_one() => p.to_vec(),
            Some(l) => {
                let inv = l.inv();
                p.iter().map(|c| c * &inv).collect()
            }
        }
    }

    /// Quotient and remainder over the field ℚ(i).
    pub fn divrem(p: &[Gq], d: &[Gq]) -> (Vec<Gq>, Vec<Gq>) {
        assert!(!d.is_empty(), "univariate division by zero");
        let mut r = p.to_vec();
        if r.len() < d.len() {
            return (Vec::new(), r);
        }
        let ld_inv = d.last().unwrap().inv();
        let mut q = vec![Gq::zero(); r.len() - d.len() + 1];
        while r.len() >= d.len() && !r.is_empty() {
            let shift = r.len() - d.len();
            let c = r.last().unwrap() * &ld_inv;
            for (k, dc) in d.iter().enumerate() {
                let t = dc * &c;
                r[k + shift] = &r[k + shift] - &t;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn div_exact(p: &[Gq], d: &[Gq]) -> Vec<Gq> {
        if d.len() == 1 {
            let inv = d[0].inv();
            return p.iter().map(|c| c * &inv).collect();
        }
        let (q, r) = divrem(p, d);
        debug_assert!(r.is_empty(), "inexact univariate division");
        q
    }

    /// Monic gcd; the gcd with the zero polynomial is the other argument made monic.
    pub fn gcd(p: &[Gq], q: &[Gq]) -> Vec<Gq> {
        let mut a = p.to_vec();
        let mut b = q.to_vec();
        while !b.is_empty() {
            if b.len() == 1 {
                return vec![Gq::one()];
            }
            let (_, r) = divrem(&a, &b);
            a = b;
            b = monic(&r);
        }
        monic(&a)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        Poly::from_terms(self.terms.iter().chain(o.terms.iter()).cloned())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(i, j, c)| (*i, *j, -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        let mut acc: BTreeMap<(u32, u32), Gq> = BTreeMap::new();
        for (i1, j1, c1) in &self.terms {
            for (i2, j2, c2) in &o.terms {
                *acc.entry((i1 + i2, j1 + j2)).or_default() += &(c1 * c2);
            }
        }
        Poly::from_map(acc)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (i, j, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut s = Vec::new();
                    if *i == 1 {
                        s.push("a".to_string());
                    } else if *i > 1 {
                        s.push(format!("a^{i}"));
                    }
                    if *j == 1 {
                        s.push("b".to_string());
                    } else if *j > 1 {
                        s.push(format!("b^{j}"));
                    }
                    s.join("*")
                }
            };
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{c}*{mono}")?;
            }
        }
        Ok(())
    }
}
