//! Permutations of the small marked sets {0, 1, ∞} and Σ = {0, 1, 1/c, ∞}.

use std::fmt;

use crate::error::GroupError;

/// A permutation of `N` labelled points, stored as the image of each point.
/// Products follow `(ρσ)(p) = ρ(σ(p))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallPerm<const N: usize> {
    map: [u8; N],
}

/// Permutation of Σ = {0, 1, 1/c, ∞} (point indices 0, 1, 2, 3).
pub type SigmaPerm = SmallPerm<4>;
/// Permutation of {0, 1, ∞} (point indices 0, 1, 2).
pub type BasePerm = SmallPerm<3>;

const SIGMA_NAMES: [&str; 4] = ["0", "1", "1/c", "∞"];
const BASE_NAMES: [&str; 3] = ["0", "1", "∞"];

fn point_names(n: usize) -> &'static [&'static str] {
    if n == 4 {
        &SIGMA_NAMES
    } else {
        &BASE_NAMES
    }
}

fn parse_point(n: usize, s: &str) -> Option<usize> {
    let s = match s {
        "inf" | "oo" => "∞",
        other => other,
    };
    point_names(n).iter().position(|p| *p == s)
}

impl<const N: usize> SmallPerm<N> {
    pub fn identity() -> Self {
        SmallPerm { map: std::array::from_fn(|i| i as u8) }
    }

    /// Builds from an image table; `None` if it is not a bijection.
    pub fn from_images(images: [u8; N]) -> Option<Self> {
        let mut seen = [false; N];
        for &x in &images {
            if x as usize >= N || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(SmallPerm { map: images })
    }

    /// Builds from disjoint cycles given by point indices.
    pub fn from_cycles(cycles: &[&[usize]]) -> Self {
        let mut map: [u8; N] = std::array::from_fn(|i| i as u8);
        for cyc in cycles {
            for k in 0..cyc.len() {
                map[cyc[k]] = cyc[(k + 1) % cyc.len()] as u8;
            }
        }
        SmallPerm::from_images(map).expect("cycles must be disjoint")
    }

    pub fn apply(&self, p: usize) -> usize {
        self.map[p] as usize
    }

    pub fn images(&self) -> [u8; N] {
        self.map
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        SmallPerm { map: std::array::from_fn(|i| self.map[other.map[i] as usize]) }
    }

    pub fn inverse(&self) -> Self {
        let mut map = [0u8; N];
        for (i, &x) in self.map.iter().enumerate() {
            map[x as usize] = i as u8;
        }
        SmallPerm { map }
    }

    pub fn is_identity(&self) -> bool {
        *self == SmallPerm::identity()
    }

    /// +1 for even permutations, −1 for odd ones.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0;
        for i in 0..N {
            for j in i + 1..N {
                if self.map[i] > self.map[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> usize {
        let mut p = *self;
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// All `N!` permutations in lexicographic order of image tables.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..N as u8).collect();
        permute(&mut cur, 0, &mut out);
        out.sort();
        out
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; N];
        let mut out = Vec::new();
        for start in 0..N {
            if seen[start] || self.map[start] as usize == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = self.map[start] as usize;
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = self.map[p] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Parses cycle notation such as `(0 1 1/c)(1 ∞)` or `id`.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::NoMatch(format!("cannot parse permutation `{s}`"));
        let t = s.trim();
        if t == "id" || t.is_empty() {
            return Ok(SmallPerm::identity());
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for chunk in t.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk.strip_prefix('(').ok_or_else(bad)?;
            let pts: Option<Vec<usize>> = body.split_whitespace().map(|p| parse_point(N, p)).collect();
            cycles.push(pts.ok_or_else(bad)?);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        let mut map: [u8; N] = std::array::from_fn(|i| i as u8);
        let mut touched = [false; N];
        for cyc in &refs {
            for k in 0..cyc.len() {
                if touched[cyc[k]] {
                    return Err(bad());
                }
                touched[cyc[k]] = true;
                map[cyc[k]] = cyc[(k + 1) % cyc.len()] as u8;
            }
        }
        SmallPerm::from_images(map).ok_or_else(bad)
    }
}

fn permute<const N: usize>(cur: &mut Vec<u8>, k: usize, out: &mut Vec<SmallPerm<N>>) {
    if k == N {
        out.push(SmallPerm { map: std::array::from_fn(|i| cur[i]) });
        return;
    }
    for i in k..N {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

impl BasePerm {
    /// The same permutation on Σ, fixing 1/c.
    pub fn embed(&self) -> SigmaPerm {
        let to_sigma = [0u8, 1, 3];
        let mut map = [0u8, 1, 2, 3];
        for (i, &x) in self.map.iter().enumerate() {
            map[to_sigma[i] as usize] = to_sigma[x as usize];
        }
        SigmaPerm { map }
    }
}

impl SigmaPerm {
    /// The restriction to {0, 1, ∞} if the permutation fixes 1/c.
    pub fn restrict(&self) -> Option<BasePerm> {
        if self.map[2] != 2 {
            return None;
        }
        let from_sigma = |x: u8| match x {
            0 => 0u8,
            1 => 1,
            _ => 2,
        };
        Some(BasePerm { map: [from_sigma(self.map[0]), from_sigma(self.map[1]), from_sigma(self.map[3])] })
    }
}

impl<const N: usize> fmt::Display for SmallPerm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        let names = point_names(N);
        for c in cycles {
            let parts: Vec<&str> = c.iter().map(|&p| names[p]).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Debug for SmallPerm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
