//! The fiber-product groups G_𝒴 and G_𝒳 and their subgroup data.

use std::collections::{HashMap, HashSet};
use std::fmt;

use once_cell::sync::Lazy;
use rand::Rng;
use rayon::prelude::*;

use super::gt::{GtGroup, BASE_ORDER};
use super::perm::{BasePerm, SigmaPerm};
use super::sigma::{table1, SigmaTable};
use crate::error::GroupError;
use crate::field::FieldHom;

/// An element `(ρ₁, ρ₂, τ = (τ₁, τ₂), ζ = iᶻ)` of G_𝒳, stored as indices into
/// the tables of [`GroupData`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GxElement {
    pub r1: u8,
    pub r2: u8,
    pub t1: u8,
    pub t2: u8,
    /// Exponent `k` of `ζ = iᵏ`.
    pub z: u8,
}

/// Orders reported by [`GroupData::subgroup_analysis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupAnalysis {
    pub order_h: usize,
    pub order_i: usize,
    pub order_intersection: usize,
    pub order_hi: usize,
    pub index_hi: usize,
}

/// All tables needed for the group law on G_𝒳.
pub struct GroupData {
    pub sigma: Vec<SigmaPerm>,
    pub sigma_mul: Vec<Vec<u8>>,
    pub sigma_inv: Vec<u8>,
    /// Index into `base` of the induced permutation of {0, 1, ∞}.
    pub sigma_underline: Vec<u8>,
    pub base: Vec<BasePerm>,
    pub gt: GtGroup,
    pub gt_base: Vec<u8>,
    pub elements: Vec<GxElement>,
    index: HashMap<GxElement, u32>,
    tau_homs: Vec<FieldHom>,
}

static DATA: Lazy<GroupData> = Lazy::new(|| GroupData::build(table1()).expect("group tables build"));

/// The shared, lazily built group tables.
pub fn data() -> &'static GroupData {
    &DATA
}

impl GroupData {
    pub fn build(table: &SigmaTable) -> Result<Self, GroupError> {
        let sigma: Vec<SigmaPerm> = table.records().iter().map(|r| r.perm).collect();
        let sidx: HashMap<SigmaPerm, u8> = sigma.iter().enumerate().map(|(k, p)| (*p, k as u8)).collect();
        let n = sigma.len();
        let mut sigma_mul = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = sigma[i].compose(&sigma[j]);
                sigma_mul[i][j] = *sidx.get(&p).ok_or_else(|| GroupError::TableNotClosed(format!("{p} missing")))?;
            }
        }
        let sigma_inv = sigma.iter().map(|p| sidx[&p.inverse()]).collect();
        let base: Vec<BasePerm> = BASE_ORDER.iter().map(|s| BasePerm::parse(s)).collect::<Result<_, _>>()?;
        let bidx = |p: &BasePerm| base.iter().position(|q| q == p).unwrap() as u8;
        let sigma_underline =
            sigma.iter().map(|p| table.underline(p).map(|u| bidx(&u))).collect::<Result<Vec<u8>, _>>()?;
        let gt = GtGroup::build()?;
        let gt_base: Vec<u8> = gt.elements.iter().map(|e| bidx(&e.base)).collect();

        let mut elements = Vec::with_capacity(18432);
        for r1 in 0..n as u8 {
            for r2 in 0..n as u8 {
                for t1 in 0..gt.len() as u8 {
                    if gt_base[t1 as usize] != sigma_underline[r1 as usize] {
                        continue;
                    }
                    for t2 in 0..gt.len() as u8 {
                        if gt_base[t2 as usize] != sigma_underline[r2 as usize] {
                            continue;
                        }
                        let sgn = base[sigma_underline[r1 as usize] as usize].sign()
                            * base[sigma_underline[r2 as usize] as usize].sign();
                        for z in 0..4u8 {
                            let z2 = if z % 2 == 0 { 1 } else { -1 };
                            if z2 == sgn {
                                elements.push(GxElement { r1, r2, t1, t2, z });
                            }
                        }
                    }
                }
            }
        }
        let index = elements.iter().enumerate().map(|(k, e)| (*e, k as u32)).collect();
        let m = gt.len();
        let tau_homs = (0..m * m)
            .into_par_iter()
            .map(|k| gt.elements[k / m].hom_a.compose(&gt.elements[k % m].hom_b))
            .collect();
        Ok(GroupData { sigma, sigma_mul, sigma_inv, sigma_underline, base, gt, gt_base, elements, index, tau_homs })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> GxElement {
        let id = self.sigma.iter().position(|p| p.is_identity()).unwrap() as u8;
        GxElement { r1: id, r2: id, t1: self.gt.identity, t2: self.gt.identity, z: 0 }
    }

    pub fn mul(&self, g: &GxElement, h: &GxElement) -> GxElement {
        GxElement {
            r1: self.sigma_mul[g.r1 as usize][h.r1 as usize],
            r2: self.sigma_mul[g.r2 as usize][h.r2 as usize],
            t1: self.gt.mul[g.t1 as usize][h.t1 as usize],
            t2: self.gt.mul[g.t2 as usize][h.t2 as usize],
            z: (g.z + h.z) % 4,
        }
    }

    pub fn inverse(&self, g: &GxElement) -> GxElement {
        GxElement {
            r1: self.sigma_inv[g.r1 as usize],
            r2: self.sigma_inv[g.r2 as usize],
            t1: self.gt.inv[g.t1 as usize],
            t2: self.gt.inv[g.t2 as usize],
            z: (4 - g.z) % 4,
        }
    }

    /// Whether `g` satisfies both fiber-product conditions.
    pub fn is_valid(&self, g: &GxElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &GxElement) -> Option<usize> {
        self.index.get(g).map(|&k| k as usize)
    }

    /// `ρ̄₁`, `ρ̄₂` as permutations of {0, 1, ∞}.
    pub fn underlines(&self, g: &GxElement) -> (BasePerm, BasePerm) {
        (
            self.base[self.sigma_underline[g.r1 as usize] as usize],
            self.base[self.sigma_underline[g.r2 as usize] as usize],
        )
    }

    /// Index of the G_T component in `0..576`.
    pub fn tau_index(&self, g: &GxElement) -> usize {
        g.t1 as usize * self.gt.len() + g.t2 as usize
    }

    /// The pullback `τ♯` on F.
    pub fn tau_hom(&self, g: &GxElement) -> &FieldHom {
        &self.tau_homs[self.tau_index(g)]
    }

    pub fn tau_hom_by_index(&self, k: usize) -> &FieldHom {
        &self.tau_homs[k]
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> GxElement {
        self.elements[rng.gen_range(0..self.elements.len())]
    }

    pub fn label(&self, g: &GxElement) -> String {
        format!(
            "({}, {}, {}, {}, i^{})",
            self.sigma[g.r1 as usize],
            self.sigma[g.r2 as usize],
            self.gt.elements[g.t1 as usize].label(),
            self.gt.elements[g.t2 as usize].label(),
            g.z
        )
    }

    /// Number of distinct `(ρ₁, ρ₂, τ)` triples.
    pub fn order_gy(&self) -> usize {
        self.elements.iter().map(|e| (e.r1, e.r2, e.t1, e.t2)).collect::<HashSet<_>>().len()
    }

    /// Number of distinct `τ` in the image of G_𝒳 → G_T.
    pub fn order_gt_image(&self) -> usize {
        self.elements.iter().map(|e| (e.t1, e.t2)).collect::<HashSet<_>>().len()
    }

    /// Kernel of G_𝒳 → G_T.
    pub fn subgroup_h(&self) -> Vec<GxElement> {
        let id = self.gt.identity;
        self.elements.iter().filter(|e| e.t1 == id && e.t2 == id).copied().collect()
    }

    /// Elements with `ρ₁ = ρ₂` fixing 1/c and `ζ = 1`.
    pub fn subgroup_i(&self) -> Vec<GxElement> {
        self.elements
            .iter()
            .filter(|e| e.r1 == e.r2 && e.z == 0 && self.sigma[e.r1 as usize].restrict().is_some())
            .copied()
            .collect()
    }

    pub fn is_subgroup(&self, set: &[GxElement]) -> bool {
        let s: HashSet<GxElement> = set.iter().copied().collect();
        s.contains(&self.identity())
            && set.iter().all(|g| s.contains(&self.inverse(g)))
            && set.par_iter().all(|g| set.iter().all(|h| s.contains(&self.mul(g, h))))
    }

    pub fn subgroup_analysis(&self) -> SubgroupAnalysis {
        let h = self.subgroup_h();
        let i = self.subgroup_i();
        let hs: HashSet<GxElement> = h.iter().copied().collect();
        let inter = i.iter().filter(|g| hs.contains(g)).count();
        let hi: HashSet<GxElement> = h.iter().flat_map(|x| i.iter().map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        SubgroupAnalysis {
            order_h: h.len(),
            order_i: i.len(),
            order_intersection: inter,
            order_hi: hi.len(),
            index_hi: self.len() / hi.len().max(1),
        }
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[GxElement]) -> HashSet<GxElement> {
        let mut seen: HashSet<GxElement> = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    /// A generating set chosen greedily in enumeration order, then pruned so
    /// that no generator is redundant.
    pub fn generators(&self) -> Vec<GxElement> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for e in &self.elements {
            if span.len() == self.len() {
                break;
            }
            if !span.contains(e) {
                gens.push(*e);
                span = self.closure(&gens);
            }
        }
        let mut k = 0;
        while k < gens.len() {
            let mut rest = gens.clone();
            rest.remove(k);
            if self.closure(&rest).len() == self.len() {
                gens = rest;
            } else {
                k += 1;
            }
        }
        gens
    }
}

impl fmt::Display for GxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", data().label(self))
    }
}
