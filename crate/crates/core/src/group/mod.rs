//! The symmetry groups: 𝔖(Σ) with its action data, the 𝔖₄ factors of G_T,
//! and the fiber products G_𝒴, G_𝒳.

pub mod gt;
pub mod gx;
pub mod perm;
pub mod sigma;

pub use gt::{GtFactorElement, GtGroup};
pub use gx::{data, GroupData, GxElement, SubgroupAnalysis};
pub use perm::{BasePerm, SigmaPerm, SmallPerm};
pub use sigma::{table1, SigmaAction, SigmaTable};

use crate::error::GroupError;

/// The stored action record of `rho`.
pub fn sigma_table(rho: &SigmaPerm) -> &'static SigmaAction {
    table1().get(rho).expect("every permutation of Σ has a record")
}

/// The permutation of {0, 1, ∞} induced by `rho`.
pub fn underline(rho: &SigmaPerm) -> Result<BasePerm, GroupError> {
    table1().underline(rho)
}

/// All 24 elements of one 𝔖₄ factor of G_T.
pub fn gt_factor_all() -> &'static [GtFactorElement] {
    &data().gt.elements
}

/// All 18432 elements of G_𝒳.
pub fn gx_all() -> &'static [GxElement] {
    &data().elements
}

pub fn gx_mul(g: &GxElement, h: &GxElement) -> GxElement {
    data().mul(g, h)
}
