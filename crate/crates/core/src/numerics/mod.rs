//! Numerical evaluation of periods and of the regulator integral, and
//! finite-difference checks of the Picard-Fuchs system.

pub mod periods;
pub mod quad;

pub use periods::{
    check_h_identity, check_inhomogeneous, eval_l, eval_l_tensor, fd_apply_pf, period_p, FdScheme,
    InhomogeneousResidual,
};
pub use quad::{quad_ts, QuadratureSpec};
