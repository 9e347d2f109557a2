//! Exact and numerical verification engine for a family of Kummer surfaces:
//! function-field arithmetic, the symmetry group and its cocycles,
//! Picard-Fuchs operators, period numerics and a rank certificate.

pub mod error;
pub mod field;
pub mod group;
pub mod numerics;
pub mod cocycle;
pub mod diffop;
pub mod rank;
