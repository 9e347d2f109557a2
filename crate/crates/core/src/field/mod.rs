//! Exact arithmetic in F = ℚ(i)(a,b)[√a, √(1−a), √b, √(1−b)].

pub mod branch;
pub mod element;
pub mod gaussian;
pub mod hom;
mod modp;
pub mod poly;
pub mod ratfn;
pub mod serialize;

pub use branch::BranchPoint;
pub use element::FieldElement;
pub use gaussian::Gq;
pub use hom::FieldHom;
pub use poly::Poly;
pub use ratfn::{GaussianRationalFunction, RatFn};
