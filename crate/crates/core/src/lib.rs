//! Combinatorial and homological model of broken Lefschetz fibrations on the
//! 4-sphere whose regular fibers come from spun and twist-spun torus knots.

pub mod blf;
pub mod cerf;
pub mod document;
pub mod fiber;
pub mod matrix;
pub mod monodromy;
pub mod orbits;
pub mod params;
pub mod perm;
pub mod poly;
pub mod report;
pub mod surface;
pub mod svg;

pub use matrix::IntMatrix;
pub use params::{ParamError, TorusKnotParams};
pub use poly::IntPoly;
