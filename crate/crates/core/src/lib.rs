//! Silting objects, simple-minded collections, t-structures and
//! co-t-structures over finite-dimensional quiver algebras, computed exactly
//! over the rationals.
//!
//! Everything here is deterministic: no randomized pivoting, no floating
//! point. The chain of modules mirrors the chain of categories — exact linear
//! algebra, then the algebra itself, its right modules, bounded complexes of
//! projectives up to homotopy, bounded complexes of modules, and finally the
//! silting/simple-minded machinery with the four-way correspondence on top.

pub mod bijections;
pub mod derived;
pub mod findim;
pub mod fixtures;
pub mod graphiso;
pub mod homotopy;
pub mod linalg;
pub mod modules;
pub mod quiver;
pub mod silting;
pub mod smc;

pub use linalg::{Rat, RatMatrix};
pub use quiver::{AlgebraPresentation, PathAlgebra};
