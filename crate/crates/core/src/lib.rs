//! Exact computations with quiver Hecke (KLR) algebras, their cyclotomic
//! quotients, Shapovalov forms and normalized R-matrices of quantum affine
//! algebras of type A.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cartan;
pub mod cyclotomic;
pub mod dynkin;
pub mod klr;
pub mod rmatrix;
pub mod shapovalov;
pub mod swquiver;

pub use arith::{LaurentPoly, MPoly, RatFunc, Rational};
pub use cartan::CartanDatum;
pub use klr::{KlrAlgebra, KlrElement, KlrMonomial, QFamily};
