//! Supports of F-finite F-modules over F_p[x1..xn].
//!
//! The engine computes the support of an F-finite F-module given by a
//! generating morphism `Coker A -> Coker A^[p]` (multiplication by a square
//! matrix `U`) with a fixed-point iteration of Frobenius roots that needs no
//! Gröbner bases, followed by one syzygy computation and a Fitting ideal.
//! On top of that sit builders of generating morphisms for local cohomology
//! (`Ext` and Koszul based, including iterated local cohomology) and the
//! injectivity/surjectivity loci of multiplication by an element.

pub mod error;
pub mod frobroot;
pub mod fsupport;
pub mod groebner;
pub mod hyperloci;
pub mod lccohom;
pub mod ring;

pub use error::{Error, Result};
