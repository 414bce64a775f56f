//! Exact arithmetic in F_p[x1..xn].

mod field;
mod matrix;
mod monomial;
mod parse;
mod poly;
mod vector;

pub use field::{is_prime, ExtElem, FieldSpec, Fp, GfExt};
pub use matrix::PolyMatrix;
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::{Poly, Ring, Term};
pub use vector::FreeVector;
