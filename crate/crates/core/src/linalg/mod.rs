//! Exact dense linear algebra over `Q` or `F_p`.

mod field;
mod matrix;

pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{EchelonBuilder, Mat, Rref};
