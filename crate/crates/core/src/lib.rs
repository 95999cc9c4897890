//! Exact homological algebra for finite-dimensional algebras.
//!
//! Algebras are given by structure constants (optionally from a bound quiver
//! with monomial relations), modules by action matrices. On top of that the
//! crate computes minimal projective resolutions, Ext and Tor, Nakayama
//! functors and Serre images, Gorenstein dimensions, and verifies perfect
//! exceptional cycles, including the product of two cycles over a
//! triangular matrix algebra.

pub mod algebra;
pub mod cycles;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod module;
pub mod sample;
pub mod suites;

pub use algebra::{build_from_quiver, triangular, Algebra, EmbeddingData, QuiverPresentation, Triangular};
pub use error::{Error, Result};
pub use linalg::{Field, FieldSpec, Mat, PrimeField, Rationals};
pub use module::{Bimodule, LeftModule, ModuleHom, RightModule, TripleModule};
