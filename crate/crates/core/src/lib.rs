//! Exact cohomology computations for nilpotent Lie algebras with
//! left-invariant complex structures.
//!
//! Everything is computed over the exact field tower ℚ ⊆ ℚ(t) ⊆ ℚ(t)(i):
//! Chevalley–Eilenberg (de Rham) cohomology, Lie-algebra Dolbeault
//! cohomology, the Frölicher and Hochschild–Serre spectral sequences, and the
//! rationality / torus-bundle-series tests that decide when the Dolbeault
//! numbers of the algebra are known to agree with those of the nilmanifold.

pub mod arith;
pub mod catalog;
pub mod chevalley;
pub mod cstruct;
pub mod dolbeault;
pub mod error;
pub mod fibration;
pub mod lie;
pub mod linalg;
pub mod spectral;

pub use arith::{parse_scalar, Level, Scalar};
pub use cstruct::ComplexStructure;
pub use error::{Error, Result};
pub use lie::LieAlgebra;
pub use linalg::{Matrix, Subspace};
