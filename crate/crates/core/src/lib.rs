//! Exact calculus for maps over finite-dimensional associative division
//! algebras: complex numbers, quaternions and the generalized family `E(a, b)`.
//!
//! Scalars are exact rationals. Floating point appears only in [`numeric`],
//! which serves as an independent oracle for the symbolic results.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod gateaux;
pub mod linear;
pub mod matrix;
pub mod numeric;
pub mod parse;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod taylor;

pub use algebra::{AlgebraKind, AlgebraSpec, Element};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::{NcPoly, NcWord, Var};
pub use scalar::Scalar;
