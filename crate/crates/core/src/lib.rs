//! Exact certificates for maximal border subrank of `n × n × n` tensors.
//!
//! Everything is computed over the rationals: torus nullcone membership of
//! coordinate supports, invariant-monomial obstructions, Lie-algebra
//! stabilizer and tangent dimensions, unit-tensor orbit membership, and
//! tightness witnesses.

pub mod error;
pub mod linalg;
pub mod lp;
pub mod monomials;
pub mod nullcone;
pub mod orbit;
pub mod rational;
pub mod stabilizer;
pub mod tensor;
pub mod tight;
pub mod torus;

pub use error::{Error, Result};
pub use rational::Rational;
pub use tensor::{Permutation, Support, Tensor3, Triple, WVariant};
pub use torus::TorusWeight;
