//! Exact symbolic engine for the fermionic q-Fock space built from a Hecke
//! R-matrix.
//!
//! Layers, bottom up: [`coeff`] (integer Laurent polynomials), [`tensor`]
//! (sparse operators on tensor powers), [`rmatrix`] (Hecke R-matrices and
//! their identities), [`wedge`] (one-mode quantum exterior algebra),
//! [`modealg`] (the multi-mode exchange algebra and its normal ordering) and
//! [`fock`] (states near the semi-infinite vacuum and the shift operators).

pub mod coeff;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod modealg;
pub mod rmatrix;
pub mod tensor;
pub mod wedge;

pub use coeff::{LaurentPoly, PolyQZW};
pub use error::Error;
