//! Numerical workbench for integrable XXX/XXZ spin chains carrying one spin-S
//! defect: representations, Lax operators, small-chain diagonalization and
//! Bethe roots, closed-form and Fourier-integral amplitudes, and the algebraic
//! identity checks tying them together.

pub mod amplitudes;
pub mod error;
pub mod lax_operators;
pub mod linalg;
pub mod physics_checks;
pub mod special_functions;
pub mod spin_chain;
pub mod spin_algebra;

pub use error::{Error, Result};
