//! Exact screening of homogeneous Hamiltonian potentials for obstructions to
//! complete integrability.

pub mod error;
pub mod exactnum;

pub use error::{Error, Result};
pub mod homopot;
pub mod darboux;
pub mod spectral;
pub mod mrtable;
pub mod hypergeom;
pub mod odesolve;
pub mod verdict;
pub mod design;
