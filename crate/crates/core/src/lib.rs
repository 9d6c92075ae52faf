//! Hybrid qubit–qumode simulation of compact U(1) lattice gauge theory
//! with staggered fermions on a single plaquette, plus the lattice-level
//! Gauss-law reduction.

pub mod compactness;
pub mod error;
pub mod gates;
pub mod hybrid;
pub mod model;
pub mod numerics;
pub mod par;
pub mod solvers;

pub use error::{Error, Result};
