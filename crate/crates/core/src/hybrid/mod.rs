//! Hybrid qubit–qumode registers: layouts, states, operators and the
//! Fock and polar (angular-momentum) qumode backends.

pub mod fock;
pub mod layout;
pub mod operator;
pub mod polar;
pub mod qubit;
pub mod state;

pub use fock::{fock_operator, two_mode_J, FockKind, Quadrature, QuadratureGrid};
pub use layout::{HybridLayout, QumodeBasis, SlotKind, Space};
pub use operator::{embed, kron, OperatorMatrix};
pub use polar::{polar_link_operators, PolarLinkOperators};
pub use state::{label_vector, BasisLabel, HybridState};
