//! Enforcing the unit-circle constraint on the two gauge qumodes.

pub mod method_a;
pub mod penalty;
pub mod threshold;

pub use method_a::{
    analytic_fock_state, ansatz_circuit, lambda_from_gates, method_a_weight, prepare_ansatz, prepare_direct,
    strength_for_lambda, Ansatz, AnsatzParams, AnsatzPath, CircuitSettings, PolarAnsatz,
};
pub use penalty::penalty_operator;
pub use threshold::{
    penalty_threshold, slice_ground_energies, threshold_at, PenaltyScanCriteria, PenaltyScanGrid, ThresholdPoint,
};
