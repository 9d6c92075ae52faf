//! Hybrid gate set, circuits, decompositions and their verification.

pub mod catalog;
pub mod circuit;
pub mod decompose;
pub mod local;
pub mod spec;
pub mod verify;

pub use catalog::{run_check, standard_checks, CaseKind, GateCheck, DEFAULT_INTERIOR};
pub use circuit::{apply_circuit, gate_matrix, Circuit, CircuitOp};
pub use decompose::{
    decompose_ccd, decompose_d_entangler, decompose_d_entangler_inline, decompose_exp_j, decompose_exp_j2, decompose_exp_jj,
    decompose_zj, PauliPair,
};
pub use local::{local_gate, LocalGate};
pub use spec::{GateKind, GateSpec};
pub use verify::{verify_identity, verify_on, ExpKron, Interior, Target};
