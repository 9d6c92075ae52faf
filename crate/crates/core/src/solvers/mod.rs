//! Exact diagonalization, variational estimates, real-time evolution and
//! imaginary-time evolution for the single plaquette.

pub mod exact;
pub mod qite;
pub mod radial;
pub mod record;
pub mod survival;
pub mod trotter;
pub mod variational;

pub use exact::{exact_ground, ground_summary, GroundState, GroundSummary};
pub use qite::{
    condensate_vev, direct_map, imaginary_time_energies, qite_ground, qite_ground_with, qite_step, qubit_ancilla_map,
    qumode_ancilla_map, Fallback, QiteMethod, QiteRecord, QiteRun, QiteStep,
};
pub use radial::{converge_radially, RadialSlices};
pub use record::RunRecord;
pub use survival::{survival_amplitude, survival_on_circle, Propagation, SurvivalResult};
pub use trotter::{exact_evolve, trotter_evolve, TrotterPart, TrotterPlan, TrotterStep};
pub use variational::{
    constraint_violation, variational_e0, variational_e1, variational_point, wilson_vev, VariationalPoint,
};
