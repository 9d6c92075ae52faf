//! Lattice model: Jordan–Wigner map, single-plaquette Hamiltonian, Gauss-law
//! reduction of the square lattice, analytic spectra and observables.

pub mod checks;
pub mod jw;
pub mod lattice;
pub mod observables;
pub mod plaquette;
pub mod spectra;

pub use checks::{car_defect, charge_commutator_defect, gauge_covariance_defect, radius_conservation_defect};
pub use jw::{jordan_wigner, jw_single_plaquette, neutral_states, FermionSector, JwTable};
pub use lattice::{
    gap_formula, gauss_reduce, gauss_reduce_with, lattice_hopping_terms, normal_mode_frequencies, serpentine_order,
    EliminationOrder, LatticeReduction, Link, NormalModes,
};
pub use observables::{observables, observables_on, Observables};
pub use plaquette::{
    build_plaquette_hamiltonian, build_plaquette_hamiltonian_in, Backend, Compactness, Cutoffs, HamiltonianParts,
    PlaquetteParams, PlaquetteRegister, Sector,
};
pub use spectra::{
    perturbative_ground_energy, pure_gauge_ed, pure_gauge_energy, static_fermion_energies, static_fermion_energies_ed,
};
