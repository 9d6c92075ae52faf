//! Exact diagonalization of the single plaquette in the neutral sector.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hybrid::state::HybridState;
use crate::model::observables::{observables_on, Observables};
use crate::model::plaquette::{
    assemble_parts, Backend, Cutoffs, HamiltonianParts, PlaquetteParams, PlaquetteRegister, Sector,
};

/// Largest ground-energy shift tolerated when the angular cutoff is doubled.
pub const CUTOFF_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    pub state: HybridState,
    /// Ground-energy change under `j_max → 2 j_max` (zero for the Fock backend).
    pub cutoff_shift: f64,
    pub register: PlaquetteRegister,
}

impl GroundState {
    pub fn observables(&self) -> Result<Observables> {
        observables_on(&self.register)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundSummary {
    pub energy: f64,
    pub wilson_loop: f64,
    pub chiral_condensate: f64,
    pub radius_sq: f64,
}

fn lowest(params: &PlaquetteParams, backend: Backend) -> Result<(f64, HybridState, PlaquetteRegister, HamiltonianParts)> {
    let reg = PlaquetteRegister::new(backend, &params.cutoffs, &Sector::ChargeZero)?;
    let parts = assemble_parts(params, &reg)?;
    let (e, v) = parts.total.spectrum()?.ground();
    Ok((e, HybridState::new(reg.space.clone(), v)?, reg, parts))
}

/// Lowest eigenpair of the full Hamiltonian, restricted to zero total charge
/// (the Hamiltonian conserves it and the ground state is neutral).
///
/// On a radial slice the angular cutoff is doubled once and the result is
/// rejected if the energy moves by more than [`CUTOFF_TOL`].
pub fn exact_ground(params: &PlaquetteParams, backend: Backend) -> Result<GroundState> {
    params.validate()?;
    let (energy, state, register, _) = lowest(params, backend)?;
    let cutoff_shift = match backend {
        Backend::Fock => 0.0,
        Backend::PolarSlice(_) => {
            let doubled = params.with_cutoffs(Cutoffs { j_max: 2 * params.cutoffs.j_max, ..params.cutoffs })?;
            let (e2, ..) = lowest(&doubled, backend)?;
            (e2 - energy).abs()
        }
    };
    if cutoff_shift > CUTOFF_TOL {
        return Err(Error::TruncationInsufficient { what: "exact_ground", shift: cutoff_shift });
    }
    Ok(GroundState { energy, state, cutoff_shift, register })
}

/// Energy and standard expectation values of the exact ground state.
pub fn ground_summary(params: &PlaquetteParams, backend: Backend) -> Result<GroundSummary> {
    let ground = exact_ground(params, backend)?;
    let obs = ground.observables()?;
    Ok(GroundSummary {
        energy: ground.energy,
        wilson_loop: ground.state.expectation(&obs.wilson_loop)?,
        chiral_condensate: ground.state.expectation(&obs.chiral_condensate)?,
        radius_sq: ground.state.expectation(&obs.radius_sq)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::plaquette::Compactness;
    use crate::model::spectra::{perturbative_ground_energy, pure_gauge_energy};

    fn polar(g_inv_sq: f64, m0: f64) -> PlaquetteParams {
        PlaquetteParams::from_inverse_g2(g_inv_sq, m0).unwrap()
    }

    #[test]
    fn reference_energies_on_unit_circle() {
        for (gi, e) in [(0.2, -2.9795), (1.0, -2.4964), (2.0, -2.3555), (5.0, -2.3213), (10.0, -2.3118)] {
            let ground = exact_ground(&polar(gi, 1.5), Backend::PolarSlice(1.0)).unwrap();
            assert!((ground.energy - e).abs() < 1e-4, "g⁻²={gi}: {}", ground.energy);
            assert!(ground.cutoff_shift <= CUTOFF_TOL);
        }
    }

    #[test]
    fn heavy_fermions_leave_pure_gauge_ground_state() {
        // static vacuum fermions contribute −2m0; the gauge part is the Mathieu level
        let g = 1.0;
        let m0 = 200.0;
        let ground = exact_ground(&PlaquetteParams::new(g, m0).unwrap(), Backend::PolarSlice(1.0)).unwrap();
        let expected = -2.0 * m0 + pure_gauge_energy(0, g).unwrap();
        assert!((ground.energy - expected).abs() < 5e-3);
    }

    #[test]
    fn perturbation_theory_improves_with_mass() {
        let gap = |m0: f64| {
            let e = exact_ground(&PlaquetteParams::new(1.0, m0).unwrap(), Backend::PolarSlice(1.0)).unwrap().energy;
            (e - perturbative_ground_energy(1.0, m0).unwrap()).abs()
        };
        assert!(gap(1.5) < gap(1.0));
    }

    #[test]
    fn insufficient_cutoff_is_flagged() {
        let p = polar(0.05, 1.5).with_cutoffs(Cutoffs { j_max: 1, ..Cutoffs::default() }).unwrap();
        assert!(matches!(exact_ground(&p, Backend::PolarSlice(1.0)), Err(Error::TruncationInsufficient { .. })));
    }

    #[test]
    fn strong_penalty_pulls_fock_radius_towards_one() {
        let radius_sq = |mu: f64| {
            let p = polar(1.0, 1.5)
                .with_compactness(Compactness::MethodB { mu })
                .unwrap()
                .with_cutoffs(Cutoffs { n_max: 12, ..Cutoffs::default() })
                .unwrap();
            ground_summary(&p, Backend::Fock).unwrap().radius_sq
        };
        let (weak, strong) = (radius_sq(5.0), radius_sq(40.0));
        assert!((strong - 1.0).abs() < (weak - 1.0).abs());
        assert!((strong - 1.0).abs() < 0.06, "⟨q²⟩ = {strong}");
    }
}
