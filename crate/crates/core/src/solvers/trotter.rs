//! First-order (Lie–Trotter) real-time evolution in the fixed part order
//! `H_E, H_B, H_M, H_K`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hybrid::state::HybridState;
use crate::model::plaquette::HamiltonianParts;
use crate::numerics::linalg::{HermitianSpectrum, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrotterPart {
    Electric,
    Magnetic,
    Mass,
    Kinetic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrotterPlan {
    pub dt: f64,
    /// Order in which the factors act; the first entry is the leftmost factor.
    pub part_sequence: [TrotterPart; 4],
}

impl TrotterPlan {
    pub fn new(dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!("dt = {dt}")));
        }
        use TrotterPart::*;
        Ok(Self { dt, part_sequence: [Electric, Magnetic, Mass, Kinetic] })
    }

    /// Number of steps `k` with `t = k·dt`.
    pub fn steps_for(&self, t: f64) -> Result<usize> {
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!("t = {t}")));
        }
        let k = (t / self.dt).round();
        if (k * self.dt - t).abs() > 1e-9 * t.max(1.0) {
            return Err(Error::InvalidParameter(format!("t = {t} is not a multiple of dt = {}", self.dt)));
        }
        Ok(k as usize)
    }
}

fn part<'a>(parts: &'a HamiltonianParts, which: TrotterPart) -> &'a DMatrix<C64> {
    match which {
        TrotterPart::Electric => parts.h_e.data(),
        TrotterPart::Magnetic => parts.h_b.data(),
        TrotterPart::Mass => parts.h_m.data(),
        TrotterPart::Kinetic => parts.h_k.data(),
    }
}

/// The factors `e^{−i dt H_E}, e^{−i dt H_B}, e^{−i dt H_M}, e^{−i dt H_K}`;
/// the rightmost factor acts first.
#[derive(Clone, Debug)]
pub struct TrotterStep {
    pub dt: f64,
    pub factors: Vec<DMatrix<C64>>,
}

impl TrotterStep {
    pub fn new(parts: &HamiltonianParts, plan: &TrotterPlan) -> Result<Self> {
        let scale = C64::new(0.0, -plan.dt);
        let factors = plan
            .part_sequence
            .iter()
            .map(|&p| Ok(HermitianSpectrum::of(part(parts, p))?.exp_matrix(scale)))
            .collect::<Result<_>>()?;
        Ok(Self { dt: plan.dt, factors })
    }

    pub fn apply(&self, v: &DVector<C64>, steps: usize) -> DVector<C64> {
        (0..steps).fold(v.clone(), |acc, _| self.factors.iter().rev().fold(acc, |w, f| f * w))
    }
}

/// `k` Trotter steps of size `dt` with `t = k·dt`.
pub fn trotter_evolve(state: &HybridState, parts: &HamiltonianParts, t: f64, plan: &TrotterPlan) -> Result<HybridState> {
    state.space().ensure_same(parts.space())?;
    let steps = plan.steps_for(t)?;
    let step = TrotterStep::new(parts, plan)?;
    HybridState::new(state.space().clone(), step.apply(state.amplitudes(), steps))
}

/// `e^{−itH}` applied through the spectral decomposition of the total Hamiltonian.
pub fn exact_evolve(state: &HybridState, parts: &HamiltonianParts, t: f64) -> Result<HybridState> {
    state.space().ensure_same(parts.space())?;
    let spec = parts.total.spectrum()?;
    HybridState::new(state.space().clone(), spec.exp_action(C64::new(0.0, -t), state.amplitudes()))
}
