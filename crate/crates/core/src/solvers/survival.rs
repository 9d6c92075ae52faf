//! Survival amplitude of `|V⟩ = |vvvv⟩ ⊗ |ψ₀(α = 0, Λ)⟩` summed over radial slices.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::radial::{converge_radially, RadialSlices};
use super::trotter::{TrotterPlan, TrotterStep};
use crate::error::{Error, Result};
use crate::model::jw::jw_single_plaquette;
use crate::model::plaquette::{build_plaquette_hamiltonian_in, Backend, Compactness, HamiltonianParts, PlaquetteParams, Sector};
use crate::numerics::linalg::C64;
use crate::par;

/// Largest change of any amplitude under radial-grid doubling.
pub const GRID_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurvivalResult {
    pub times: Vec<f64>,
    pub amplitudes: Vec<(f64, f64)>,
    pub probabilities: Vec<f64>,
    /// Shift of the last grid doubling.
    pub grid_shift: f64,
    pub slices: usize,
}

/// How each slice is propagated.
#[derive(Clone, Debug, PartialEq)]
pub enum Propagation {
    Trotter(TrotterPlan),
    Exact,
}

pub(crate) fn lambda_of(params: &PlaquetteParams) -> Result<f64> {
    match params.compactness {
        Compactness::MethodA { lambda } => Ok(lambda),
        _ => Err(Error::InvalidParameter("radial-slice runs need Method A compactness".into())),
    }
}

/// Neutral-sector parts on slice `R` and the local index of `|vvvv⟩ ⊗ |j = 0⟩`.
pub(crate) fn slice_parts(params: &PlaquetteParams, radius: f64) -> Result<(HamiltonianParts, usize)> {
    let parts = build_plaquette_hamiltonian_in(params, Backend::PolarSlice(radius), &Sector::ChargeZero)?;
    let d = 2 * params.cutoffs.j_max + 1;
    let full = jw_single_plaquette().vacuum_index() * d + params.cutoffs.j_max;
    let local = parts.space().local_index(full).ok_or_else(|| Error::LayoutMismatch("vacuum outside sector".into()))?;
    Ok((parts, local))
}

fn slice_amplitudes(params: &PlaquetteParams, radius: f64, times: &[f64], propagation: &Propagation) -> Result<Vec<C64>> {
    let (parts, v) = slice_parts(params, radius)?;
    let mut start = DVector::<C64>::zeros(parts.total.dim());
    start[v] = C64::new(1.0, 0.0);
    match propagation {
        Propagation::Exact => {
            let spec = parts.total.spectrum()?;
            Ok(times.iter().map(|&t| spec.exp_action(C64::new(0.0, -t), &start)[v]).collect())
        }
        Propagation::Trotter(plan) => {
            let step = TrotterStep::new(&parts, plan)?;
            let mut state = start;
            let mut done = 0;
            let mut out = Vec::with_capacity(times.len());
            for &t in times {
                let k = plan.steps_for(t)?;
                state = step.apply(&state, k - done);
                done = k;
                out.push(state[v]);
            }
            Ok(out)
        }
    }
}

fn on_slices(params: &PlaquetteParams, slices: &RadialSlices, times: &[f64], propagation: &Propagation) -> Result<Vec<C64>> {
    let per_slice = par::collect_results(par::map(&slices.radii, |&r| slice_amplitudes(params, r, times, propagation)))?;
    let mut total = vec![C64::new(0.0, 0.0); times.len()];
    for (amps, &w) in per_slice.iter().zip(&slices.weights) {
        for (acc, a) in total.iter_mut().zip(amps) {
            *acc += a * w;
        }
    }
    Ok(total)
}

/// `A(t) = ⟨V|e^{−itH}|V⟩` for each `t` in an ascending grid, with the
/// radial sum refined until doubling moves no amplitude by more than [`GRID_TOL`].
pub fn survival_amplitude(params: &PlaquetteParams, times: &[f64], propagation: &Propagation) -> Result<SurvivalResult> {
    params.validate()?;
    let lambda = lambda_of(params)?;
    if times.is_empty() || times.windows(2).any(|w| w[0] > w[1]) || times[0] < 0.0 {
        return Err(Error::InvalidParameter("time grid must be non-empty, non-negative and ascending".into()));
    }
    let flatten = |amps: &(Vec<C64>, usize)| amps.0.iter().flat_map(|a| [a.re, a.im]).collect::<Vec<_>>();
    let ((amps, slices), grid_shift) = converge_radially(
        lambda,
        params.g,
        &params.cutoffs.radial,
        GRID_TOL,
        |s| Ok((on_slices(params, s, times, propagation)?, s.len())),
        flatten,
    )?;
    Ok(SurvivalResult {
        times: times.to_vec(),
        probabilities: amps.iter().map(|a| a.norm_sqr()).collect(),
        amplitudes: amps.iter().map(|a| (a.re, a.im)).collect(),
        grid_shift,
        slices,
    })
}

/// `|⟨V|e^{−itH}|V⟩|²` of the compact model on the unit circle, by exact evolution.
pub fn survival_on_circle(params: &PlaquetteParams, times: &[f64]) -> Result<Vec<f64>> {
    params.validate()?;
    Ok(slice_amplitudes(params, 1.0, times, &Propagation::Exact)?.iter().map(|a| a.norm_sqr()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::plaquette::Cutoffs;

    fn params(lambda: f64) -> PlaquetteParams {
        PlaquetteParams::from_inverse_g2(2.0, 1.0)
            .unwrap()
            .with_compactness(Compactness::MethodA { lambda })
            .unwrap()
            .with_cutoffs(Cutoffs { j_max: 6, ..Cutoffs::default() })
            .unwrap()
    }

    #[test]
    fn starts_at_one_and_stays_bounded() {
        let times: Vec<f64> = (0..=10).map(|k| 0.2 * k as f64).collect();
        let r = survival_amplitude(&params(2.0), &times, &Propagation::Trotter(TrotterPlan::new(0.05).unwrap())).unwrap();
        assert!((r.probabilities[0] - 1.0).abs() < 1e-9);
        assert!(r.probabilities.iter().all(|&p| p <= 1.0 + 1e-9));
        assert!(r.grid_shift <= GRID_TOL);
    }

    #[test]
    fn trotter_approaches_exact_as_dt_shrinks() {
        let times = [0.0, 0.5, 1.0];
        let p = params(1.5);
        let exact = survival_amplitude(&p, &times, &Propagation::Exact).unwrap();
        let dev = |dt: f64| {
            let r = survival_amplitude(&p, &times, &Propagation::Trotter(TrotterPlan::new(dt).unwrap())).unwrap();
            (r.probabilities[2] - exact.probabilities[2]).abs()
        };
        assert!(dev(0.025) < dev(0.1));
    }

    #[test]
    fn circle_survival_is_a_probability() {
        let p = survival_on_circle(&params(1.0), &[0.0, 0.7, 3.0]).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-12);
        assert!(p.iter().all(|&x| (0.0..=1.0 + 1e-12).contains(&x)));
    }

    #[test]
    fn requires_method_a() {
        let p = PlaquetteParams::new(1.0, 1.0).unwrap();
        assert!(survival_amplitude(&p, &[0.0], &Propagation::Exact).is_err());
    }
}
