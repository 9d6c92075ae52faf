//! Method B threshold: the smallest penalty strength that pins the radial
//! coordinate of the ground state to the unit circle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::plaquette::{build_plaquette_hamiltonian_in, Backend, Cutoffs, PlaquetteParams, Sector};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PenaltyScanCriteria {
    /// Relative tolerance on the ground energy against its `R = 1` value.
    pub energy_tol: f64,
    /// Relative tolerance on the minimizing radius against 1.
    pub radius_tol: f64,
}

impl Default for PenaltyScanCriteria {
    fn default() -> Self {
        Self { energy_tol: 0.01, radius_tol: 0.05 }
    }
}

impl PenaltyScanCriteria {
    pub fn new(energy_tol: f64, radius_tol: f64) -> Result<Self> {
        let c = Self { energy_tol, radius_tol };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let open = |x: f64| x > 0.0 && x < 1.0;
        if !(open(self.energy_tol) && open(self.radius_tol)) {
            return Err(Error::InvalidParameter(format!(
                "scan tolerances ({}, {}) must lie in (0, 1)",
                self.energy_tol, self.radius_tol
            )));
        }
        Ok(())
    }
}

/// Penalty strengths and radial slices to scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PenaltyScanGrid {
    pub mu: Vec<f64>,
    pub radii: Vec<f64>,
    pub j_max: usize,
}

impl Default for PenaltyScanGrid {
    /// μ ∈ {0, 0.1, …, 3.0}; R ∈ [0.2, 2.0] in 181 points.
    fn default() -> Self {
        Self {
            mu: (0..=30).map(|k| k as f64 / 10.0).collect(),
            radii: (0..181).map(|k| 0.2 + k as f64 * 0.01).collect(),
            j_max: Cutoffs::default().j_max,
        }
    }
}

impl PenaltyScanGrid {
    fn validate(&self) -> Result<()> {
        if self.mu.is_empty() || self.radii.is_empty() {
            return Err(Error::InvalidParameter("empty penalty scan grid".into()));
        }
        if self.mu.iter().any(|&m| !(m >= 0.0)) || self.radii.iter().any(|&r| !(r > 0.0)) {
            return Err(Error::InvalidParameter("penalty grid needs μ ≥ 0 and R > 0".into()));
        }
        if self.mu.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("μ grid must be increasing".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPoint {
    pub g_inv_sq: f64,
    /// `None` when no scanned μ meets the criteria.
    pub mu_star: Option<f64>,
    pub e0_at_mu_star: Option<f64>,
    pub r_star: Option<f64>,
    /// Ground energy on the unit circle, the reference value.
    pub e0_physical: f64,
    /// Whether every μ above `mu_star` on the grid also meets the criteria.
    pub monotone: bool,
}

/// Neutral-sector ground energy on each radial slice, without penalty.
pub fn slice_ground_energies(g: f64, m0: f64, radii: &[f64], j_max: usize) -> Result<Vec<f64>> {
    let params = PlaquetteParams::new(g, m0)?.with_cutoffs(Cutoffs { j_max, ..Cutoffs::default() })?;
    let energies = par::map(radii, |&r| -> Result<f64> {
        let parts = build_plaquette_hamiltonian_in(&params, Backend::PolarSlice(r), &Sector::ChargeZero)?;
        Ok(parts.total.spectrum()?.eigenvalues[0])
    });
    par::collect_results(energies)
}

/// Minimizer over the radial grid of `E₀(R) + (μ/2)(R² − 1)²`.
fn penalized_minimum(radii: &[f64], energies: &[f64], mu: f64) -> (f64, f64) {
    radii.iter().zip(energies).fold((f64::NAN, f64::INFINITY), |best, (&r, &e)| {
        let u = r * r - 1.0;
        let total = e + 0.5 * mu * u * u;
        if total < best.1 {
            (r, total)
        } else {
            best
        }
    })
}

/// Threshold for one coupling.
pub fn threshold_at(g_inv_sq: f64, m0: f64, criteria: &PenaltyScanCriteria, grid: &PenaltyScanGrid) -> Result<ThresholdPoint> {
    criteria.validate()?;
    grid.validate()?;
    if !(g_inv_sq > 0.0) {
        return Err(Error::InvalidParameter(format!("g⁻² = {g_inv_sq}")));
    }
    let g = g_inv_sq.powf(-0.5);
    let energies = slice_ground_energies(g, m0, &grid.radii, grid.j_max)?;
    let e_ref = slice_ground_energies(g, m0, &[1.0], grid.j_max)?[0];
    let accepted: Vec<(bool, f64, f64)> = grid
        .mu
        .iter()
        .map(|&mu| {
            let (r, e) = penalized_minimum(&grid.radii, &energies, mu);
            let ok = (r - 1.0).abs() <= criteria.radius_tol && (e - e_ref).abs() <= criteria.energy_tol * e_ref.abs();
            (ok, r, e)
        })
        .collect();
    let first = accepted.iter().position(|a| a.0);
    Ok(ThresholdPoint {
        g_inv_sq,
        mu_star: first.map(|k| grid.mu[k]),
        e0_at_mu_star: first.map(|k| accepted[k].2),
        r_star: first.map(|k| accepted[k].1),
        e0_physical: e_ref,
        monotone: first.is_some_and(|k| accepted[k..].iter().all(|a| a.0)),
    })
}

/// Threshold μ* for each `g⁻²`, in input order.
pub fn penalty_threshold(
    g_inv_sq: &[f64],
    m0: f64,
    criteria: &PenaltyScanCriteria,
    grid: &PenaltyScanGrid,
) -> Result<Vec<ThresholdPoint>> {
    par::collect_results(par::map(g_inv_sq, |&x| threshold_at(x, m0, criteria, grid)))
}
