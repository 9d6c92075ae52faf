//! Quantum imaginary-time evolution: ancilla-qubit circuits (Method A),
//! ancilla-qumode circuits (Method B) and the exact non-unitary factors (Direct).

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::radial::{converge_radially, RadialSlices};
use super::survival::{lambda_of, slice_parts};
use crate::error::{Error, Result};
use crate::hybrid::operator::kron;
use crate::hybrid::qubit::{hadamard, pauli_y};
use crate::hybrid::state::HybridState;
use crate::model::observables::observables;
use crate::model::plaquette::{Backend, HamiltonianParts, PlaquetteParams, Sector};
use crate::numerics::linalg::{HermitianSpectrum, C64};
use crate::par;

/// Smallest success probability accepted for one step.
pub const MIN_SUCCESS: f64 = 1e-300;

/// How the parts without an `ô²` form are handled in a Method B run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fallback {
    A,
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum QiteMethod {
    /// Ancilla qubit, `e^{iΔτ Ô⊗Y}`, Hadamard, project on `|0⟩`.
    A,
    /// Ancilla qumode for `2g²J²`, `e^{i2√Δτ ô⊗p}`, project on `|n = 0⟩`.
    B { fallback: Fallback, ancilla_n_max: usize },
    /// `e^{−Δτ Ô}` applied exactly.
    Direct,
}

impl QiteMethod {
    pub fn b() -> Self {
        QiteMethod::B { fallback: Fallback::Direct, ancilla_n_max: 40 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            QiteMethod::A => "A",
            QiteMethod::B { .. } => "B",
            QiteMethod::Direct => "Direct",
        }
    }
}

/// `e^{−Δτ O}`.
pub fn direct_map(o: &DMatrix<C64>, dtau: f64) -> Result<DMatrix<C64>> {
    Ok(HermitianSpectrum::of(o)?.exp_matrix(C64::new(-dtau, 0.0)))
}

/// System map of the ancilla-qubit circuit: the ancilla is appended as the
/// last factor in `|0⟩`, `e^{iΔτ O⊗Y}` and `H` act, and `⟨0|` is taken.
/// Equals `e^{−Δτ O}/√2` up to `O(Δτ²)`.
pub fn qubit_ancilla_map(o: &DMatrix<C64>, dtau: f64) -> Result<DMatrix<C64>> {
    let d = o.nrows();
    // (O⊗Y)² = O²⊗1, so e^{iΔτ O⊗Y} = cos(ΔτO)⊗1 + i sin(ΔτO)⊗Y
    let spec = HermitianSpectrum::of(o)?;
    let cos = spec.matrix_fn(|x| C64::new((dtau * x).cos(), 0.0));
    let sin = spec.matrix_fn(|x| C64::new((dtau * x).sin(), 0.0));
    let unitary = kron(&cos, &DMatrix::identity(2, 2)) + kron(&sin, &pauli_y()) * C64::new(0.0, 1.0);
    let h = hadamard();
    // ancilla |0⟩ in, H, then ⟨0| out
    Ok(DMatrix::from_fn(d, d, |r, c| h[(0, 0)] * unitary[(2 * r, 2 * c)] + h[(0, 1)] * unitary[(2 * r + 1, 2 * c)]))
}

/// Truncated `D(β)|0⟩` on `n ≤ n_max`, computed in log space.
fn coherent_column(beta: f64, n_max: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n_max + 1);
    let mut log_fact = 0.0;
    for n in 0..=n_max {
        if n > 0 {
            log_fact += (n as f64).ln();
        }
        let mag = if beta == 0.0 {
            if n == 0 { 1.0 } else { 0.0 }
        } else {
            (-0.5 * beta * beta + n as f64 * beta.abs().ln() - 0.5 * log_fact).exp()
        };
        v[n] = if beta < 0.0 && n % 2 == 1 { -mag } else { mag };
    }
    v
}

/// System map of the ancilla-qumode circuit for `O = ô²`: the ancilla starts in
/// the vacuum, `e^{i2√Δτ ô⊗p}` acts (on each eigenspace of `ô` it is the
/// displacement `D(−√(2Δτ) λ)`), and the vacuum component is kept.
pub fn qumode_ancilla_map(o_root: &DMatrix<C64>, dtau: f64, ancilla_n_max: usize) -> Result<DMatrix<C64>> {
    let spec = HermitianSpectrum::of(o_root)?;
    let d = o_root.nrows();
    let a = ancilla_n_max + 1;
    // the joint state Σ_k P_k ⊗ D(β_k)|0⟩, stored as (system × ancilla) per input column
    let mut joint = DMatrix::<C64>::zeros(d * a, d);
    for (k, &lambda) in spec.eigenvalues.iter().enumerate() {
        let beta = -(2.0 * dtau).sqrt() * lambda;
        let column = coherent_column(beta, ancilla_n_max);
        let vk = spec.eigenvectors.column(k);
        for c in 0..d {
            let coeff = vk[c].conj();
            for r in 0..d {
                let amp = vk[r] * coeff;
                for n in 0..a {
                    joint[(r * a + n, c)] += amp * column[n];
                }
            }
        }
    }
    Ok(DMatrix::from_fn(d, d, |r, c| joint[(r * a, c)]))
}

/// Effective non-unitary step on a register: the product of the four part
/// maps in the order `H_E, H_B, H_M, H_K` (leftmost first).
#[derive(Clone, Debug)]
pub struct QiteStep {
    pub dtau: f64,
    pub method: QiteMethod,
    pub matrix: DMatrix<C64>,
}

impl QiteStep {
    pub fn new(parts: &HamiltonianParts, dtau: f64, method: QiteMethod) -> Result<Self> {
        if !(dtau > 0.0 && dtau.is_finite()) {
            return Err(Error::InvalidParameter(format!("Δτ = {dtau}")));
        }
        let plain = |o: &DMatrix<C64>, m: QiteMethod| match m {
            QiteMethod::A => qubit_ancilla_map(o, dtau),
            _ => direct_map(o, dtau),
        };
        let electric = match method {
            QiteMethod::B { fallback, ancilla_n_max } => {
                let root = parts.electric_root.data();
                let rest = parts.h_e.data() - root * root;
                let rest_method = if fallback == Fallback::A { QiteMethod::A } else { QiteMethod::Direct };
                plain(&rest, rest_method)? * qumode_ancilla_map(root, dtau, ancilla_n_max)?
            }
            _ => plain(parts.h_e.data(), method)?,
        };
        let others = match method {
            QiteMethod::B { fallback: Fallback::A, .. } => QiteMethod::A,
            QiteMethod::B { .. } => QiteMethod::Direct,
            m => m,
        };
        let mut matrix = electric;
        for p in [&parts.h_b, &parts.h_m, &parts.h_k] {
            matrix *= plain(p.data(), others)?;
        }
        Ok(Self { dtau, method, matrix })
    }
}

/// One QITE step on a state: apply, renormalize, report the success probability.
pub fn qite_step(state: &HybridState, parts: &HamiltonianParts, dtau: f64, method: QiteMethod) -> Result<(HybridState, f64)> {
    state.space().ensure_same(parts.space())?;
    let step = QiteStep::new(parts, dtau, method)?;
    let out = &step.matrix * state.amplitudes();
    let p = out.norm_squared() / state.amplitudes().norm_squared();
    if !(p > MIN_SUCCESS) {
        return Err(Error::ProjectionFailed { probability: p });
    }
    Ok((HybridState::new(state.space().clone(), out)?.normalized()?, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QiteRecord {
    pub step: usize,
    /// `⟨V|H U^{2s}|V⟩ / ⟨V|U^{2s}|V⟩`.
    pub energy: f64,
    /// `⟨U^s V|H|U^s V⟩ / ⟨U^s V|U^s V⟩`.
    pub expectation: f64,
    /// `⟨U^s V|U^s V⟩` relative to `⟨V|V⟩`.
    pub norm: f64,
    /// Success probability of step `s` (1 at `s = 0`).
    pub success: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QiteRun {
    pub dtau: f64,
    pub steps: usize,
    pub method: QiteMethod,
    pub trajectory: Vec<QiteRecord>,
    pub final_energy: f64,
    /// `⟨V|U^S O U^S|V⟩ / ⟨V|U^{2S}|V⟩` for the chiral condensate.
    pub condensate: f64,
    pub slices: usize,
    pub grid_shift: f64,
}

/// Per-slice sums entering the radially combined estimates.
#[derive(Clone, Debug, Default)]
struct SliceSums {
    sandwich_h: Vec<C64>,
    sandwich_1: Vec<C64>,
    expect_h: Vec<f64>,
    norm: Vec<f64>,
    condensate: C64,
}

fn slice_sums(params: &PlaquetteParams, radius: f64, dtau: f64, steps: usize, method: QiteMethod) -> Result<SliceSums> {
    let (parts, v) = slice_parts(params, radius)?;
    let step = QiteStep::new(&parts, dtau, method)?;
    let h = parts.total.data();
    let d = h.nrows();
    let obs = observables(Backend::PolarSlice(radius), &params.cutoffs, &Sector::ChargeZero)?;
    let mut start = DVector::<C64>::zeros(d);
    start[v] = C64::new(1.0, 0.0);

    let mut sums = SliceSums::default();
    let mut phi = start.clone();
    let mut half = start.clone();
    for k in 0..=2 * steps {
        let h_phi = h * &phi;
        if k % 2 == 0 {
            sums.sandwich_h.push(h_phi[v]);
            sums.sandwich_1.push(phi[v]);
        }
        if k <= steps {
            sums.expect_h.push(phi.dotc(&h_phi).re);
            sums.norm.push(phi.norm_squared());
            if k == steps {
                half = phi.clone();
            }
        }
        phi = &step.matrix * phi;
    }
    let back = (0..steps).fold(start, |acc, _| step.matrix.adjoint() * acc);
    sums.condensate = back.dotc(&(obs.chiral_condensate.data() * &half));
    Ok(sums)
}

fn combine(slices: &RadialSlices, sums: &[SliceSums], steps: usize) -> Result<(Vec<QiteRecord>, f64)> {
    let mut records = Vec::with_capacity(steps + 1);
    let weighted = |f: &dyn Fn(&SliceSums) -> C64| -> C64 {
        sums.iter().zip(&slices.weights).map(|(s, &w)| f(s) * w).sum()
    };
    let mut previous_norm = 1.0;
    for s in 0..=steps {
        let num = weighted(&|x| x.sandwich_h[s]);
        let den = weighted(&|x| x.sandwich_1[s]);
        let norm = weighted(&|x| C64::new(x.norm[s], 0.0)).re;
        let expectation = weighted(&|x| C64::new(x.expect_h[s], 0.0)).re / norm;
        if !(norm > MIN_SUCCESS) || den.norm() == 0.0 {
            return Err(Error::ProjectionFailed { probability: norm });
        }
        records.push(QiteRecord { step: s, energy: (num / den).re, expectation, norm, success: norm / previous_norm });
        previous_norm = norm;
    }
    let condensate = weighted(&|x| x.condensate) / weighted(&|x| x.sandwich_1[steps]);
    Ok((records, condensate.re))
}

/// QITE from `|V⟩ = |vvvv⟩ ⊗ |ψ₀(α = 0, Λ)⟩` for `S` steps, with the radial
/// sum refined until the trajectory moves by at most `tol` under grid doubling.
pub fn qite_ground_with(params: &PlaquetteParams, dtau: f64, steps: usize, method: QiteMethod, tol: f64) -> Result<QiteRun> {
    params.validate()?;
    let lambda = lambda_of(params)?;
    if steps < 1 {
        return Err(Error::InvalidParameter("QITE needs at least one step".into()));
    }
    if !(dtau > 0.0) {
        return Err(Error::InvalidParameter(format!("Δτ = {dtau}")));
    }
    let eval = |slices: &RadialSlices| -> Result<(Vec<QiteRecord>, f64, usize)> {
        let sums = par::collect_results(par::map(&slices.radii, |&r| slice_sums(params, r, dtau, steps, method)))?;
        let (records, condensate) = combine(slices, &sums, steps)?;
        Ok((records, condensate, slices.len()))
    };
    let values = |x: &(Vec<QiteRecord>, f64, usize)| {
        let mut v: Vec<f64> = x.0.iter().map(|r| r.energy).collect();
        v.push(x.1);
        v
    };
    let ((trajectory, condensate, slices), grid_shift) =
        converge_radially(lambda, params.g, &params.cutoffs.radial, tol, eval, values)?;
    Ok(QiteRun {
        dtau,
        steps,
        method,
        final_energy: trajectory[steps].energy,
        trajectory,
        condensate,
        slices,
        grid_shift,
    })
}

/// `⟨ψ|e^{−2τH} H|ψ⟩ / ⟨ψ|e^{−2τH}|ψ⟩` at `τ = s·Δτ`, `s = 0..=steps`, from
/// the spectral decomposition of the full Hamiltonian.
pub fn imaginary_time_energies(state: &HybridState, parts: &HamiltonianParts, dtau: f64, steps: usize) -> Result<Vec<f64>> {
    state.space().ensure_same(parts.space())?;
    let spec = parts.total.spectrum()?;
    let e0 = spec.eigenvalues[0];
    let overlaps: Vec<f64> = (0..spec.dim()).map(|k| spec.eigenvectors.column(k).dotc(state.amplitudes()).norm_sqr()).collect();
    Ok((0..=steps)
        .map(|s| {
            let tau = s as f64 * dtau;
            let (num, den) = spec.eigenvalues.iter().zip(&overlaps).fold((0.0, 0.0), |(n, d), (&e, &c)| {
                let w = c * (-2.0 * tau * (e - e0)).exp();
                (n + w * e, d + w)
            });
            num / den
        })
        .collect())
}

/// Radial tolerance used by [`qite_ground`] and [`condensate_vev`].
pub const QITE_GRID_TOL: f64 = 1e-6;

pub fn qite_ground(params: &PlaquetteParams, dtau: f64, steps: usize, method: QiteMethod) -> Result<QiteRun> {
    qite_ground_with(params, dtau, steps, method, QITE_GRID_TOL)
}

/// Chiral condensate on the Direct QITE state after `S` steps.
pub fn condensate_vev(params: &PlaquetteParams, dtau: f64, steps: usize) -> Result<f64> {
    Ok(qite_ground(params, dtau, steps, QiteMethod::Direct)?.condensate)
}
