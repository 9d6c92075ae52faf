//! Method A: squeezed-projection preparation of states near the unit circle.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{apply_circuit, Circuit, GateKind};
use crate::hybrid::fock::{hermite_functions, Quadrature};
use crate::hybrid::layout::{HybridLayout, QumodeBasis};
use crate::hybrid::state::{BasisLabel, HybridState};
use crate::numerics::bessel::bessel_i_scaled_sequence;
use crate::numerics::linalg::C64;
use crate::numerics::quadrature::{composite_gauss_legendre, RadialDensity, RadialGrid, RadialGridSpec};

/// Amplitude weight `e^{−(Λ²/g²)(R²−1)²}`.
pub fn method_a_weight(r: f64, lambda: f64, g: f64) -> f64 {
    let u = r * r - 1.0;
    (-(lambda / g).powi(2) * u * u).exp()
}

/// Radial cutoff realised by entangler strength `s` and ancilla squeezing `r`: `Λ = (g/2) s e^r`.
pub fn lambda_from_gates(s: f64, r: f64, g: f64) -> Result<f64> {
    if !(s > 0.0 && g > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("s = {s}, r = {r}, g = {g}")));
    }
    Ok(0.5 * g * s * r.exp())
}

/// Entangler strength giving cutoff `lambda` at squeezing `r`.
pub fn strength_for_lambda(lambda: f64, r: f64, g: f64) -> Result<f64> {
    if !(lambda > 0.0 && g > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("Λ = {lambda}, r = {r}, g = {g}")));
    }
    Ok(2.0 * lambda / (g * r.exp()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParams {
    pub alpha: f64,
    pub lambda: f64,
    pub g: f64,
}

impl AnsatzParams {
    pub fn new(alpha: f64, lambda: f64, g: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("α = {alpha}")));
        }
        if !(lambda > 0.0 && lambda.is_finite() && g > 0.0) {
            return Err(Error::InvalidParameter(format!("Λ = {lambda}, g = {g}")));
        }
        Ok(Self { alpha, lambda, g })
    }

    /// Unnormalized wavefunction `e^{−(Λ²/g²)(q²−1)²} e^{αq⁰} e^{−q²/2}`.
    pub fn wavefunction(&self, q0: f64, q1: f64) -> f64 {
        let r2 = q0 * q0 + q1 * q1;
        method_a_weight(r2.sqrt(), self.lambda, self.g) * (self.alpha * q0 - 0.5 * r2).exp()
    }

    fn density(&self) -> RadialDensity {
        RadialDensity { stiffness: (self.lambda / self.g).powi(2), tilt: 2.0 * self.alpha }
    }
}

/// Circuit-path settings: Fock cutoffs and the ancilla squeezing `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitSettings {
    pub n_max: usize,
    pub ancilla_n_max: usize,
    pub squeezing: f64,
}

impl Default for CircuitSettings {
    fn default() -> Self {
        Self { n_max: 20, ancilla_n_max: 40, squeezing: 0.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnsatzPath {
    /// Two Fock modes plus an ancilla qumode, homodyne-projected.
    Circuit(CircuitSettings),
    /// Analytic amplitudes over radial slices and angular momenta.
    Direct { j_max: usize, grid: RadialGridSpec },
}

/// The ansatz on a family of radial slices.
#[derive(Clone, Debug)]
pub struct PolarAnsatz {
    pub params: AnsatzParams,
    pub j_max: usize,
    pub radii: Vec<f64>,
    /// Probability of each slice; sums to one.
    pub weights: Vec<f64>,
    /// Normalized angular state on each slice.
    pub slices: Vec<HybridState>,
}

impl PolarAnsatz {
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `Σ_R p(R) f(R, ψ_R)`.
    pub fn average(&self, f: impl Fn(f64, &HybridState) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for ((&r, &w), s) in self.radii.iter().zip(&self.weights).zip(&self.slices) {
            acc += w * f(r, s)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub enum Ansatz {
    Fock { state: HybridState, success_density: f64 },
    Polar(PolarAnsatz),
}

/// Ancilla squeezing parameter entering the squeeze gate; the `ln 2 / 2`
/// offset compensates the `1/√2` displacement so that the weight is centred on `q² = 1`.
pub fn effective_squeezing(r: f64) -> f64 {
    r - 0.5 * LN_2
}

/// Gates on slots (mode 0, mode 1, ancilla); the homodyne `⟨p=0|` on the ancilla follows.
pub fn ansatz_circuit(params: &AnsatzParams, squeezing: f64) -> Result<Circuit> {
    let s = strength_for_lambda(params.lambda, squeezing, params.g)?;
    let mut c = Circuit::new();
    c.gate(p_squeeze(effective_squeezing(squeezing)), &[2])
        .gate(GateKind::Displace(C64::new(0.0, s * FRAC_1_SQRT_2)), &[2])
        .gate(GateKind::Displace(C64::new(params.alpha * FRAC_1_SQRT_2, 0.0)), &[0])
        .gate(GateKind::Entangler(s), &[0, 2])
        .gate(GateKind::Entangler(s), &[1, 2]);
    Ok(c)
}

/// Squeeze gate reducing the `p` spread by `e^{−r}`.
fn p_squeeze(r: f64) -> GateKind {
    GateKind::Squeeze(C64::new(-r, 0.0))
}

pub fn prepare_ansatz(params: &AnsatzParams, path: &AnsatzPath) -> Result<Ansatz> {
    match path {
        AnsatzPath::Circuit(settings) => prepare_circuit(params, settings),
        AnsatzPath::Direct { j_max, grid } => Ok(Ansatz::Polar(prepare_direct(params, *j_max, grid)?)),
    }
}

fn prepare_circuit(params: &AnsatzParams, settings: &CircuitSettings) -> Result<Ansatz> {
    let layout = HybridLayout::new(
        0,
        vec![
            QumodeBasis::Fock { n_max: settings.n_max },
            QumodeBasis::Fock { n_max: settings.n_max },
            QumodeBasis::Fock { n_max: settings.ancilla_n_max },
        ],
    )?;
    let vacuum = HybridState::basis(layout, &[0, 0, 0])?;
    let (prepared, _) = apply_circuit(&vacuum, &ansatz_circuit(params, settings.squeezing)?)?;
    let (system, density) = prepared.contract(2, BasisLabel::Homodyne { quadrature: Quadrature::P, value: 0.0 })?;
    if density < 1e-12 {
        return Err(Error::ProjectionFailed { probability: density });
    }
    Ok(Ansatz::Fock { state: system.normalized()?, success_density: density })
}

/// Slices from the radial density `R e^{−2κ(R²−1)²−R²+2αR}` with per-slice
/// angular amplitudes `c_j ∝ I_|j|(αR)`.
pub fn prepare_direct(params: &AnsatzParams, j_max: usize, grid: &RadialGridSpec) -> Result<PolarAnsatz> {
    if j_max < 1 {
        return Err(Error::InvalidParameter("j_max must be >= 1".into()));
    }
    let radial = RadialGrid::new(params.density(), grid.panels.max(1), grid.order, grid.margin);
    let mut radii = Vec::with_capacity(radial.nodes.len());
    let mut weights = Vec::with_capacity(radial.nodes.len());
    let mut slices = Vec::with_capacity(radial.nodes.len());
    for (&r, &w) in radial.nodes.iter().zip(&radial.weights) {
        let scaled = bessel_i_scaled_sequence(params.alpha * r, j_max)?;
        let amps = DVector::from_fn(2 * j_max + 1, |k, _| C64::new(scaled[(k as i64 - j_max as i64).unsigned_abs() as usize], 0.0));
        let mass = amps.norm_squared();
        let layout = HybridLayout::new(0, vec![QumodeBasis::RadialSlice { radius: r, j_max }])?;
        radii.push(r);
        weights.push(w * mass);
        slices.push(HybridState::on_layout(layout, amps)?.normalized()?);
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::InvalidParameter("ansatz has no radial weight".into()));
    }
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(PolarAnsatz { params: *params, j_max, radii, weights, slices })
}

/// Fock amplitudes `⟨n₀ n₁|ψ⟩` of the analytic wavefunction by tensor Gauss–Legendre
/// quadrature; normalized on the truncated register.
pub fn analytic_fock_state(params: &AnsatzParams, n_max: usize) -> Result<HybridState> {
    let half_width = 1.0 + params.alpha + 9.0;
    let (x, w) = composite_gauss_legendre(-half_width, half_width, 24, 20);
    let h: Vec<Vec<f64>> = x.iter().map(|&xi| hermite_functions(xi, n_max)).collect();
    let d = n_max + 1;
    let mut amps = DVector::<C64>::zeros(d * d);
    for (a, (&xa, &wa)) in x.iter().zip(&w).enumerate() {
        for (b, (&xb, &wb)) in x.iter().zip(&w).enumerate() {
            let f = wa * wb * params.wavefunction(xa, xb);
            if f.abs() < 1e-300 {
                continue;
            }
            for n0 in 0..d {
                let fa = f * h[a][n0];
                for n1 in 0..d {
                    amps[n0 * d + n1] += C64::new(fa * h[b][n1], 0.0);
                }
            }
        }
    }
    let layout = HybridLayout::new(0, vec![QumodeBasis::Fock { n_max }; 2])?;
    HybridState::on_layout(layout, amps)?.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_values() {
        assert_eq!(method_a_weight(1.0, 3.0, 0.7), 1.0);
        assert!((method_a_weight(0.0, 1.0, 1.0) - (-1.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn lambda_from_gate_parameters() {
        assert!((lambda_from_gates(2.0, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((lambda_from_gates(2.0, LN_2, 1.0).unwrap() - 2.0).abs() < 1e-15);
        let s = strength_for_lambda(1.7, 0.3, 0.8).unwrap();
        assert!((lambda_from_gates(s, 0.3, 0.8).unwrap() - 1.7).abs() < 1e-14);
        assert!(lambda_from_gates(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn direct_ansatz_is_normalized_and_symmetric() {
        let p = AnsatzParams::new(0.0, 1.0, 1.0).unwrap();
        let a = prepare_direct(&p, 4, &RadialGridSpec::default()).unwrap();
        assert!((a.total_weight() - 1.0).abs() < 1e-12);
        for s in &a.slices {
            assert!((s.norm() - 1.0).abs() < 1e-12);
            let amps = s.amplitudes();
            for k in 0..9 {
                assert!((amps[k] - amps[8 - k]).norm() < 1e-15);
            }
            // α = 0 leaves only j = 0
            assert!((amps[4].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn heavy_cutoff_concentrates_on_unit_circle() {
        let p = AnsatzParams::new(0.3, 20.0, 1.0).unwrap();
        let a = prepare_direct(&p, 6, &RadialGridSpec::default()).unwrap();
        let excess = a.average(|r, _| Ok((r * r - 1.0).powi(2))).unwrap();
        // Gaussian in u = R² − 1 with variance g²/(4Λ²)
        assert!((excess / (1.0 / (4.0 * 400.0)) - 1.0).abs() < 0.05);
    }

    #[test]
    fn analytic_fock_state_of_gaussian_is_vacuum() {
        // Λ → 0 and α = 0 leave e^{−q²/2}, the two-mode vacuum
        let p = AnsatzParams::new(0.0, 1e-8, 1.0).unwrap();
        let s = analytic_fock_state(&p, 6).unwrap();
        assert!((s.amplitudes()[0].norm() - 1.0).abs() < 1e-10);
    }
    #[test]
    fn circuit_matches_analytic_state() {
        let p = AnsatzParams::new(0.5, 1.0, 1.0).unwrap();
        let Ansatz::Fock { state, .. } = prepare_ansatz(&p, &AnsatzPath::Circuit(CircuitSettings::default())).unwrap() else {
            panic!("circuit path returns a Fock state")
        };
        assert!((state.norm() - 1.0).abs() < 1e-10);
        let oracle = analytic_fock_state(&p, 20).unwrap();
        assert!(state.inner(&oracle).unwrap().norm() >= 0.999);
    }

    fn slice_cos_and_j2(a: &PolarAnsatz) -> (f64, f64) {
        let cos = a
            .average(|_, s| {
                let c = s.amplitudes();
                Ok((0..c.len() - 1).map(|k| (c[k].conj() * c[k + 1]).re).sum())
            })
            .unwrap();
        let j = a.j_max as f64;
        let j2 = a.average(|_, s| Ok(s.amplitudes().iter().enumerate().map(|(k, c)| (k as f64 - j).powi(2) * c.norm_sqr()).sum())).unwrap();
        (cos, j2)
    }

    #[test]
    fn angular_observables_saturate_in_lambda() {
        let spec = RadialGridSpec::default();
        let at = |lambda| slice_cos_and_j2(&prepare_direct(&AnsatzParams::new(0.5, lambda, 0.5).unwrap(), 12, &spec).unwrap());
        let (c8, j8) = at(8.0);
        let (c16, j16) = at(16.0);
        assert!(((c8 - c16) / c16).abs() < 1e-3, "{c8} {c16}");
        assert!(((j8 - j16) / j16).abs() < 1e-3, "{j8} {j16}");
    }

    #[test]
    fn unbiased_ansatz_has_zero_wilson_loop() {
        let p = AnsatzParams::new(0.0, 2.0, 1.0).unwrap();
        let a = prepare_direct(&p, 6, &RadialGridSpec::default()).unwrap();
        let (cos, _) = slice_cos_and_j2(&a);
        assert!(cos.abs() < 1e-15);
        let Ansatz::Fock { state, .. } =
            prepare_ansatz(&p, &AnsatzPath::Circuit(CircuitSettings { n_max: 10, ancilla_n_max: 30, squeezing: 0.0 })).unwrap()
        else {
            panic!("circuit path returns a Fock state")
        };
        let q0 = crate::hybrid::operator::embed(&crate::hybrid::fock::fock_operator(crate::hybrid::fock::FockKind::Q, 10), &[0], state.layout())
            .unwrap();
        assert!(state.expectation(&q0).unwrap().abs() < 1e-10);
    }
}
