//! Single-plaquette Hamiltonian on four qubits and a gauge register.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::jw::{jw_single_plaquette, FermionSector, JwTable};
use crate::compactness::penalty_operator;
use crate::error::{Error, Result};
use crate::hybrid::fock::{fock_matrix, two_mode_j_matrix, FockKind};
use crate::hybrid::layout::{HybridLayout, QumodeBasis, Space};
use crate::hybrid::operator::{kron, OperatorMatrix};
use crate::hybrid::polar::{j_matrix, shift_matrix};
use crate::numerics::linalg::C64;
use crate::numerics::quadrature::RadialGridSpec;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Compactness {
    /// Squeezed-projection weight with radial cutoff Λ.
    MethodA { lambda: f64 },
    /// Penalty `(μ/2)(q²−1)²` added to the magnetic part.
    MethodB { mu: f64 },
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cutoffs {
    pub n_max: usize,
    pub j_max: usize,
    #[serde(skip, default)]
    pub radial: RadialGridSpec,
}

impl Default for Cutoffs {
    fn default() -> Self {
        Self { n_max: 8, j_max: 16, radial: RadialGridSpec::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaquetteParams {
    pub g: f64,
    pub m0: f64,
    pub compactness: Compactness,
    pub cutoffs: Cutoffs,
}

impl PlaquetteParams {
    pub fn new(g: f64, m0: f64) -> Result<Self> {
        let p = Self { g, m0, compactness: Compactness::None, cutoffs: Cutoffs::default() };
        p.validate()?;
        Ok(p)
    }

    /// Coupling from `g⁻²`, the variable used in scans.
    pub fn from_inverse_g2(g_inv_sq: f64, m0: f64) -> Result<Self> {
        if !(g_inv_sq > 0.0) {
            return Err(Error::InvalidParameter(format!("g⁻² = {g_inv_sq}")));
        }
        Self::new(g_inv_sq.powf(-0.5), m0)
    }

    pub fn with_compactness(mut self, compactness: Compactness) -> Result<Self> {
        self.compactness = compactness;
        self.validate()?;
        Ok(self)
    }

    pub fn with_cutoffs(mut self, cutoffs: Cutoffs) -> Result<Self> {
        self.cutoffs = cutoffs;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g > 0.0 && self.g.is_finite()) {
            return Err(Error::InvalidParameter(format!("coupling g = {}", self.g)));
        }
        if !(self.m0 >= 0.0 && self.m0.is_finite()) {
            return Err(Error::InvalidParameter(format!("mass m0 = {}", self.m0)));
        }
        match self.compactness {
            Compactness::MethodA { lambda } if !(lambda > 0.0 && lambda.is_finite()) => {
                return Err(Error::InvalidParameter(format!("Λ = {lambda}")))
            }
            Compactness::MethodB { mu } if !(mu >= 0.0 && mu.is_finite()) => {
                return Err(Error::InvalidParameter(format!("μ = {mu}")))
            }
            _ => {}
        }
        if self.cutoffs.n_max < 2 || self.cutoffs.j_max < 1 {
            return Err(Error::InvalidParameter("cutoffs need n_max >= 2 and j_max >= 1".into()));
        }
        Ok(())
    }
}

/// Gauge register: two Fock qumodes, or one angular qumode at fixed radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Backend {
    Fock,
    PolarSlice(f64),
}

/// Which fermion register states are kept.
#[derive(Clone, Debug, PartialEq)]
pub enum Sector {
    Full,
    ChargeZero,
    /// Explicit register indices (ascending after construction).
    States(Vec<usize>),
}

pub fn gauge_layout(backend: Backend, cutoffs: &Cutoffs) -> Result<HybridLayout> {
    match backend {
        Backend::Fock => HybridLayout::new(0, vec![QumodeBasis::Fock { n_max: cutoffs.n_max }; 2]),
        Backend::PolarSlice(radius) => HybridLayout::new(0, vec![QumodeBasis::RadialSlice { radius, j_max: cutoffs.j_max }]),
    }
}

pub fn plaquette_layout(backend: Backend, cutoffs: &Cutoffs) -> Result<HybridLayout> {
    HybridLayout::new(4, gauge_layout(backend, cutoffs)?.qumodes().to_vec())
}

/// Raw gauge-register matrices shared by the Hamiltonian and the observables.
#[derive(Clone, Debug)]
pub struct GaugeOperators {
    pub dim: usize,
    pub j: DMatrix<C64>,
    /// `U = q⁰ + iq¹`, or `R e^{iχ}` on a radial slice.
    pub u: DMatrix<C64>,
    /// `q⁰`, or `R cos χ`.
    pub q0: DMatrix<C64>,
    /// `(q⁰)² + (q¹)²`, or `R²`.
    pub radius_sq: DMatrix<C64>,
    /// `(q² − 1)²`, or `(R² − 1)²`.
    pub constraint_sq: DMatrix<C64>,
}

impl GaugeOperators {
    pub fn new(backend: Backend, cutoffs: &Cutoffs) -> Result<Self> {
        match backend {
            Backend::Fock => {
                let n = cutoffs.n_max;
                let d = n + 1;
                let id = DMatrix::<C64>::identity(d, d);
                let q = fock_matrix(FockKind::Q, n);
                let q0 = kron(&q, &id);
                let q1 = kron(&id, &q);
                let u = &q0 + &q1 * C64::new(0.0, 1.0);
                // polynomials in q are formed at a padded cutoff and then truncated,
                // so the top Fock level carries the true matrix elements
                let pad = n + 4;
                let qp = fock_matrix(FockKind::Q, pad);
                let idp = DMatrix::<C64>::identity(pad + 1, pad + 1);
                let r2p = kron(&(&qp * &qp), &idp) + kron(&idp, &(&qp * &qp));
                let excess = &r2p - DMatrix::<C64>::identity((pad + 1) * (pad + 1), (pad + 1) * (pad + 1));
                let truncate = |m: &DMatrix<C64>| {
                    DMatrix::from_fn(d * d, d * d, |r, c| m[((r / d) * (pad + 1) + r % d, (c / d) * (pad + 1) + c % d)])
                };
                let radius_sq = truncate(&r2p);
                let constraint_sq = truncate(&(&excess * &excess));
                Ok(Self { dim: d * d, j: two_mode_j_matrix(n), u, q0, radius_sq, constraint_sq })
            }
            Backend::PolarSlice(radius) => {
                if !(radius > 0.0) {
                    return Err(Error::InvalidParameter(format!("radial slice R = {radius}")));
                }
                let d = 2 * cutoffs.j_max + 1;
                let u = shift_matrix(cutoffs.j_max) * C64::new(radius, 0.0);
                let q0 = (&u + u.adjoint()) * C64::new(0.5, 0.0);
                let radius_sq = DMatrix::identity(d, d) * C64::new(radius * radius, 0.0);
                let constraint_sq = DMatrix::identity(d, d) * C64::new((radius * radius - 1.0).powi(2), 0.0);
                Ok(Self { dim: d, j: j_matrix(cutoffs.j_max), u, q0, radius_sq, constraint_sq })
            }
        }
    }

    pub fn identity(&self) -> DMatrix<C64> {
        DMatrix::identity(self.dim, self.dim)
    }
}

/// Fermion register ⊗ gauge register, optionally compressed to a set of
/// fermion states. Every operator here is `Σ A_f ⊗ B_g` with the fermion
/// factor compressed first.
#[derive(Clone, Debug)]
pub struct PlaquetteRegister {
    pub backend: Backend,
    pub space: Space,
    pub fermion_states: Vec<usize>,
    pub jw: JwTable,
    pub gauge: GaugeOperators,
}

impl PlaquetteRegister {
    pub fn new(backend: Backend, cutoffs: &Cutoffs, sector: &Sector) -> Result<Self> {
        let layout = plaquette_layout(backend, cutoffs)?;
        let mut fermion_states = match sector {
            Sector::Full => (0..16).collect(),
            Sector::ChargeZero => FermionSector::single_plaquette().charge_zero_indices,
            Sector::States(s) => s.clone(),
        };
        fermion_states.sort_unstable();
        fermion_states.dedup();
        if fermion_states.is_empty() || fermion_states.iter().any(|&s| s >= 16) {
            return Err(Error::InvalidParameter(format!("fermion states {fermion_states:?}")));
        }
        let space = if fermion_states.len() == 16 {
            Space::full(layout)
        } else {
            Space::qubit_sector(layout, &fermion_states)?
        };
        Ok(Self { backend, space, fermion_states, jw: jw_single_plaquette(), gauge: GaugeOperators::new(backend, cutoffs)? })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn compress(&self, fermion: &DMatrix<C64>) -> DMatrix<C64> {
        let s = &self.fermion_states;
        DMatrix::from_fn(s.len(), s.len(), |r, c| fermion[(s[r], s[c])])
    }

    /// `Σ_k A_k ⊗ B_k` on the register's space.
    pub fn assemble(&self, terms: &[(&DMatrix<C64>, &DMatrix<C64>)]) -> DMatrix<C64> {
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        for (f, g) in terms {
            out += kron(&self.compress(f), g);
        }
        out
    }

    pub fn hermitian(&self, terms: &[(&DMatrix<C64>, &DMatrix<C64>)]) -> Result<OperatorMatrix> {
        OperatorMatrix::hermitian(self.space.clone(), self.assemble(terms))
    }

    pub fn general(&self, terms: &[(&DMatrix<C64>, &DMatrix<C64>)]) -> Result<OperatorMatrix> {
        OperatorMatrix::new(self.space.clone(), self.assemble(terms))
    }

    pub fn fermion_identity(&self) -> DMatrix<C64> {
        DMatrix::identity(16, 16)
    }

    /// `𝒜 = Q₁ + 2Q₂ − Q₃`, the coefficient of the linear electric term.
    pub fn flux_charge(&self) -> DMatrix<C64> {
        let q = &self.jw.charges;
        &q[0] + &q[1] * C64::new(2.0, 0.0) - &q[2]
    }

    /// Shifts `c_i` with `H_E = (g²/2) Σ (J − c_i)²`.
    pub fn electric_shifts(&self) -> [DMatrix<C64>; 4] {
        let q = &self.jw.charges;
        [DMatrix::zeros(16, 16), q[1].clone(), -&q[2], &q[0] + &q[1]]
    }
}

/// The four Hamiltonian parts on a shared space.
#[derive(Clone, Debug)]
pub struct HamiltonianParts {
    pub h_e: OperatorMatrix,
    pub h_b: OperatorMatrix,
    pub h_m: OperatorMatrix,
    pub h_k: OperatorMatrix,
    pub total: OperatorMatrix,
    /// `√2 g J`, whose square is the `2g²J²` piece of `h_e`.
    pub electric_root: OperatorMatrix,
}

impl HamiltonianParts {
    /// Parts in the fixed Trotter order (E, B, M, K).
    pub fn ordered(&self) -> [&OperatorMatrix; 4] {
        [&self.h_e, &self.h_b, &self.h_m, &self.h_k]
    }

    pub fn space(&self) -> &Space {
        self.total.space()
    }
}

pub fn build_plaquette_hamiltonian(params: &PlaquetteParams, backend: Backend) -> Result<HamiltonianParts> {
    build_plaquette_hamiltonian_in(params, backend, &Sector::Full)
}

pub fn build_plaquette_hamiltonian_in(
    params: &PlaquetteParams,
    backend: Backend,
    sector: &Sector,
) -> Result<HamiltonianParts> {
    params.validate()?;
    let reg = PlaquetteRegister::new(backend, &params.cutoffs, sector)?;
    assemble_parts(params, &reg)
}

pub fn assemble_parts(params: &PlaquetteParams, reg: &PlaquetteRegister) -> Result<HamiltonianParts> {
    let (g, m0) = (params.g, params.m0);
    let g2 = g * g;
    let c = |x: f64| C64::new(x, 0.0);
    let gauge = &reg.gauge;
    let id_f = reg.fermion_identity();
    let id_g = gauge.identity();

    // (g²/2) Σ (J − c_i)² = 2g² J² − g² 𝒜 J + (g²/2) Σ c_i²
    let j2 = &gauge.j * &gauge.j * c(2.0 * g2);
    let flux = reg.flux_charge() * c(-g2);
    let shift_sq = reg.electric_shifts().iter().fold(DMatrix::zeros(16, 16), |acc, s| acc + s * s) * c(0.5 * g2);
    let h_e = reg.hermitian(&[(&id_f, &j2), (&flux, &gauge.j), (&shift_sq, &id_g)])?;

    // (1/2g²)[(q⁰−1)² + (q¹)²] = (1/2g²)(q² + 1 − 2q⁰)
    let mut magnetic = (&gauge.radius_sq + &id_g - &gauge.q0 * c(2.0)) * c(0.5 / g2);
    if let Compactness::MethodB { mu } = params.compactness {
        magnetic += penalty_operator(mu, reg.backend, &params.cutoffs)?.data();
    }
    let h_b = reg.hermitian(&[(&id_f, &magnetic)])?;

    let jw = &reg.jw;
    let mass = (0..4).fold(DMatrix::zeros(16, 16), |acc, k| {
        acc + &jw.numbers[k] * c(if k % 2 == 0 { m0 } else { -m0 })
    });
    let h_m = reg.hermitian(&[(&mass, &id_g)])?;

    // ½(Ψ₁†Ψ₂ + Ψ₁†Ψ₄ + Ψ₂U†Ψ₃† + Ψ₄Ψ₃†) + h.c.
    let (a, cr) = (&jw.annihilators, &jw.creators);
    let half = c(0.5);
    let local = (&cr[0] * &a[1] + &cr[0] * &a[3] + &a[3] * &cr[2]) * half;
    let link = &a[1] * &cr[2] * half;
    let u_dag = gauge.u.adjoint();
    let local_h = local.adjoint();
    let link_h = link.adjoint();
    let h_k = reg.hermitian(&[(&local, &id_g), (&local_h, &id_g), (&link, &u_dag), (&link_h, &gauge.u)])?;

    let total = OperatorMatrix::sum([&h_e, &h_b, &h_m, &h_k])?;
    let root = &gauge.j * c(std::f64::consts::SQRT_2 * g);
    let electric_root = reg.hermitian(&[(&id_f, &root)])?;
    Ok(HamiltonianParts { h_e, h_b, h_m, h_k, total, electric_root })
}
