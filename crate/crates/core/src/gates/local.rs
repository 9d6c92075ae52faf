//! Gate matrices on the target slots only, and a shared cache of them.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, DVector};

use super::spec::{Arity, GateKind, GateSpec};
use crate::error::{Error, Result};
use crate::hybrid::fock::{fock_matrix, FockKind, Quadrature, QuadratureGrid};
use crate::hybrid::layout::{HybridLayout, QumodeBasis, SlotKind};
use crate::hybrid::operator::{local_offsets, rest_bases};
use crate::hybrid::qubit::{hadamard, pauli_x, pauli_y, pauli_z, phase_s};
use crate::numerics::linalg::{HermitianSpectrum, C64};

const I: C64 = C64::new(0.0, 1.0);

/// A gate restricted to its target slots.
#[derive(Clone, Debug)]
pub enum LocalGate {
    /// Matrix over the targets in target order.
    Dense(DMatrix<C64>),
    /// `e^{−is q_μ² q_a}` applied in the padded quadrature eigenbases of both modes.
    Entangler { mu: QuadratureGrid, a: QuadratureGrid, s: f64 },
}

impl LocalGate {
    /// Builds the local gate for `spec` given the bases of its target slots.
    pub fn build(kind: &GateKind, targets: &[TargetBasis]) -> Result<Self> {
        check_targets(kind, targets)?;
        let n = |k: usize| targets[k].n_max();
        use GateKind::*;
        let m = match *kind {
            PauliX => pauli_x(),
            PauliY => pauli_y(),
            PauliZ => pauli_z(),
            Hadamard => hadamard(),
            PhaseS => phase_s(),
            PhaseSdg => phase_s().adjoint(),
            Rx(t) => pauli_rotation(&pauli_x(), t),
            Ry(t) => pauli_rotation(&pauli_y(), t),
            Rz(t) => pauli_rotation(&pauli_z(), t),
            Cnot => cnot(),
            Rotation(t) => diagonal(n(0) + 1, |k| t * k as f64),
            Fourier => diagonal(n(0) + 1, |k| FRAC_PI_2 * k as f64),
            Kerr(kappa) => diagonal(n(0) + 1, |k| kappa * (k * k) as f64),
            CrossKerr(kappa) => {
                let d1 = n(1) + 1;
                diagonal((n(0) + 1) * d1, |k| kappa * ((k / d1) * (k % d1)) as f64)
            }
            CondRotation(t) => {
                let d = n(1) + 1;
                diagonal(2 * d, |k| if k < d { t * k as f64 } else { -t * (k - d) as f64 })
            }
            Displace(z) => padded_single(n(0), |pad| displacement_generator(z, pad)),
            Squeeze(z) => padded_single(n(0), |pad| squeeze_generator(z, pad)),
            CondDisplace(z) => controlled(
                &padded_single(n(1), |pad| displacement_generator(z, pad)),
                &padded_single(n(1), |pad| displacement_generator(-z, pad)),
            ),
            CondSqueeze(z) => controlled(
                &padded_single(n(1), |pad| squeeze_generator(z, pad)),
                &padded_single(n(1), |pad| squeeze_generator(-z, pad)),
            ),
            BeamSplitter(z) => exp_minus_i(&beam_splitter_generator(z, n(0), n(1))),
            CondBeamSplitter(z) => controlled(
                &exp_minus_i(&beam_splitter_generator(z, n(1), n(2))),
                &exp_minus_i(&beam_splitter_generator(-z, n(1), n(2))),
            ),
            RedSideband(z) => exp_minus_i(&sideband_generator(z, n(1), false)),
            BlueSideband(z) => exp_minus_i(&sideband_generator(z, n(1), true)),
            QuadraticPhase(t) => QuadratureGrid::padded(Quadrature::Q, n(0)).function_matrix(|x| (I * (t * x * x / 2.0)).exp()),
            CubicPhase(t) => QuadratureGrid::padded(Quadrature::Q, n(0)).function_matrix(|x| (I * (t * x.powi(3) / 3.0)).exp()),
            Swap => swap(n(0), n(1))?,
            Entangler(s) => {
                return Ok(LocalGate::Entangler {
                    mu: QuadratureGrid::padded(Quadrature::Q, n(0)),
                    a: QuadratureGrid::padded(Quadrature::Q, n(1)),
                    s,
                })
            }
        };
        Ok(LocalGate::Dense(m))
    }

    /// Dense matrix over the targets.
    pub fn matrix(&self) -> DMatrix<C64> {
        match self {
            LocalGate::Dense(m) => m.clone(),
            LocalGate::Entangler { mu, a, .. } => {
                let (dm, da) = (mu.n_max + 1, a.n_max + 1);
                let layout = HybridLayout::new(0, vec![QumodeBasis::Fock { n_max: mu.n_max }, QumodeBasis::Fock { n_max: a.n_max }])
                    .expect("two-mode layout");
                let mut out = DMatrix::identity(dm * da, dm * da);
                self.apply(&[0, 1], &layout, &mut out);
                out
            }
        }
    }

    /// Applies the gate to every column of `v` (a state or a block of states on `layout`).
    pub fn apply(&self, slots: &[usize], layout: &HybridLayout, v: &mut DMatrix<C64>) {
        let offsets = local_offsets(layout, slots);
        let bases = rest_bases(layout, slots);
        match self {
            LocalGate::Dense(m) => {
                let mut x = DVector::zeros(offsets.len());
                for col in 0..v.ncols() {
                    for &base in &bases {
                        for (t, &o) in offsets.iter().enumerate() {
                            x[t] = v[(base + o, col)];
                        }
                        let y = m * &x;
                        for (t, &o) in offsets.iter().enumerate() {
                            v[(base + o, col)] = y[t];
                        }
                    }
                }
            }
            LocalGate::Entangler { mu, a, s } => {
                let (dm, da) = (mu.n_max + 1, a.n_max + 1);
                let phase = DMatrix::from_fn(mu.len(), a.len(), |k, l| (-I * (s * mu.points[k].powi(2) * a.points[l])).exp());
                let wa_conj = a.vectors.map(|c| c.conj());
                let wa_t = a.vectors.transpose();
                let wm_adj = mu.vectors.adjoint();
                let mut psi = DMatrix::zeros(dm, da);
                for col in 0..v.ncols() {
                    for &base in &bases {
                        for (t, &o) in offsets.iter().enumerate() {
                            psi[(t / da, t % da)] = v[(base + o, col)];
                        }
                        let c = (&wm_adj * &psi * &wa_conj).component_mul(&phase);
                        let out = &mu.vectors * c * &wa_t;
                        for (t, &o) in offsets.iter().enumerate() {
                            v[(base + o, col)] = out[(t / da, t % da)];
                        }
                    }
                }
            }
        }
    }
}

/// The basis of one target slot, as far as gate construction is concerned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetBasis {
    Qubit,
    Fock(usize),
}

impl TargetBasis {
    fn n_max(&self) -> usize {
        match *self {
            TargetBasis::Qubit => 1,
            TargetBasis::Fock(n) => n,
        }
    }

    pub fn of_slot(layout: &HybridLayout, slot: usize) -> Result<Self> {
        if slot >= layout.slot_count() {
            return Err(Error::LayoutMismatch(format!("gate target {slot} out of range")));
        }
        match layout.slot_kind(slot) {
            SlotKind::Qubit => Ok(TargetBasis::Qubit),
            SlotKind::Qumode(QumodeBasis::Fock { n_max }) => Ok(TargetBasis::Fock(*n_max)),
            SlotKind::Qumode(other) => Err(Error::LayoutMismatch(format!("gates need Fock qumodes, slot {slot} is {other:?}"))),
        }
    }
}

fn check_targets(kind: &GateKind, targets: &[TargetBasis]) -> Result<()> {
    use TargetBasis::{Fock, Qubit};
    let ok = match (kind.arity(), targets) {
        (Arity::Qubit, [Qubit]) => true,
        (Arity::TwoQubits, [Qubit, Qubit]) => true,
        (Arity::Qumode, [Fock(_)]) => true,
        (Arity::TwoQumodes, [Fock(_), Fock(_)]) => true,
        (Arity::QubitQumode, [Qubit, Fock(_)]) => true,
        (Arity::QubitTwoQumodes, [Qubit, Fock(_), Fock(_)]) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::LayoutMismatch(format!("{} cannot act on {targets:?}", kind.name())))
    }
}

fn pauli_rotation(sigma: &DMatrix<C64>, theta: f64) -> DMatrix<C64> {
    DMatrix::identity(2, 2) * C64::new((theta / 2.0).cos(), 0.0) + sigma * (I * (theta / 2.0).sin())
}

fn cnot() -> DMatrix<C64> {
    let mut m = DMatrix::zeros(4, 4);
    for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(r, c)] = C64::new(1.0, 0.0);
    }
    m
}

fn diagonal(d: usize, phase: impl Fn(usize) -> f64) -> DMatrix<C64> {
    DMatrix::from_diagonal(&DVector::from_fn(d, |k, _| (I * phase(k)).exp()))
}

fn controlled(on_zero: &DMatrix<C64>, on_one: &DMatrix<C64>) -> DMatrix<C64> {
    let d = on_zero.nrows();
    let mut m = DMatrix::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(on_zero);
    m.view_mut((d, d), (d, d)).copy_from(on_one);
    m
}

fn exp_minus_i(h: &DMatrix<C64>) -> DMatrix<C64> {
    HermitianSpectrum::of(h).expect("gate generator is Hermitian").exp_matrix(-I)
}

/// Padding used for single-mode gates that do not preserve photon number.
pub fn padded_dimension(n_max: usize) -> usize {
    (2 * n_max + 40).max(80)
}

/// `e^{−iH}` computed at a padded cutoff and compressed to `n ≤ n_max`.
fn padded_single(n_max: usize, generator: impl Fn(usize) -> DMatrix<C64>) -> DMatrix<C64> {
    let pad = padded_dimension(n_max);
    exp_minus_i(&generator(pad)).view((0, 0), (n_max + 1, n_max + 1)).into_owned()
}

/// `H` with `e^{−iH} = e^{z a† − z* a}`.
fn displacement_generator(z: C64, n_max: usize) -> DMatrix<C64> {
    let a = fock_matrix(FockKind::A, n_max);
    (a.adjoint() * z - &a * z.conj()) * I
}

/// `H` with `e^{−iH} = e^{(z* a² − z a†²)/2}`.
fn squeeze_generator(z: C64, n_max: usize) -> DMatrix<C64> {
    let a = fock_matrix(FockKind::A, n_max);
    let a2 = &a * &a;
    (&a2 * z.conj() - a2.adjoint() * z) * (I * 0.5)
}

/// `H` with `e^{−iH} = e^{z a†b − z* a b†}`; `a` is the first target.
fn beam_splitter_generator(z: C64, na: usize, nb: usize) -> DMatrix<C64> {
    let a = fock_matrix(FockKind::A, na).kronecker(&DMatrix::identity(nb + 1, nb + 1));
    let b = DMatrix::identity(na + 1, na + 1).kronecker(&fock_matrix(FockKind::A, nb));
    (a.adjoint() * &b * z - &a * b.adjoint() * z.conj()) * I
}

/// `H` with `e^{−iH}` the red (`a X⁺`) or blue (`a† X⁺`) sideband gate.
fn sideband_generator(z: C64, n_max: usize, blue: bool) -> DMatrix<C64> {
    let a = fock_matrix(FockKind::A, n_max);
    let x_plus = crate::hybrid::qubit::x_plus();
    let mode_op = if blue { a.adjoint() } else { a };
    let g = x_plus.kronecker(&mode_op) * z;
    -(&g + g.adjoint())
}

fn swap(na: usize, nb: usize) -> Result<DMatrix<C64>> {
    if na != nb {
        return Err(Error::LayoutMismatch("SWAP needs equal cutoffs".into()));
    }
    let d = na + 1;
    let mut m = DMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m[(j * d + i, i * d + j)] = C64::new(1.0, 0.0);
        }
    }
    Ok(m)
}

type Cache = RwLock<HashMap<String, Arc<LocalGate>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Local gate for `spec` on `layout`, shared through a process-wide cache.
pub fn local_gate(spec: &GateSpec, layout: &HybridLayout) -> Result<Arc<LocalGate>> {
    let targets = spec.targets.iter().map(|&s| TargetBasis::of_slot(layout, s)).collect::<Result<Vec<_>>>()?;
    let key = format!("{:?}|{:?}", spec.kind, targets);
    if let Some(g) = cache().read().expect("gate cache poisoned").get(&key) {
        return Ok(Arc::clone(g));
    }
    let gate = Arc::new(LocalGate::build(&spec.kind, &targets)?);
    let mut w = cache().write().expect("gate cache poisoned");
    Ok(Arc::clone(w.entry(key).or_insert(gate)))
}

/// Number of cached gates (for diagnostics).
pub fn cache_len() -> usize {
    cache().read().expect("gate cache poisoned").len()
}
