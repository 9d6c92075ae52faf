//! Circuits for the exponentials that appear in the plaquette Trotter step.
//!
//! Each builder uses abstract slots starting at 0; move them into a register with
//! [`Circuit::remap`].

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

use super::circuit::Circuit;
use super::spec::GateKind::{self, *};
use crate::numerics::linalg::C64;

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Frame in which `J` on modes (a, b) becomes `n_a − n_b`.
fn open_frame(c: &mut Circuit, a: usize, b: usize) {
    c.gate(Fourier, &[a]).gate(BeamSplitter(real(FRAC_PI_4)), &[a, b]);
}

fn close_frame(c: &mut Circuit, a: usize, b: usize) {
    c.gate(BeamSplitter(real(-FRAC_PI_4)), &[a, b]).gate(Fourier.inverse(), &[a]);
}

/// `e^{−isJ}` on modes 0, 1.
pub fn decompose_exp_j(s: f64) -> Circuit {
    let mut c = Circuit::new();
    open_frame(&mut c, 0, 1);
    c.gate(Rotation(-s), &[0]).gate(Rotation(s), &[1]);
    close_frame(&mut c, 0, 1);
    c
}

/// `e^{−isJ²}` on modes 0, 1.
pub fn decompose_exp_j2(s: f64) -> Circuit {
    let mut c = Circuit::new();
    open_frame(&mut c, 0, 1);
    c.gate(Kerr(-s), &[0]).gate(Kerr(-s), &[1]).gate(CrossKerr(2.0 * s), &[0, 1]);
    close_frame(&mut c, 0, 1);
    c
}

/// `e^{is J₀₁ J₂₃}` on modes 0..4, with cross-Kerr gates on neighbouring slots only.
pub fn decompose_exp_jj(s: f64) -> Circuit {
    let mut c = Circuit::new();
    open_frame(&mut c, 0, 1);
    open_frame(&mut c, 2, 3);
    // slots hold modes [0, 2, 1, 3]
    c.gate(Swap, &[1, 2]);
    c.gate(CrossKerr(s), &[0, 1]).gate(CrossKerr(-s), &[1, 2]).gate(CrossKerr(s), &[2, 3]);
    // slots hold modes [2, 0, 3, 1]
    c.gate(Swap, &[0, 1]).gate(Swap, &[2, 3]);
    c.gate(CrossKerr(-s), &[1, 2]);
    c.gate(Swap, &[0, 1]).gate(Swap, &[2, 3]).gate(Swap, &[1, 2]);
    close_frame(&mut c, 2, 3);
    close_frame(&mut c, 0, 1);
    c
}

/// `e^{−isZ⊗J}` with the qubit on slot 0 and the modes on slots 1, 2.
///
/// `a†b − ab† = iJ` for `a, b` the first and second mode, so a single
/// conditional beam splitter is already exact without the frame.
pub fn decompose_zj(s: f64) -> Circuit {
    let mut c = Circuit::new();
    c.gate(CondBeamSplitter(real(-s)), &[0, 1, 2]);
    c
}

/// The two-qubit Pauli product in `e^{−is q ⊗ σ_A ⊗ σ_B}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliPair {
    XX,
    YY,
    XY,
    YX,
    ZZ,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    X,
    Y,
    Z,
}

impl PauliPair {
    fn axes(self) -> (Axis, Axis) {
        match self {
            PauliPair::XX => (Axis::X, Axis::X),
            PauliPair::YY => (Axis::Y, Axis::Y),
            PauliPair::XY => (Axis::X, Axis::Y),
            PauliPair::YX => (Axis::Y, Axis::X),
            PauliPair::ZZ => (Axis::Z, Axis::Z),
        }
    }
}

/// Gates `B` (time order) with `B Z B† = σ`, and their inverse.
fn basis_change(axis: Axis) -> (Vec<GateKind>, Vec<GateKind>) {
    match axis {
        Axis::Z => (vec![], vec![]),
        Axis::X => (vec![Hadamard], vec![Hadamard]),
        // Y = (SH) Z (SH)†
        Axis::Y => (vec![Hadamard, PhaseS], vec![PhaseSdg, Hadamard]),
    }
}

/// `e^{−is q ⊗ σ_A ⊗ σ_B}` with qubits A, B on slots 0, 1 and the mode on slot 2.
pub fn decompose_ccd(s: f64, pair: PauliPair) -> Circuit {
    let (a, b) = pair.axes();
    let (enter_a, leave_a) = basis_change(a);
    let (enter_b, leave_b) = basis_change(b);
    let mut c = Circuit::new();
    for g in leave_a {
        c.gate(g, &[0]);
    }
    for g in leave_b {
        c.gate(g, &[1]);
    }
    c.gate(Cnot, &[1, 0]);
    c.gate(CondDisplace(C64::new(0.0, -s * FRAC_1_SQRT_2)), &[0, 2]);
    c.gate(Cnot, &[1, 0]);
    for g in enter_a {
        c.gate(g, &[0]);
    }
    for g in enter_b {
        c.gate(g, &[1]);
    }
    c
}

/// `e^{−is q_μ² q_a}` with μ on slot 0 and a on slot 1, from cubic phase gates
/// in a balanced beam-splitter frame.
pub fn decompose_d_entangler(s: f64) -> Circuit {
    let mut c = Circuit::new();
    c.gate(BeamSplitter(real(-FRAC_PI_4)), &[0, 1]);
    c.gate(CubicPhase(SQRT_2 * s), &[0]).gate(CubicPhase(-SQRT_2 * s), &[1]);
    c.gate(BeamSplitter(real(FRAC_PI_4)), &[0, 1]);
    c.gate(CubicPhase(s), &[1]);
    c
}

/// The ordering read off the inline product `BS†·V_μ(−√2s)·V_a(√2s)·BS·V_a(s)`
/// taken as time order; kept as a documented negative case.
pub fn decompose_d_entangler_inline(s: f64) -> Circuit {
    let mut c = Circuit::new();
    c.gate(CubicPhase(s), &[1]);
    c.gate(BeamSplitter(real(FRAC_PI_4)), &[0, 1]);
    c.gate(CubicPhase(-SQRT_2 * s), &[0]).gate(CubicPhase(SQRT_2 * s), &[1]);
    c.gate(BeamSplitter(real(-FRAC_PI_4)), &[0, 1]);
    c
}
