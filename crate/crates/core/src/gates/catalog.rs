//! The standard set of decomposition certificates, each a circuit checked
//! against the exponential it is meant to implement.

use nalgebra::DMatrix;
use serde::Serialize;

use super::circuit::{gate_matrix, Circuit};
use super::decompose::{decompose_ccd, decompose_d_entangler, decompose_exp_j, decompose_exp_j2, decompose_exp_jj, decompose_zj, PauliPair};
use super::spec::{GateKind, GateSpec};
use super::verify::{verify_identity, ExpKron, Target};
use crate::error::Result;
use crate::hybrid::fock::{fock_matrix, two_mode_j_matrix, FockKind};
use crate::hybrid::layout::{HybridLayout, QumodeBasis};
use crate::hybrid::operator::OperatorMatrix;
use crate::hybrid::qubit::{pauli_x, pauli_z};
use crate::numerics::linalg::{HermitianSpectrum, C64};
use crate::par;

/// Interior fraction used unless a case overrides it.
pub const DEFAULT_INTERIOR: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseKind {
    ExpJ,
    Zj,
    ExpJ2,
    CcdXx,
    DEntangler,
    ExpJj,
    /// `decompose_exp_j(−s)` against `e^{−isJ}`; must fail.
    WrongSignControl,
}

impl CaseKind {
    pub const ALL: [CaseKind; 7] = [
        CaseKind::ExpJ,
        CaseKind::Zj,
        CaseKind::ExpJ2,
        CaseKind::CcdXx,
        CaseKind::DEntangler,
        CaseKind::ExpJj,
        CaseKind::WrongSignControl,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseKind::ExpJ => "exp_J",
            CaseKind::Zj => "ZJ",
            CaseKind::ExpJ2 => "exp_J2",
            CaseKind::CcdXx => "ccd_XX",
            CaseKind::DEntangler => "D_entangler",
            CaseKind::ExpJj => "exp_JJ",
            CaseKind::WrongSignControl => "exp_J_wrong_sign",
        }
    }

    /// Angle, Fock cutoff per mode and residual bound of the standard case.
    pub fn defaults(&self) -> (f64, usize, f64) {
        match self {
            CaseKind::ExpJ => (0.3, 20, 1e-8),
            CaseKind::Zj => (0.4, 20, 1e-8),
            CaseKind::ExpJ2 => (0.2, 24, 1e-6),
            CaseKind::CcdXx => (0.25, 24, 1e-6),
            CaseKind::DEntangler => (0.1, 24, 1e-6),
            CaseKind::ExpJj => (0.1, 8, 1e-6),
            CaseKind::WrongSignControl => (0.3, 20, 0.1),
        }
    }

    pub fn is_negative_control(&self) -> bool {
        *self == CaseKind::WrongSignControl
    }

    pub fn circuit(&self, s: f64) -> Circuit {
        match self {
            CaseKind::ExpJ => decompose_exp_j(s),
            CaseKind::Zj => decompose_zj(s),
            CaseKind::ExpJ2 => decompose_exp_j2(s),
            CaseKind::CcdXx => decompose_ccd(s, PauliPair::XX),
            CaseKind::DEntangler => decompose_d_entangler(s),
            CaseKind::ExpJj => decompose_exp_jj(s),
            CaseKind::WrongSignControl => decompose_exp_j(-s),
        }
    }

    /// The operator the circuit should equal.
    pub fn target(&self, s: f64, n_max: usize) -> Result<Box<dyn Target>> {
        let modes = |qubits: usize, count: usize| HybridLayout::new(qubits, vec![QumodeBasis::Fock { n_max }; count]);
        let exp = |layout: HybridLayout, h: &DMatrix<C64>| -> Result<Box<dyn Target>> {
            let u = HermitianSpectrum::of(h)?.exp_matrix(C64::new(0.0, -s));
            Ok(Box::new(OperatorMatrix::on_layout(layout, u)?))
        };
        let j = two_mode_j_matrix(n_max);
        match self {
            CaseKind::ExpJ | CaseKind::WrongSignControl => exp(modes(0, 2)?, &j),
            CaseKind::Zj => exp(modes(1, 2)?, &pauli_z().kronecker(&j)),
            CaseKind::ExpJ2 => exp(modes(0, 2)?, &(&j * &j)),
            CaseKind::CcdXx => exp(modes(2, 1)?, &pauli_x().kronecker(&pauli_x()).kronecker(&fock_matrix(FockKind::Q, n_max))),
            CaseKind::DEntangler => {
                let spec = GateSpec::new(GateKind::Entangler(s), &[0, 1])?;
                Ok(Box::new(gate_matrix(&spec, &modes(0, 2)?)?))
            }
            CaseKind::ExpJj => {
                let jj = OperatorMatrix::hermitian_on_layout(modes(0, 2)?, j)?;
                Ok(Box::new(ExpKron::new(modes(0, 4)?, &jj, &jj, C64::new(0.0, s))?))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GateCheck {
    pub case: CaseKind,
    pub angle: f64,
    pub n_max: usize,
    pub interior_fraction: f64,
    pub residual: f64,
    pub tolerance: f64,
}

impl GateCheck {
    /// Residual within tolerance, or at least the tolerance for a negative control.
    pub fn passed(&self) -> bool {
        if self.case.is_negative_control() {
            self.residual >= self.tolerance
        } else {
            self.residual <= self.tolerance
        }
    }
}

/// Certifies one case; `n_max` overrides the case's cutoff.
pub fn run_check(case: CaseKind, n_max: Option<usize>, interior_fraction: f64) -> Result<GateCheck> {
    let (angle, default_n, tolerance) = case.defaults();
    let n_max = n_max.unwrap_or(default_n);
    let target = case.target(angle, n_max)?;
    let residual = verify_identity(&case.circuit(angle), target.as_ref(), interior_fraction)?;
    Ok(GateCheck { case, angle, n_max, interior_fraction, residual, tolerance })
}

/// Every standard case, in [`CaseKind::ALL`] order.
pub fn standard_checks(n_max: Option<usize>, interior_fraction: f64) -> Result<Vec<GateCheck>> {
    par::collect_results(par::map(&CaseKind::ALL, |&c| run_check(c, n_max, interior_fraction)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cutoff_checks_run() {
        let checks = standard_checks(Some(6), DEFAULT_INTERIOR).unwrap();
        assert_eq!(checks.len(), CaseKind::ALL.len());
        let control = checks.iter().find(|c| c.case.is_negative_control()).unwrap();
        assert!(control.passed(), "control residual {}", control.residual);
        let exp_j = checks.iter().find(|c| c.case == CaseKind::ExpJ).unwrap();
        assert!(exp_j.residual < 1e-8);
    }
}
