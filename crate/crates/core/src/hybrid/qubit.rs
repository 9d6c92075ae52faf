//! Single-qubit matrices. Qubit basis order is (|0⟩, |1⟩) with Z = diag(1, −1).

use nalgebra::DMatrix;

use crate::numerics::linalg::C64;

fn m2(a: [[C64; 2]; 2]) -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[a[0][0], a[0][1], a[1][0], a[1][1]])
}

const O: C64 = C64::new(0.0, 0.0);
const I1: C64 = C64::new(1.0, 0.0);
const IM: C64 = C64::new(0.0, 1.0);

pub fn pauli_x() -> DMatrix<C64> {
    m2([[O, I1], [I1, O]])
}

pub fn pauli_y() -> DMatrix<C64> {
    m2([[O, -IM], [IM, O]])
}

pub fn pauli_z() -> DMatrix<C64> {
    m2([[I1, O], [O, -I1]])
}

/// `X⁻ = |1⟩⟨0|`.
pub fn x_minus() -> DMatrix<C64> {
    m2([[O, O], [I1, O]])
}

/// `X⁺ = |0⟩⟨1|`.
pub fn x_plus() -> DMatrix<C64> {
    m2([[O, I1], [O, O]])
}

pub fn hadamard() -> DMatrix<C64> {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    m2([[h, h], [h, -h]])
}

/// Phase gate `diag(1, i)`.
pub fn phase_s() -> DMatrix<C64> {
    m2([[I1, O], [O, IM]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let xy = pauli_x() * pauli_y();
        assert_eq!(xy, pauli_z() * IM);
        assert!((hadamard() * pauli_z() * hadamard() - pauli_x()).norm() < 1e-15);
        assert_eq!(x_plus() + x_minus(), pauli_x());
    }
}
