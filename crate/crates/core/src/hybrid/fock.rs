//! Truncated Fock-space operators and quadrature eigenbases.

use nalgebra::{DMatrix, DVector};

use super::layout::{HybridLayout, QumodeBasis};
use super::operator::OperatorMatrix;
use crate::numerics::linalg::{HermitianSpectrum, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockKind {
    A,
    Adag,
    Q,
    P,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Quadrature {
    Q,
    P,
}

pub fn fock_layout(n_max: usize, modes: usize) -> HybridLayout {
    HybridLayout::new(0, vec![QumodeBasis::Fock { n_max }; modes]).expect("Fock layout")
}

/// Truncated matrix of `kind` with `a|n⟩ = √n|n−1⟩`.
pub fn fock_matrix(kind: FockKind, n_max: usize) -> DMatrix<C64> {
    let d = n_max + 1;
    let a = DMatrix::from_fn(d, d, |i, j| if j == i + 1 { C64::new((j as f64).sqrt(), 0.0) } else { C64::new(0.0, 0.0) });
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        FockKind::A => a,
        FockKind::Adag => a.adjoint(),
        FockKind::Q => (&a + a.adjoint()) * C64::new(s, 0.0),
        FockKind::P => (&a - a.adjoint()) * C64::new(0.0, -s),
        FockKind::N => DMatrix::from_fn(d, d, |i, j| if i == j { C64::new(i as f64, 0.0) } else { C64::new(0.0, 0.0) }),
    }
}

pub fn fock_operator(kind: FockKind, n_max: usize) -> OperatorMatrix {
    let layout = fock_layout(n_max, 1);
    let m = fock_matrix(kind, n_max);
    match kind {
        FockKind::A | FockKind::Adag => OperatorMatrix::on_layout(layout, m),
        _ => OperatorMatrix::hermitian_on_layout(layout, m),
    }
    .expect("Fock operator")
}

/// `J = i(a₀a₁† − a₀†a₁) = q₀p₁ − q₁p₀` on two Fock modes.
pub fn two_mode_j_matrix(n_max: usize) -> DMatrix<C64> {
    let a = fock_matrix(FockKind::A, n_max);
    let id = DMatrix::identity(n_max + 1, n_max + 1);
    let a0 = a.kronecker(&id);
    let a1 = id.kronecker(&a);
    (&a0 * a1.adjoint() - a0.adjoint() * &a1) * C64::new(0.0, 1.0)
}

#[allow(non_snake_case)]
pub fn two_mode_J(n_max: usize) -> OperatorMatrix {
    OperatorMatrix::hermitian_on_layout(fock_layout(n_max, 2), two_mode_j_matrix(n_max)).expect("J is Hermitian")
}

/// Normalized Hermite functions `ψ_0(x) … ψ_{n_max}(x)`.
pub fn hermite_functions(x: f64, n_max: usize) -> Vec<f64> {
    let mut psi = Vec::with_capacity(n_max + 1);
    psi.push(std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp());
    if n_max >= 1 {
        psi.push(std::f64::consts::SQRT_2 * x * psi[0]);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * psi[n] - (nf / (nf + 1.0)).sqrt() * psi[n - 1];
        psi.push(next);
    }
    psi
}

/// Components `⟨n|x⟩` of the (improper) quadrature eigenstate with eigenvalue `value`,
/// truncated to `n ≤ n_max`.
pub fn quadrature_eigenvector(quadrature: Quadrature, value: f64, n_max: usize) -> DVector<C64> {
    let psi = hermite_functions(value, n_max);
    DVector::from_iterator(
        n_max + 1,
        psi.iter().enumerate().map(|(n, &v)| match quadrature {
            Quadrature::Q => C64::new(v, 0.0),
            Quadrature::P => C64::new(0.0, 1.0).powu(n as u32) * v,
        }),
    )
}

/// Eigenbasis of a quadrature on a padded Fock space, restricted to the
/// first `n_max + 1` Fock rows. Functions of the quadrature are diagonal here.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub quadrature: Quadrature,
    pub n_max: usize,
    pub points: Vec<f64>,
    /// `⟨n|x_k⟩` for `n ≤ n_max`.
    pub vectors: DMatrix<C64>,
}

impl QuadratureGrid {
    pub fn new(quadrature: Quadrature, n_max: usize, padded_n_max: usize) -> Self {
        let padded = padded_n_max.max(n_max);
        let kind = match quadrature {
            Quadrature::Q => FockKind::Q,
            Quadrature::P => FockKind::P,
        };
        let spec = HermitianSpectrum::of(&fock_matrix(kind, padded)).expect("quadrature is Hermitian");
        let vectors = spec.eigenvectors.rows(0, n_max + 1).into_owned();
        Self { quadrature, n_max, points: spec.eigenvalues, vectors }
    }

    /// Default padding: generous enough for the gate parameters used here.
    pub fn padded(quadrature: Quadrature, n_max: usize) -> Self {
        Self::new(quadrature, n_max, (2 * n_max + 40).max(80))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Truncated matrix of `f(x)` computed on the padded space.
    pub fn function_matrix(&self, f: impl Fn(f64) -> C64) -> DMatrix<C64> {
        let mut scaled = self.vectors.clone();
        for (k, &x) in self.points.iter().enumerate() {
            let mut col = scaled.column_mut(k);
            col *= f(x);
        }
        scaled * self.vectors.adjoint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annihilator_n1() {
        let a = fock_matrix(FockKind::A, 1);
        assert_eq!(a[(0, 1)], C64::new(1.0, 0.0));
        assert_eq!(a.iter().filter(|c| c.norm() > 0.0).count(), 1);
    }

    #[test]
    fn canonical_commutator_on_interior() {
        let n = 10;
        let q = fock_matrix(FockKind::Q, n);
        let p = fock_matrix(FockKind::P, n);
        let c = &q * &p - &p * &q;
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let expect = if i == j { C64::new(0.0, 1.0) } else { C64::new(0.0, 0.0) };
                assert!((c[(i, j)] - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn vacuum_variance() {
        let q = fock_matrix(FockKind::Q, 4);
        assert!(((&q * &q)[(0, 0)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn j_on_single_photon() {
        let n = 3;
        let j = two_mode_j_matrix(n);
        let d = n + 1;
        // |1,0⟩ → i|0,1⟩
        let col = j.column(d);
        assert!((col[1] - C64::new(0.0, 1.0)).norm() < 1e-14);
        assert!(col.iter().enumerate().all(|(k, c)| k == 1 || c.norm() < 1e-14));
    }

    #[test]
    fn hermite_orthonormality() {
        let n = 12;
        let (x, w) = crate::numerics::quadrature::composite_gauss_legendre(-12.0, 12.0, 40, 12);
        let mut gram = DMatrix::<f64>::zeros(n + 1, n + 1);
        for (xi, wi) in x.iter().zip(&w) {
            let psi = hermite_functions(*xi, n);
            for a in 0..=n {
                for b in 0..=n {
                    gram[(a, b)] += wi * psi[a] * psi[b];
                }
            }
        }
        assert!((gram - DMatrix::identity(n + 1, n + 1)).abs().max() < 1e-12);
    }

    #[test]
    fn p_eigenvector_is_annihilated_on_interior() {
        let n = 30;
        let v = quadrature_eigenvector(Quadrature::P, 0.7, n);
        let r = fock_matrix(FockKind::P, n) * &v - &v * C64::new(0.7, 0.0);
        for k in 0..n - 1 {
            assert!(r[k].norm() < 1e-12, "row {k}: {}", r[k]);
        }
    }

    #[test]
    fn grid_reproduces_quadrature() {
        let g = QuadratureGrid::padded(Quadrature::Q, 10);
        let q2 = g.function_matrix(|x| C64::new(x * x, 0.0));
        let q = fock_matrix(FockKind::Q, 10);
        let exact = &q * &q;
        for i in 0..10 {
            for j in 0..10 {
                assert!((q2[(i, j)] - exact[(i, j)]).norm() < 1e-10);
            }
        }
    }
}
