//! Dense Hermitian eigensolving and spectral matrix functions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<C64>,
}

/// Largest entry of `M - M†`.
pub fn hermiticity_defect(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Frobenius norm, used as the scale for relative tolerances.
pub fn scale_of(m: &DMatrix<C64>) -> f64 {
    m.norm().max(1.0)
}

pub fn check_hermitian(m: &DMatrix<C64>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::InvalidParameter(format!("matrix is {}x{}", m.nrows(), m.ncols())));
    }
    let deviation = hermiticity_defect(m);
    if deviation > 1e-10 * scale_of(m) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

impl HermitianSpectrum {
    pub fn of(m: &DMatrix<C64>) -> Result<Self> {
        check_hermitian(m)?;
        let n = m.nrows();
        if n == 0 {
            return Ok(Self { eigenvalues: vec![], eigenvectors: DMatrix::zeros(0, 0) });
        }
        // symmetrize so the solver sees an exactly Hermitian input
        let sym = (m + m.adjoint()) * C64::new(0.5, 0.0);
        let mut values = Vec::with_capacity(n);
        let mut vectors = DMatrix::<C64>::zeros(n, n);
        // blocks that the sparsity pattern decouples are solved separately
        for block in coupled_blocks(&sym) {
            let k = block.len();
            let sub = DMatrix::from_fn(k, k, |i, j| sym[(block[i], block[j])]);
            let eig = sub.symmetric_eigen();
            for (c, &lam) in eig.eigenvalues.iter().enumerate() {
                let col = values.len();
                values.push(lam);
                for (i, &row) in block.iter().enumerate() {
                    vectors[(row, col)] = eig.eigenvectors[(i, c)];
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let eigenvalues = order.iter().map(|&k| values[k]).collect();
        let eigenvectors = DMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
        Ok(Self { eigenvalues, eigenvectors })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn ground(&self) -> (f64, DVector<C64>) {
        (self.eigenvalues[0], self.eigenvectors.column(0).into_owned())
    }

    /// `f(M) v` through the spectral expansion.
    pub fn apply_fn(&self, f: impl Fn(f64) -> C64, v: &DVector<C64>) -> DVector<C64> {
        let mut coeffs = self.eigenvectors.ad_mul(v);
        for (c, &lam) in coeffs.iter_mut().zip(&self.eigenvalues) {
            *c *= f(lam);
        }
        &self.eigenvectors * coeffs
    }

    /// `e^{scale·M} v`.
    pub fn exp_action(&self, scale: C64, v: &DVector<C64>) -> DVector<C64> {
        self.apply_fn(|lam| (scale * lam).exp(), v)
    }

    /// The full matrix `f(M)`.
    pub fn matrix_fn(&self, f: impl Fn(f64) -> C64) -> DMatrix<C64> {
        let n = self.dim();
        let zero = C64::new(0.0, 0.0);
        let support: Vec<Vec<(usize, C64)>> = self
            .eigenvectors
            .column_iter()
            .map(|col| col.iter().enumerate().filter(|(_, v)| **v != zero).map(|(i, v)| (i, *v)).collect())
            .collect();
        let work: usize = support.iter().map(|s| s.len() * s.len()).sum();
        if work * 4 < n * n * n {
            // block-sparse eigenvectors: accumulate outer products directly
            let mut out = DMatrix::<C64>::zeros(n, n);
            for (col, &lam) in support.iter().zip(&self.eigenvalues) {
                let w = f(lam);
                for &(i, a) in col {
                    let aw = a * w;
                    for &(j, b) in col {
                        out[(i, j)] += aw * b.conj();
                    }
                }
            }
            return out;
        }
        let mut scaled = self.eigenvectors.clone();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            let mut col = scaled.column_mut(j);
            col *= f(lam);
        }
        scaled * self.eigenvectors.adjoint()
    }

    pub fn exp_matrix(&self, scale: C64) -> DMatrix<C64> {
        self.matrix_fn(|lam| (scale * lam).exp())
    }
}

/// Index sets of the connected components of the nonzero pattern, each ascending.
fn coupled_blocks(m: &DMatrix<C64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for j in 0..n {
        for i in 0..j {
            if m[(i, j)] != C64::new(0.0, 0.0) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(i);
    }
    blocks
}

/// `e^{scale·M} v` for Hermitian `M`, by eigendecomposition.
pub fn expm_action(m: &DMatrix<C64>, scale: C64, v: &DVector<C64>) -> Result<DVector<C64>> {
    Ok(HermitianSpectrum::of(m)?.exp_action(scale, v))
}

/// Spectral norm of an arbitrary complex matrix.
pub fn spectral_norm(m: &DMatrix<C64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}
