//! Certifies a circuit against a target operator on the low-photon interior of a layout.

use nalgebra::DMatrix;

use super::circuit::{apply_ops, Circuit};
use crate::error::{Error, Result};
use crate::hybrid::layout::{HybridLayout, QumodeBasis, SlotKind};
use crate::hybrid::operator::OperatorMatrix;
use crate::numerics::linalg::{spectral_norm, HermitianSpectrum, C64};
use crate::par;

/// Which Fock levels count as interior.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Interior {
    /// Levels `n < fraction · n_max` (every level when `fraction ≥ 1`).
    Fraction(f64),
    /// Levels `n < count`.
    Levels(usize),
}

impl Interior {
    fn admits(&self, n: usize, n_max: usize) -> bool {
        match *self {
            Interior::Fraction(f) => f >= 1.0 || (n as f64) < f * n_max as f64,
            Interior::Levels(k) => n < k,
        }
    }

    /// Ascending layout indices whose Fock digits are all interior.
    pub fn indices(&self, layout: &HybridLayout) -> Vec<usize> {
        (0..layout.dim())
            .filter(|&i| {
                layout.digits(i).iter().enumerate().all(|(slot, &d)| match layout.slot_kind(slot) {
                    SlotKind::Qumode(QumodeBasis::Fock { n_max }) => self.admits(d, *n_max),
                    _ => true,
                })
            })
            .collect()
    }
}

/// An operator whose interior block can be produced without forming it on the full layout.
pub trait Target: Sync {
    fn layout(&self) -> &HybridLayout;
    /// Rows and columns `indices` of the operator.
    fn block(&self, indices: &[usize]) -> Result<DMatrix<C64>>;
}

impl Target for OperatorMatrix {
    fn layout(&self) -> &HybridLayout {
        OperatorMatrix::layout(self)
    }

    fn block(&self, indices: &[usize]) -> Result<DMatrix<C64>> {
        if !self.space().is_full() {
            return Err(Error::LayoutMismatch("verification target must live on the full layout".into()));
        }
        Ok(DMatrix::from_fn(indices.len(), indices.len(), |r, c| self.data()[(indices[r], indices[c])]))
    }
}

/// `e^{scale · A⊗B}` for Hermitian `A` on the leading slots and `B` on the rest.
pub struct ExpKron {
    layout: HybridLayout,
    left: HermitianSpectrum,
    right: HermitianSpectrum,
    scale: C64,
}

impl ExpKron {
    pub fn new(layout: HybridLayout, left: &OperatorMatrix, right: &OperatorMatrix, scale: C64) -> Result<Self> {
        if left.dim() * right.dim() != layout.dim() {
            return Err(Error::LayoutMismatch("A⊗B does not match the layout".into()));
        }
        Ok(Self { layout, left: left.spectrum()?, right: right.spectrum()?, scale })
    }
}

impl Target for ExpKron {
    fn layout(&self) -> &HybridLayout {
        &self.layout
    }

    fn block(&self, indices: &[usize]) -> Result<DMatrix<C64>> {
        let (da, db) = (self.left.dim(), self.right.dim());
        let va = &self.left.eigenvectors;
        let vb = &self.right.eigenvectors;
        // W = interior rows of V_A⊗V_B, scaled column-wise by the exponential
        let w = DMatrix::from_fn(indices.len(), da * db, |r, k| va[(indices[r] / db, k / db)] * vb[(indices[r] % db, k % db)]);
        let mut scaled = w.clone();
        for k in 0..da * db {
            let phase = (self.scale * self.left.eigenvalues[k / db] * self.right.eigenvalues[k % db]).exp();
            scaled.column_mut(k).iter_mut().for_each(|x| *x *= phase);
        }
        Ok(scaled * w.adjoint())
    }
}

/// Interior block of the circuit's matrix; columns are computed independently.
pub fn circuit_block(circuit: &Circuit, layout: &HybridLayout, indices: &[usize]) -> Result<DMatrix<C64>> {
    if !circuit.is_unitary() {
        return Err(Error::InvalidParameter("only gate circuits can be verified as matrices".into()));
    }
    let columns = par::map(indices, |&col| -> Result<Vec<C64>> {
        let mut v = DMatrix::zeros(layout.dim(), 1);
        v[(col, 0)] = C64::new(1.0, 0.0);
        apply_ops(circuit, layout, &mut v)?;
        Ok(indices.iter().map(|&r| v[(r, 0)]).collect())
    });
    let columns = par::collect_results(columns)?;
    Ok(DMatrix::from_fn(indices.len(), indices.len(), |r, c| columns[c][r]))
}

/// Spectral-norm distance between circuit and target on the interior.
pub fn verify_on(circuit: &Circuit, target: &dyn Target, interior: Interior) -> Result<f64> {
    let layout = target.layout();
    if circuit.width() > layout.slot_count() {
        return Err(Error::LayoutMismatch("circuit uses slots outside the target layout".into()));
    }
    let indices = interior.indices(layout);
    let c = circuit_block(circuit, layout, &indices)?;
    let t = target.block(&indices)?;
    Ok(spectral_norm(&(c - t)))
}

/// [`verify_on`] with the interior given as a fraction of each mode's cutoff.
pub fn verify_identity(circuit: &Circuit, target: &dyn Target, interior_fraction: f64) -> Result<f64> {
    if !(interior_fraction > 0.0 && interior_fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!("interior fraction {interior_fraction}")));
    }
    verify_on(circuit, target, Interior::Fraction(interior_fraction))
}
