//! Dense operators tagged with the space they act on.

use nalgebra::{DMatrix, DVector};

use super::layout::{HybridLayout, SlotKind, Space};
use crate::error::{Error, Result};
use crate::numerics::linalg::{check_hermitian, HermitianSpectrum, C64};

#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    space: Space,
    data: DMatrix<C64>,
    hermitian: bool,
}

impl OperatorMatrix {
    /// A general (not necessarily Hermitian) operator.
    pub fn new(space: Space, data: DMatrix<C64>) -> Result<Self> {
        let n = space.dim();
        if data.nrows() != n || data.ncols() != n {
            return Err(Error::LayoutMismatch(format!(
                "{}x{} matrix on a space of dimension {n}",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(Self { space, data, hermitian: false })
    }

    /// A Hermitian operator; the property is checked.
    pub fn hermitian(space: Space, data: DMatrix<C64>) -> Result<Self> {
        let mut op = Self::new(space, data)?;
        check_hermitian(&op.data)?;
        op.hermitian = true;
        Ok(op)
    }

    pub fn on_layout(layout: HybridLayout, data: DMatrix<C64>) -> Result<Self> {
        Self::new(Space::full(layout), data)
    }

    pub fn hermitian_on_layout(layout: HybridLayout, data: DMatrix<C64>) -> Result<Self> {
        Self::hermitian(Space::full(layout), data)
    }

    pub fn identity(space: Space) -> Self {
        let n = space.dim();
        Self { space, data: DMatrix::identity(n, n), hermitian: true }
    }

    pub fn zeros(space: Space) -> Self {
        let n = space.dim();
        Self { space, data: DMatrix::zeros(n, n), hermitian: true }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn layout(&self) -> &HybridLayout {
        self.space.layout()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn data(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn into_data(self) -> DMatrix<C64> {
        self.data
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn adjoint(&self) -> Self {
        Self { space: self.space.clone(), data: self.data.adjoint(), hermitian: self.hermitian }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { space: self.space.clone(), data: &self.data * C64::new(s, 0.0), hermitian: self.hermitian }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        Ok(Self {
            space: self.space.clone(),
            data: &self.data + &other.data,
            hermitian: self.hermitian && other.hermitian,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        Self::new(self.space.clone(), &self.data * &other.data)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        Self::new(self.space.clone(), &self.data * &other.data - &other.data * &self.data)
    }

    /// Sum of Hermitian parts, keeping the Hermitian flag.
    pub fn sum<'a>(ops: impl IntoIterator<Item = &'a OperatorMatrix>) -> Result<Self> {
        let mut iter = ops.into_iter();
        let first = iter.next().ok_or_else(|| Error::InvalidParameter("empty operator sum".into()))?.clone();
        iter.try_fold(first, |acc, op| acc.add(op))
    }

    pub fn spectrum(&self) -> Result<HermitianSpectrum> {
        HermitianSpectrum::of(&self.data)
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.data * v
    }

    /// Compression of a full-space operator onto a subspace of the same layout.
    pub fn restrict(&self, target: &Space) -> Result<Self> {
        if self.space.layout() != target.layout() || !self.space.is_full() {
            return Err(Error::LayoutMismatch("restriction needs a full-space operator on the same layout".into()));
        }
        let idx = target.basis_indices();
        let data = DMatrix::from_fn(idx.len(), idx.len(), |i, j| self.data[(idx[i], idx[j])]);
        Ok(Self { space: target.clone(), data, hermitian: self.hermitian })
    }

    /// Largest entry of `[self, other]`, for commutation checks.
    pub fn commutator_defect(&self, other: &Self) -> Result<f64> {
        Ok(self.commutator(other)?.data.iter().map(|c| c.norm()).fold(0.0, f64::max))
    }
}

/// Kronecker product of raw matrices.
pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a.kronecker(b)
}

/// Per-slot offsets of every local index within the target slots.
pub(crate) fn local_offsets(layout: &HybridLayout, slots: &[usize]) -> Vec<usize> {
    let strides = layout.strides();
    let dims: Vec<usize> = slots.iter().map(|&s| layout.slot_dims()[s]).collect();
    let size: usize = dims.iter().product();
    (0..size)
        .map(|mut t| {
            let mut off = 0;
            for (k, &d) in dims.iter().enumerate().rev() {
                off += (t % d) * strides[slots[k]];
                t /= d;
            }
            off
        })
        .collect()
}

/// Base indices of all configurations of the non-target slots.
pub(crate) fn rest_bases(layout: &HybridLayout, slots: &[usize]) -> Vec<usize> {
    let strides = layout.strides();
    let mut bases = vec![0usize];
    for (slot, &d) in layout.slot_dims().iter().enumerate() {
        if slots.contains(&slot) {
            continue;
        }
        let stride = strides[slot];
        bases = bases.iter().flat_map(|&b| (0..d).map(move |x| b + x * stride)).collect();
    }
    bases
}

pub(crate) fn validate_slots(op_layout: &HybridLayout, slots: &[usize], layout: &HybridLayout) -> Result<()> {
    if slots.len() != op_layout.slot_count() {
        return Err(Error::LayoutMismatch(format!(
            "operator has {} slots, {} targets given",
            op_layout.slot_count(),
            slots.len()
        )));
    }
    for (k, &s) in slots.iter().enumerate() {
        if s >= layout.slot_count() || slots[..k].contains(&s) {
            return Err(Error::LayoutMismatch(format!("target slot {s} invalid or repeated")));
        }
        let same = match (op_layout.slot_kind(k), layout.slot_kind(s)) {
            (SlotKind::Qubit, SlotKind::Qubit) => true,
            (SlotKind::Qumode(a), SlotKind::Qumode(b)) => a == b,
            _ => false,
        };
        if !same {
            return Err(Error::LayoutMismatch(format!("slot {s} does not match operator slot {k}")));
        }
    }
    Ok(())
}

/// `op` acting on `slots` of `layout`, identity elsewhere.
pub fn embed(op: &OperatorMatrix, slots: &[usize], layout: &HybridLayout) -> Result<OperatorMatrix> {
    if !op.space().is_full() {
        return Err(Error::LayoutMismatch("cannot embed a subspace operator".into()));
    }
    validate_slots(op.layout(), slots, layout)?;
    let data = embed_raw(op.data(), slots, layout);
    let space = Space::full(layout.clone());
    if op.is_hermitian() {
        OperatorMatrix::hermitian(space, data)
    } else {
        OperatorMatrix::new(space, data)
    }
}

pub(crate) fn embed_raw(local: &DMatrix<C64>, slots: &[usize], layout: &HybridLayout) -> DMatrix<C64> {
    let n = layout.dim();
    let offsets = local_offsets(layout, slots);
    let mut out = DMatrix::zeros(n, n);
    for base in rest_bases(layout, slots) {
        for (c, &oc) in offsets.iter().enumerate() {
            for (r, &or) in offsets.iter().enumerate() {
                let v = local[(r, c)];
                if v != C64::new(0.0, 0.0) {
                    out[(base + or, base + oc)] = v;
                }
            }
        }
    }
    out
}

/// Applies a local matrix to the target slots of a full-layout amplitude vector.
pub(crate) fn apply_local_raw(local: &DMatrix<C64>, slots: &[usize], layout: &HybridLayout, v: &mut DVector<C64>) {
    let offsets = local_offsets(layout, slots);
    let mut x = DVector::zeros(offsets.len());
    for base in rest_bases(layout, slots) {
        for (t, &o) in offsets.iter().enumerate() {
            x[t] = v[base + o];
        }
        let y = local * &x;
        for (t, &o) in offsets.iter().enumerate() {
            v[base + o] = y[t];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid::layout::QumodeBasis;

    fn z() -> DMatrix<C64> {
        DMatrix::from_diagonal(&DVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]))
    }

    #[test]
    fn embed_z_on_first_qubit() {
        let op = OperatorMatrix::hermitian_on_layout(HybridLayout::qubits(1), z()).unwrap();
        let full = embed(&op, &[0], &HybridLayout::qubits(2)).unwrap();
        assert_eq!(full.data(), &kron(&z(), &DMatrix::identity(2, 2)));
    }

    #[test]
    fn embed_rejects_kind_mismatch() {
        let op = OperatorMatrix::hermitian_on_layout(HybridLayout::qubits(1), z()).unwrap();
        let l = HybridLayout::new(1, vec![QumodeBasis::Fock { n_max: 1 }]).unwrap();
        assert!(embed(&op, &[1], &l).is_err());
        assert!(embed(&op, &[0, 1], &l).is_err());
    }

    #[test]
    fn hermitian_flag_verified() {
        let m = DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);
        assert!(OperatorMatrix::hermitian_on_layout(HybridLayout::qubits(1), m.clone()).is_err());
        assert!(!OperatorMatrix::on_layout(HybridLayout::qubits(1), m).unwrap().is_hermitian());
    }

    #[test]
    fn restrict_picks_block() {
        let l = HybridLayout::qubits(2);
        let op = embed(&OperatorMatrix::hermitian_on_layout(HybridLayout::qubits(1), z()).unwrap(), &[1], &l).unwrap();
        let s = Space::subspace(l, vec![1, 2]).unwrap();
        let r = op.restrict(&s).unwrap();
        assert_eq!(r.data()[(0, 0)].re, -1.0);
        assert_eq!(r.data()[(1, 1)].re, 1.0);
    }
}
