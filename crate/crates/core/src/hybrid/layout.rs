//! Register layouts and the subspaces of their product basis.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest total dimension a layout may have.
pub const DEFAULT_DIM_BOUND: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq)]
pub enum QumodeBasis {
    Fock { n_max: usize },
    Angular { j_max: usize },
    RadialSlice { radius: f64, j_max: usize },
}

impl QumodeBasis {
    pub fn dim(&self) -> usize {
        match *self {
            QumodeBasis::Fock { n_max } => n_max + 1,
            QumodeBasis::Angular { j_max } | QumodeBasis::RadialSlice { j_max, .. } => 2 * j_max + 1,
        }
    }

    /// Angular-momentum label of basis index `k`; `None` for Fock modes.
    pub fn j_label(&self, k: usize) -> Option<i64> {
        match *self {
            QumodeBasis::Fock { .. } => None,
            QumodeBasis::Angular { j_max } | QumodeBasis::RadialSlice { j_max, .. } => Some(k as i64 - j_max as i64),
        }
    }

    pub fn j_index(&self, j: i64) -> Option<usize> {
        match *self {
            QumodeBasis::Fock { .. } => None,
            QumodeBasis::Angular { j_max } | QumodeBasis::RadialSlice { j_max, .. } => {
                let k = j + j_max as i64;
                (0..=2 * j_max as i64).contains(&k).then_some(k as usize)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            QumodeBasis::Fock { n_max } if n_max == 0 => Err(Error::InvalidParameter("Fock n_max must be >= 1".into())),
            QumodeBasis::RadialSlice { radius, .. } if !(radius > 0.0) => {
                Err(Error::InvalidParameter(format!("radial slice R = {radius}")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SlotKind<'a> {
    Qubit,
    Qumode(&'a QumodeBasis),
}

/// Qubits first, then qumodes; slot 0 is the most significant Kronecker factor.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridLayout {
    qubit_count: usize,
    qumodes: Vec<QumodeBasis>,
    dims: Vec<usize>,
}

impl HybridLayout {
    pub fn new(qubit_count: usize, qumodes: Vec<QumodeBasis>) -> Result<Self> {
        Self::with_bound(qubit_count, qumodes, DEFAULT_DIM_BOUND)
    }

    pub fn with_bound(qubit_count: usize, qumodes: Vec<QumodeBasis>, bound: usize) -> Result<Self> {
        for m in &qumodes {
            m.validate()?;
        }
        let dims: Vec<usize> = std::iter::repeat(2).take(qubit_count).chain(qumodes.iter().map(QumodeBasis::dim)).collect();
        let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
        match total {
            Some(t) if t <= bound => Ok(Self { qubit_count, qumodes, dims }),
            _ => Err(Error::InvalidParameter(format!("layout dimension exceeds bound {bound}"))),
        }
    }

    pub fn qubits(n: usize) -> Self {
        Self::new(n, vec![]).expect("qubit register")
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn qumodes(&self) -> &[QumodeBasis] {
        &self.qumodes
    }

    pub fn slot_count(&self) -> usize {
        self.dims.len()
    }

    pub fn slot_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Slot index of qumode `k`.
    pub fn qumode_slot(&self, k: usize) -> usize {
        self.qubit_count + k
    }

    pub fn slot_kind(&self, slot: usize) -> SlotKind<'_> {
        if slot < self.qubit_count {
            SlotKind::Qubit
        } else {
            SlotKind::Qumode(&self.qumodes[slot - self.qubit_count])
        }
    }

    pub fn qumode_basis(&self, slot: usize) -> Option<&QumodeBasis> {
        match self.slot_kind(slot) {
            SlotKind::Qumode(b) => Some(b),
            SlotKind::Qubit => None,
        }
    }

    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }

    /// Per-slot labels of a flat basis index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for (slot, &d) in self.dims.iter().enumerate().rev() {
            digits[slot] = index % d;
            index /= d;
        }
        digits
    }

    pub fn index_of(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&x, &d)| acc * d + x)
    }

    /// Layout made of the given slots, in the given order.
    ///
    /// Fails when a qubit slot follows a qumode slot, since layouts keep
    /// qubits first.
    pub fn sub_layout(&self, slots: &[usize]) -> Result<Self> {
        let mut qubits = 0;
        let mut modes = Vec::new();
        for &s in slots {
            if s >= self.slot_count() {
                return Err(Error::LayoutMismatch(format!("slot {s} out of range")));
            }
            match self.slot_kind(s) {
                SlotKind::Qubit if modes.is_empty() => qubits += 1,
                SlotKind::Qubit => return Err(Error::LayoutMismatch("qubit slot after a qumode slot".into())),
                SlotKind::Qumode(b) => modes.push(b.clone()),
            }
        }
        Self::new(qubits, modes)
    }

    /// This layout with one extra qubit appended after the existing qubits.
    pub fn with_ancilla_qubit(&self) -> Self {
        Self::new(self.qubit_count + 1, self.qumodes.clone()).expect("ancilla layout")
    }

    /// This layout with one extra qumode appended last.
    pub fn with_ancilla_qumode(&self, basis: QumodeBasis) -> Result<Self> {
        let mut modes = self.qumodes.clone();
        modes.push(basis);
        Self::new(self.qubit_count, modes)
    }
}

/// A layout together with an optional subset of its product basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Space {
    layout: HybridLayout,
    basis: Option<Arc<Vec<usize>>>,
}

impl Space {
    pub fn full(layout: HybridLayout) -> Self {
        Self { layout, basis: None }
    }

    pub fn subspace(layout: HybridLayout, indices: Vec<usize>) -> Result<Self> {
        let dim = layout.dim();
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.last().is_some_and(|&i| i >= dim) {
            return Err(Error::InvalidParameter("subspace indices must be increasing and in range".into()));
        }
        Ok(Self { layout, basis: Some(Arc::new(indices)) })
    }

    pub fn layout(&self) -> &HybridLayout {
        &self.layout
    }

    pub fn is_full(&self) -> bool {
        self.basis.is_none()
    }

    pub fn dim(&self) -> usize {
        self.basis.as_ref().map_or(self.layout.dim(), |b| b.len())
    }

    /// Layout index of local basis vector `k`.
    pub fn full_index(&self, k: usize) -> usize {
        self.basis.as_ref().map_or(k, |b| b[k])
    }

    pub fn basis_indices(&self) -> Vec<usize> {
        (0..self.dim()).map(|k| self.full_index(k)).collect()
    }

    /// Local position of layout index `i`, if it belongs to the space.
    pub fn local_index(&self, i: usize) -> Option<usize> {
        match &self.basis {
            None => (i < self.layout.dim()).then_some(i),
            Some(b) => b.binary_search(&i).ok(),
        }
    }

    pub fn ensure_same(&self, other: &Space) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::LayoutMismatch("operands live on different spaces".into()))
        }
    }

    /// Subspace of `layout` spanned by products of the given qubit-register
    /// states with every qumode basis state.
    pub fn qubit_sector(layout: HybridLayout, qubit_states: &[usize]) -> Result<Self> {
        let mode_dim: usize = layout.qumodes().iter().map(QumodeBasis::dim).product();
        let mut states = qubit_states.to_vec();
        states.sort_unstable();
        let indices = states.iter().flat_map(|&s| (0..mode_dim).map(move |m| s * mode_dim + m)).collect();
        Self::subspace(layout, indices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_strides() {
        let l = HybridLayout::new(2, vec![QumodeBasis::Fock { n_max: 2 }, QumodeBasis::Angular { j_max: 1 }]).unwrap();
        assert_eq!(l.dim(), 4 * 3 * 3);
        assert_eq!(l.strides(), vec![18, 9, 3, 1]);
        assert_eq!(l.digits(l.index_of(&[1, 0, 2, 1])), vec![1, 0, 2, 1]);
    }

    #[test]
    fn bound_enforced() {
        assert!(HybridLayout::with_bound(10, vec![], 512).is_err());
    }

    #[test]
    fn invalid_bases_rejected() {
        assert!(HybridLayout::new(0, vec![QumodeBasis::Fock { n_max: 0 }]).is_err());
        assert!(HybridLayout::new(0, vec![QumodeBasis::RadialSlice { radius: 0.0, j_max: 2 }]).is_err());
    }

    #[test]
    fn angular_labels() {
        let b = QumodeBasis::Angular { j_max: 2 };
        assert_eq!(b.j_label(0), Some(-2));
        assert_eq!(b.j_index(2), Some(4));
        assert_eq!(b.j_index(3), None);
    }

    #[test]
    fn sub_layout_keeps_qubits_first() {
        let l = HybridLayout::new(1, vec![QumodeBasis::Fock { n_max: 3 }]).unwrap();
        assert!(l.sub_layout(&[1, 0]).is_err());
        assert_eq!(l.sub_layout(&[0, 1]).unwrap(), l);
    }

    #[test]
    fn qubit_sector_indices() {
        let l = HybridLayout::new(2, vec![QumodeBasis::Fock { n_max: 1 }]).unwrap();
        let s = Space::qubit_sector(l, &[2, 1]).unwrap();
        assert_eq!(s.basis_indices(), vec![2, 3, 4, 5]);
        assert_eq!(s.local_index(4), Some(2));
    }
}
