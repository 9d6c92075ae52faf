//! Amplitude vectors over a layout (or a subspace of one).

use nalgebra::DVector;

use super::fock::{quadrature_eigenvector, Quadrature};
use super::layout::{HybridLayout, QumodeBasis, SlotKind, Space};
use super::operator::{apply_local_raw, local_offsets, rest_bases, OperatorMatrix};
use crate::error::{Error, Result};
use crate::numerics::linalg::C64;

/// Label of a single-slot basis vector used in projections and preparations.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum BasisLabel {
    Qubit(u8),
    Fock(usize),
    Angular(i64),
    /// Truncated improper quadrature eigenvector (ideal homodyne outcome).
    Homodyne { quadrature: Quadrature, value: f64 },
}

/// Vector in the slot's basis representing `label`.
pub fn label_vector(layout: &HybridLayout, slot: usize, label: BasisLabel) -> Result<DVector<C64>> {
    if slot >= layout.slot_count() {
        return Err(Error::LayoutMismatch(format!("slot {slot} out of range")));
    }
    let dim = layout.slot_dims()[slot];
    let unit = |k: usize| {
        let mut v = DVector::zeros(dim);
        v[k] = C64::new(1.0, 0.0);
        v
    };
    match (layout.slot_kind(slot), label) {
        (SlotKind::Qubit, BasisLabel::Qubit(b)) if b < 2 => Ok(unit(b as usize)),
        (SlotKind::Qumode(QumodeBasis::Fock { n_max }), BasisLabel::Fock(n)) if n <= *n_max => Ok(unit(n)),
        (SlotKind::Qumode(QumodeBasis::Fock { n_max }), BasisLabel::Homodyne { quadrature, value }) => {
            Ok(quadrature_eigenvector(quadrature, value, *n_max))
        }
        (SlotKind::Qumode(b), BasisLabel::Angular(j)) => {
            b.j_index(j).map(unit).ok_or_else(|| Error::LayoutMismatch(format!("angular label {j} not in slot {slot}")))
        }
        _ => Err(Error::LayoutMismatch(format!("label {label:?} does not fit slot {slot}"))),
    }
}

#[derive(Clone, Debug)]
pub struct HybridState {
    space: Space,
    amplitudes: DVector<C64>,
}

impl HybridState {
    pub fn new(space: Space, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::LayoutMismatch(format!(
                "{} amplitudes for a space of dimension {}",
                amplitudes.len(),
                space.dim()
            )));
        }
        Ok(Self { space, amplitudes })
    }

    pub fn on_layout(layout: HybridLayout, amplitudes: DVector<C64>) -> Result<Self> {
        Self::new(Space::full(layout), amplitudes)
    }

    /// Product basis state with the given per-slot labels.
    pub fn basis(layout: HybridLayout, digits: &[usize]) -> Result<Self> {
        if digits.len() != layout.slot_count() || digits.iter().zip(layout.slot_dims()).any(|(&x, &d)| x >= d) {
            return Err(Error::LayoutMismatch("basis labels do not fit layout".into()));
        }
        let mut v = DVector::zeros(layout.dim());
        v[layout.index_of(digits)] = C64::new(1.0, 0.0);
        Self::on_layout(layout, v)
    }

    /// Normalized tensor product of per-slot vectors.
    pub fn product(layout: HybridLayout, factors: &[DVector<C64>]) -> Result<Self> {
        if factors.len() != layout.slot_count() || factors.iter().zip(layout.slot_dims()).any(|(f, &d)| f.len() != d) {
            return Err(Error::LayoutMismatch("product factors do not fit layout".into()));
        }
        let mut v = DVector::from_element(1, C64::new(1.0, 0.0));
        for f in factors {
            v = v.kronecker(f);
        }
        let mut s = Self::on_layout(layout, v)?;
        s.normalize()?;
        Ok(s)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn layout(&self) -> &HybridLayout {
        self.space.layout()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<C64> {
        self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-10
    }

    /// Rescales to unit norm; returns the norm before rescaling.
    pub fn normalize(&mut self) -> Result<f64> {
        let n = self.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ProjectionFailed { probability: n * n });
        }
        self.amplitudes /= C64::new(n, 0.0);
        Ok(n)
    }

    pub fn normalized(mut self) -> Result<Self> {
        self.normalize()?;
        Ok(self)
    }

    pub fn inner(&self, other: &HybridState) -> Result<C64> {
        self.space.ensure_same(&other.space)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `⟨ψ|O|ψ⟩ / ⟨ψ|ψ⟩` for Hermitian `O`.
    pub fn expectation(&self, op: &OperatorMatrix) -> Result<f64> {
        if !op.is_hermitian() {
            return Err(Error::InvalidParameter("expectation needs a Hermitian operator".into()));
        }
        Ok(self.matrix_element(op)?.re / self.amplitudes.norm_squared())
    }

    /// `⟨ψ|O|ψ⟩` without normalization.
    pub fn matrix_element(&self, op: &OperatorMatrix) -> Result<C64> {
        self.space.ensure_same(op.space())?;
        Ok(self.amplitudes.dotc(&(op.data() * &self.amplitudes)))
    }

    pub fn apply(&self, op: &OperatorMatrix) -> Result<HybridState> {
        self.space.ensure_same(op.space())?;
        Self::new(self.space.clone(), op.data() * &self.amplitudes)
    }

    /// Applies a matrix acting on the listed slots (full-layout states only).
    pub fn apply_local(&mut self, local: &nalgebra::DMatrix<C64>, slots: &[usize]) -> Result<()> {
        self.require_full()?;
        let size: usize = slots.iter().map(|&s| self.layout().slot_dims()[s]).product();
        if local.nrows() != size || local.ncols() != size {
            return Err(Error::LayoutMismatch("local matrix does not fit target slots".into()));
        }
        let layout = self.layout().clone();
        apply_local_raw(local, slots, &layout, &mut self.amplitudes);
        Ok(())
    }

    /// Component along `label` on `slot`, same layout; probability is its squared norm
    /// relative to the input.
    pub fn project(&self, slot: usize, label: BasisLabel) -> Result<(HybridState, f64)> {
        self.require_full()?;
        let phi = label_vector(self.layout(), slot, label)?;
        let phi = &phi / C64::new(phi.norm(), 0.0);
        let local = &phi * phi.adjoint();
        let mut out = self.clone();
        out.apply_local(&local, &[slot])?;
        let p = out.amplitudes.norm_squared() / self.amplitudes.norm_squared();
        Ok((out, p))
    }

    /// Contracts `slot` with the bra `⟨label|`, removing the slot from the layout.
    /// Returns the unnormalized remainder and its squared norm relative to the input.
    pub fn contract(&self, slot: usize, label: BasisLabel) -> Result<(HybridState, f64)> {
        self.require_full()?;
        let phi = label_vector(self.layout(), slot, label)?;
        let layout = self.layout();
        let rest: Vec<usize> = (0..layout.slot_count()).filter(|&s| s != slot).collect();
        let new_layout = layout.sub_layout(&rest)?;
        let offsets = local_offsets(layout, &[slot]);
        let amps: Vec<C64> = rest_bases(layout, &[slot])
            .into_iter()
            .map(|base| offsets.iter().zip(phi.iter()).map(|(&o, f)| f.conj() * self.amplitudes[base + o]).sum())
            .collect();
        let out = Self::on_layout(new_layout, DVector::from_vec(amps))?;
        let p = out.amplitudes.norm_squared() / self.amplitudes.norm_squared();
        Ok((out, p))
    }

    /// Tensor product with a vector on a new last qubit slot (after existing qubits).
    pub fn attach_qubit(&self, ancilla: &DVector<C64>) -> Result<HybridState> {
        self.require_full()?;
        let layout = self.layout().with_ancilla_qubit();
        let mode_dim: usize = self.layout().qumodes().iter().map(QumodeBasis::dim).product();
        let qubit_dim = self.dim() / mode_dim;
        let mut v = DVector::zeros(layout.dim());
        for q in 0..qubit_dim {
            for (b, a) in ancilla.iter().enumerate() {
                for m in 0..mode_dim {
                    v[(q * 2 + b) * mode_dim + m] = self.amplitudes[q * mode_dim + m] * a;
                }
            }
        }
        Self::on_layout(layout, v)
    }

    /// Tensor product with a vector on a new last qumode slot.
    pub fn attach_qumode(&self, basis: QumodeBasis, ancilla: &DVector<C64>) -> Result<HybridState> {
        self.require_full()?;
        if ancilla.len() != basis.dim() {
            return Err(Error::LayoutMismatch("ancilla vector does not fit its basis".into()));
        }
        let layout = self.layout().with_ancilla_qumode(basis)?;
        Self::on_layout(layout, self.amplitudes.kronecker(ancilla))
    }

    /// The same vector on the full layout (zeros off the subspace).
    pub fn to_full(&self) -> HybridState {
        let mut v = DVector::zeros(self.layout().dim());
        for (k, a) in self.amplitudes.iter().enumerate() {
            v[self.space.full_index(k)] = *a;
        }
        Self { space: Space::full(self.layout().clone()), amplitudes: v }
    }

    /// Component on a subspace of the same layout.
    pub fn restrict_to(&self, target: &Space) -> Result<HybridState> {
        if target.layout() != self.layout() {
            return Err(Error::LayoutMismatch("restriction target has another layout".into()));
        }
        let full = self.to_full();
        let v = DVector::from_iterator(target.dim(), (0..target.dim()).map(|k| full.amplitudes[target.full_index(k)]));
        Self::new(target.clone(), v)
    }

    /// Largest probability weight on the top two Fock levels of any Fock qumode.
    pub fn leakage(&self) -> f64 {
        let layout = self.layout();
        let total = self.amplitudes.norm_squared();
        let mut worst = 0.0_f64;
        for (k, basis) in layout.qumodes().iter().enumerate() {
            if let QumodeBasis::Fock { n_max } = basis {
                let slot = layout.qumode_slot(k);
                let stride = layout.strides()[slot];
                let mut w = 0.0;
                for (i, a) in self.amplitudes.iter().enumerate() {
                    let n = (self.space.full_index(i) / stride) % (n_max + 1);
                    if n + 2 > *n_max {
                        w += a.norm_sqr();
                    }
                }
                worst = worst.max(w / total);
            }
        }
        worst
    }

    fn require_full(&self) -> Result<()> {
        if self.space.is_full() {
            Ok(())
        } else {
            Err(Error::LayoutMismatch("operation needs a full-layout state".into()))
        }
    }
}
