//! Ordered gate sequences with projections, their text form, and their action on states.

use std::fmt;

use nalgebra::DMatrix;

use super::local::{local_gate, LocalGate};
use super::spec::{fmt_number, parse_slots, GateKind, GateSpec};
use crate::error::{Error, Result};
use crate::hybrid::fock::Quadrature;
use crate::hybrid::layout::{HybridLayout, Space};
use crate::hybrid::operator::{embed_raw, OperatorMatrix};
use crate::hybrid::state::{label_vector, BasisLabel, HybridState};
use crate::numerics::linalg::C64;

/// Smallest projection probability treated as possible.
pub const MIN_PROBABILITY: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub enum CircuitOp {
    Gate(GateSpec),
    /// Ideal measurement with the given outcome; the state is renormalized.
    Projection { slot: usize, label: BasisLabel },
    /// Resets a slot that must be in its `|0⟩` state to `label`.
    AncillaPrep { slot: usize, label: BasisLabel },
}

impl CircuitOp {
    fn slots(&self) -> Vec<usize> {
        match self {
            CircuitOp::Gate(g) => g.targets.clone(),
            CircuitOp::Projection { slot, .. } | CircuitOp::AncillaPrep { slot, .. } => vec![*slot],
        }
    }
}

/// Operations in time order. Slots are abstract until the circuit meets a layout.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    ops: Vec<CircuitOp>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: CircuitOp) -> &mut Self {
        self.ops.push(op);
        self
    }

    /// Appends a gate; panics on an arity mismatch, which is a programming error here.
    pub fn gate(&mut self, kind: GateKind, targets: &[usize]) -> &mut Self {
        let spec = GateSpec::new(kind, targets).unwrap_or_else(|e| panic!("{e}"));
        self.push(CircuitOp::Gate(spec))
    }

    pub fn project(&mut self, slot: usize, label: BasisLabel) -> &mut Self {
        self.push(CircuitOp::Projection { slot, label })
    }

    pub fn prepare(&mut self, slot: usize, label: BasisLabel) -> &mut Self {
        self.push(CircuitOp::AncillaPrep { slot, label })
    }

    pub fn append(&mut self, other: &Circuit) -> &mut Self {
        self.ops.extend(other.ops.iter().cloned());
        self
    }

    pub fn is_unitary(&self) -> bool {
        self.ops.iter().all(|op| matches!(op, CircuitOp::Gate(_)))
    }

    /// Inverse of a gate-only circuit.
    pub fn inverse(&self) -> Result<Circuit> {
        let ops = self
            .ops
            .iter()
            .rev()
            .map(|op| match op {
                CircuitOp::Gate(g) => Ok(CircuitOp::Gate(g.inverse())),
                _ => Err(Error::InvalidParameter("circuit with projections has no inverse".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Circuit { ops })
    }

    /// The same circuit with abstract slot `k` moved to `map[k]`.
    pub fn remap(&self, map: &[usize]) -> Result<Circuit> {
        let move_slot = |s: usize| map.get(s).copied().ok_or_else(|| Error::LayoutMismatch(format!("slot {s} not in remap table")));
        let ops = self
            .ops
            .iter()
            .map(|op| {
                Ok(match op {
                    CircuitOp::Gate(g) => {
                        let t = g.targets.iter().map(|&s| move_slot(s)).collect::<Result<Vec<_>>>()?;
                        CircuitOp::Gate(GateSpec::new(g.kind, &t)?)
                    }
                    CircuitOp::Projection { slot, label } => CircuitOp::Projection { slot: move_slot(*slot)?, label: *label },
                    CircuitOp::AncillaPrep { slot, label } => CircuitOp::AncillaPrep { slot: move_slot(*slot)?, label: *label },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Circuit { ops })
    }

    /// Largest slot index referenced, plus one.
    pub fn width(&self) -> usize {
        self.ops.iter().flat_map(|op| op.slots()).max().map_or(0, |m| m + 1)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the line-oriented text form; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut c = Circuit::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let op = if line.starts_with("PROJ(") || line.starts_with("PREP(") {
                let (head, slots) = line.split_once('@').ok_or_else(|| Error::Parse(format!("missing '@' in `{line}`")))?;
                let slot = match parse_slots(slots)?.as_slice() {
                    [s] => *s,
                    _ => return Err(Error::Parse(format!("one slot expected in `{line}`"))),
                };
                let label = parse_label(head.trim())?;
                if line.starts_with("PROJ(") {
                    CircuitOp::Projection { slot, label }
                } else {
                    CircuitOp::AncillaPrep { slot, label }
                }
            } else {
                CircuitOp::Gate(GateSpec::parse(line)?)
            };
            c.push(op);
        }
        Ok(c)
    }
}

fn label_text(label: &BasisLabel) -> String {
    match label {
        BasisLabel::Qubit(b) => format!("qubit,{b}"),
        BasisLabel::Fock(n) => format!("fock,{n}"),
        BasisLabel::Angular(j) => format!("angular,{j}"),
        BasisLabel::Homodyne { quadrature, value } => {
            let q = match quadrature {
                Quadrature::Q => "q",
                Quadrature::P => "p",
            };
            format!("homodyne_{q},{}", fmt_number(*value))
        }
    }
}

fn parse_label(head: &str) -> Result<BasisLabel> {
    let open = head.find('(').ok_or_else(|| Error::Parse(format!("bad label `{head}`")))?;
    let inner = head[open + 1..].strip_suffix(')').ok_or_else(|| Error::Parse(format!("bad label `{head}`")))?;
    let (kind, value) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("bad label `{head}`")))?;
    let value = value.trim();
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("label value `{value}`: {e}"));
    Ok(match kind.trim() {
        "qubit" => BasisLabel::Qubit(value.parse().map_err(|e| bad(&e))?),
        "fock" => BasisLabel::Fock(value.parse().map_err(|e| bad(&e))?),
        "angular" => BasisLabel::Angular(value.parse().map_err(|e| bad(&e))?),
        "homodyne_q" => BasisLabel::Homodyne { quadrature: Quadrature::Q, value: value.parse().map_err(|e| bad(&e))? },
        "homodyne_p" => BasisLabel::Homodyne { quadrature: Quadrature::P, value: value.parse().map_err(|e| bad(&e))? },
        other => return Err(Error::Parse(format!("unknown label kind `{other}`"))),
    })
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            match op {
                CircuitOp::Gate(g) => writeln!(f, "{g}")?,
                CircuitOp::Projection { slot, label } => writeln!(f, "PROJ({}) @ {slot}", label_text(label))?,
                CircuitOp::AncillaPrep { slot, label } => writeln!(f, "PREP({}) @ {slot}", label_text(label))?,
            }
        }
        Ok(())
    }
}

/// Matrix of a single gate on the full layout.
pub fn gate_matrix(spec: &GateSpec, layout: &HybridLayout) -> Result<OperatorMatrix> {
    let local = local_gate(spec, layout)?;
    OperatorMatrix::on_layout(layout.clone(), embed_raw(&local.matrix(), &spec.targets, layout))
}

/// Applies every operation to each column of `block`; returns the product of
/// projection probabilities per column. Columns are renormalized after each projection.
pub(crate) fn apply_ops(circuit: &Circuit, layout: &HybridLayout, block: &mut DMatrix<C64>) -> Result<Vec<f64>> {
    let mut probability = vec![1.0; block.ncols()];
    for op in circuit.ops() {
        match op {
            CircuitOp::Gate(spec) => {
                let gate: std::sync::Arc<LocalGate> = local_gate(spec, layout)?;
                gate.apply(&spec.targets, layout, block);
            }
            CircuitOp::Projection { slot, label } => {
                let phi = label_vector(layout, *slot, *label)?;
                let phi = &phi / C64::new(phi.norm(), 0.0);
                let before: Vec<f64> = block.column_iter().map(|c| c.norm_squared()).collect();
                LocalGate::Dense(&phi * phi.adjoint()).apply(&[*slot], layout, block);
                for (k, mut col) in block.column_iter_mut().enumerate() {
                    let p = col.norm_squared() / before[k];
                    if !(p >= MIN_PROBABILITY) {
                        return Err(Error::ProjectionFailed { probability: p });
                    }
                    col /= C64::new(col.norm(), 0.0);
                    probability[k] *= p;
                }
            }
            CircuitOp::AncillaPrep { slot, label } => {
                let zero = match layout.slot_kind(*slot) {
                    crate::hybrid::layout::SlotKind::Qubit => BasisLabel::Qubit(0),
                    _ => BasisLabel::Fock(0),
                };
                let e0 = label_vector(layout, *slot, zero)?;
                let phi = label_vector(layout, *slot, *label)?;
                let phi = &phi / C64::new(phi.norm(), 0.0);
                let before: Vec<f64> = block.column_iter().map(|c| c.norm_squared()).collect();
                LocalGate::Dense(&phi * e0.adjoint()).apply(&[*slot], layout, block);
                for (k, col) in block.column_iter().enumerate() {
                    let kept = col.norm_squared() / before[k];
                    if (kept - 1.0).abs() > 1e-9 {
                        return Err(Error::InvalidParameter(format!("ancilla slot {slot} not in |0⟩ (weight {kept})")));
                    }
                }
            }
        }
    }
    Ok(probability)
}

/// Runs `circuit` on a full-layout state; returns the normalized output and the
/// product of all projection probabilities.
pub fn apply_circuit(state: &HybridState, circuit: &Circuit) -> Result<(HybridState, f64)> {
    if !state.space().is_full() {
        return Err(Error::LayoutMismatch("circuits act on full-layout states".into()));
    }
    let layout = state.layout().clone();
    let mut block = DMatrix::from_column_slice(state.dim(), 1, state.amplitudes().as_slice());
    let p = apply_ops(circuit, &layout, &mut block)?[0];
    let out = HybridState::new(Space::full(layout), block.column(0).into_owned())?;
    Ok((out, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid::layout::QumodeBasis;

    #[test]
    fn empty_circuit_is_identity() {
        let s = HybridState::basis(HybridLayout::qubits(2), &[1, 0]).unwrap();
        let (out, p) = apply_circuit(&s, &Circuit::new()).unwrap();
        assert_eq!(p, 1.0);
        assert_eq!(out.amplitudes(), s.amplitudes());
    }

    #[test]
    fn plus_state_projection() {
        let s = HybridState::basis(HybridLayout::qubits(1), &[0]).unwrap();
        let mut c = Circuit::new();
        c.gate(GateKind::Hadamard, &[0]).project(0, BasisLabel::Qubit(0));
        let (out, p) = apply_circuit(&s, &c).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert!((out.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn impossible_projection_fails() {
        let s = HybridState::basis(HybridLayout::qubits(1), &[0]).unwrap();
        let mut c = Circuit::new();
        c.project(0, BasisLabel::Qubit(1));
        assert!(matches!(apply_circuit(&s, &c), Err(Error::ProjectionFailed { .. })));
    }

    #[test]
    fn ancilla_prep_requires_reset_slot() {
        let layout = HybridLayout::new(1, vec![QumodeBasis::Fock { n_max: 3 }]).unwrap();
        let s = HybridState::basis(layout.clone(), &[0, 0]).unwrap();
        let mut c = Circuit::new();
        c.prepare(1, BasisLabel::Fock(2));
        let (out, _) = apply_circuit(&s, &c).unwrap();
        assert!((out.amplitudes()[2].re - 1.0).abs() < 1e-15);
        let busy = HybridState::basis(layout, &[0, 1]).unwrap();
        assert!(apply_circuit(&busy, &c).is_err());
    }

    #[test]
    fn controlled_displacement_branches() {
        let n = 20;
        let z = C64::new(0.4, 0.2);
        let layout = HybridLayout::new(1, vec![QumodeBasis::Fock { n_max: n }]).unwrap();
        let cd = gate_matrix(&GateSpec::new(GateKind::CondDisplace(z), &[0, 1]).unwrap(), &layout).unwrap();
        let single = HybridLayout::new(0, vec![QumodeBasis::Fock { n_max: n }]).unwrap();
        let plus = gate_matrix(&GateSpec::new(GateKind::Displace(z), &[0]).unwrap(), &single).unwrap();
        let minus = gate_matrix(&GateSpec::new(GateKind::Displace(-z), &[0]).unwrap(), &single).unwrap();
        let d = n + 1;
        for r in 0..d {
            for c in 0..d {
                assert!((cd.data()[(r, c)] - plus.data()[(r, c)]).norm() < 1e-14);
                assert!((cd.data()[(d + r, d + c)] - minus.data()[(r, c)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn text_roundtrip_with_labels() {
        let mut c = Circuit::new();
        c.gate(GateKind::Squeeze(C64::new(0.0, 0.5)), &[2])
            .prepare(1, BasisLabel::Fock(1))
            .project(2, BasisLabel::Homodyne { quadrature: Quadrature::P, value: 0.0 })
            .project(0, BasisLabel::Qubit(1))
            .gate(GateKind::Cnot, &[0, 1]);
        let text = c.to_text();
        assert!(text.contains("PROJ(homodyne_p,"));
        let back = Circuit::parse(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.len(), 5);
    }

    #[test]
    fn remap_moves_targets() {
        let mut c = Circuit::new();
        c.gate(GateKind::BeamSplitter(C64::new(0.1, 0.0)), &[0, 1]);
        let r = c.remap(&[4, 2]).unwrap();
        match &r.ops()[0] {
            CircuitOp::Gate(g) => assert_eq!(g.targets, vec![4, 2]),
            _ => unreachable!(),
        }
        assert!(c.remap(&[3]).is_err());
    }
}
