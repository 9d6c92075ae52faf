//! Gate descriptions and their one-line text form `NAME(param,...) @ slot,slot`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::linalg::C64;

/// Gate kinds with their parameters. Conventions (all exponents as written):
///
/// * `R(θ) = e^{iθn}`, `F = R(π/2)`, `K(κ) = e^{iκn²}`, `CK(κ) = e^{iκ n_a n_b}`
/// * `D(z) = e^{z a† − z* a}`, `S(z) = e^{(z* a² − z a†²)/2}`, `BS(z) = e^{z a†b − z* a b†}`
/// * `P(θ) = e^{iθq²/2}`, `V(θ) = e^{iθq³/3}`
/// * `RSB(z) = e^{i(z a X⁺ + z* a† X⁻)}`, `BSB(z) = e^{i(z a† X⁺ + z* a X⁻)}`
/// * `CR(θ) = e^{iθZn}`, `CD(z) = e^{Z(z a† − z* a)}`, `CS(z) = e^{Z(z* a² − z a†²)/2}`,
///   `CBS(z) = e^{Z(z a†b − z* a b†)}`
/// * `Rx/Ry/Rz(θ) = e^{iθσ/2}`; `CNOT` targets (control, target)
/// * `ENT(s) = e^{−is q_μ² q_a}` on (μ, a), the cubic entangler used as a primitive
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    PauliX,
    PauliY,
    PauliZ,
    Hadamard,
    PhaseS,
    PhaseSdg,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    Cnot,
    Rotation(f64),
    Fourier,
    Displace(C64),
    Squeeze(C64),
    BeamSplitter(C64),
    Kerr(f64),
    CrossKerr(f64),
    QuadraticPhase(f64),
    CubicPhase(f64),
    RedSideband(C64),
    BlueSideband(C64),
    CondRotation(f64),
    CondDisplace(C64),
    CondSqueeze(C64),
    CondBeamSplitter(C64),
    Swap,
    Entangler(f64),
}

/// Which kinds of slots a gate acts on, in target order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Qubit,
    TwoQubits,
    Qumode,
    TwoQumodes,
    QubitQumode,
    QubitTwoQumodes,
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        use GateKind::*;
        match self {
            PauliX => "X",
            PauliY => "Y",
            PauliZ => "Z",
            Hadamard => "H",
            PhaseS => "S_GATE",
            PhaseSdg => "SDG",
            Rx(_) => "RX",
            Ry(_) => "RY",
            Rz(_) => "RZ",
            Cnot => "CNOT",
            Rotation(_) => "R",
            Fourier => "F",
            Displace(_) => "D",
            Squeeze(_) => "S",
            BeamSplitter(_) => "BS",
            Kerr(_) => "K",
            CrossKerr(_) => "CK",
            QuadraticPhase(_) => "P",
            CubicPhase(_) => "V",
            RedSideband(_) => "RSB",
            BlueSideband(_) => "BSB",
            CondRotation(_) => "CR",
            CondDisplace(_) => "CD",
            CondSqueeze(_) => "CS",
            CondBeamSplitter(_) => "CBS",
            Swap => "SWAP",
            Entangler(_) => "ENT",
        }
    }

    pub fn arity(&self) -> Arity {
        use GateKind::*;
        match self {
            PauliX | PauliY | PauliZ | Hadamard | PhaseS | PhaseSdg | Rx(_) | Ry(_) | Rz(_) => Arity::Qubit,
            Cnot => Arity::TwoQubits,
            Rotation(_) | Fourier | Displace(_) | Squeeze(_) | Kerr(_) | QuadraticPhase(_) | CubicPhase(_) => {
                Arity::Qumode
            }
            BeamSplitter(_) | CrossKerr(_) | Swap | Entangler(_) => Arity::TwoQumodes,
            RedSideband(_) | BlueSideband(_) | CondRotation(_) | CondDisplace(_) | CondSqueeze(_) => Arity::QubitQumode,
            CondBeamSplitter(_) => Arity::QubitTwoQumodes,
        }
    }

    /// True when the gate commutes with the total photon number of its qumodes.
    pub fn preserves_number(&self) -> bool {
        use GateKind::*;
        matches!(
            self,
            Rotation(_) | Fourier | Kerr(_) | CrossKerr(_) | CondRotation(_) | BeamSplitter(_) | CondBeamSplitter(_) | Swap
        ) || self.arity() == Arity::Qubit
            || self.arity() == Arity::TwoQubits
    }

    /// The inverse gate.
    pub fn inverse(&self) -> GateKind {
        use GateKind::*;
        match *self {
            PhaseS => PhaseSdg,
            PhaseSdg => PhaseS,
            Rx(t) => Rx(-t),
            Ry(t) => Ry(-t),
            Rz(t) => Rz(-t),
            Rotation(t) => Rotation(-t),
            Fourier => Rotation(-std::f64::consts::FRAC_PI_2),
            Displace(z) => Displace(-z),
            Squeeze(z) => Squeeze(-z),
            BeamSplitter(z) => BeamSplitter(-z),
            Kerr(k) => Kerr(-k),
            CrossKerr(k) => CrossKerr(-k),
            QuadraticPhase(t) => QuadraticPhase(-t),
            CubicPhase(t) => CubicPhase(-t),
            RedSideband(z) => RedSideband(-z),
            BlueSideband(z) => BlueSideband(-z),
            CondRotation(t) => CondRotation(-t),
            CondDisplace(z) => CondDisplace(-z),
            CondSqueeze(z) => CondSqueeze(-z),
            CondBeamSplitter(z) => CondBeamSplitter(-z),
            Entangler(s) => Entangler(-s),
            other => other,
        }
    }

    fn params(&self) -> Vec<f64> {
        use GateKind::*;
        match *self {
            Rx(t) | Ry(t) | Rz(t) | Rotation(t) | Kerr(t) | CrossKerr(t) | QuadraticPhase(t) | CubicPhase(t)
            | CondRotation(t) | Entangler(t) => vec![t],
            Displace(z) | Squeeze(z) | BeamSplitter(z) | RedSideband(z) | BlueSideband(z) | CondDisplace(z)
            | CondSqueeze(z) | CondBeamSplitter(z) => {
                let (r, phi) = polar(z);
                vec![r, phi]
            }
            _ => vec![],
        }
    }

    fn from_parts(name: &str, p: &[f64]) -> Result<GateKind> {
        use GateKind::*;
        let real = |k: fn(f64) -> GateKind| -> Result<GateKind> {
            match p {
                [t] => Ok(k(*t)),
                _ => Err(Error::Parse(format!("{name} takes one parameter"))),
            }
        };
        let complex = |k: fn(C64) -> GateKind| -> Result<GateKind> {
            match p {
                [r, phi] if *r >= 0.0 => Ok(k(C64::from_polar(*r, *phi))),
                _ => Err(Error::Parse(format!("{name} takes (theta >= 0, phi)"))),
            }
        };
        let bare = |k: GateKind| -> Result<GateKind> {
            if p.is_empty() {
                Ok(k)
            } else {
                Err(Error::Parse(format!("{name} takes no parameters")))
            }
        };
        match name {
            "X" => bare(PauliX),
            "Y" => bare(PauliY),
            "Z" => bare(PauliZ),
            "H" => bare(Hadamard),
            "S_GATE" => bare(PhaseS),
            "SDG" => bare(PhaseSdg),
            "RX" => real(Rx),
            "RY" => real(Ry),
            "RZ" => real(Rz),
            "CNOT" => bare(Cnot),
            "R" => real(Rotation),
            "F" => bare(Fourier),
            "D" => complex(Displace),
            "S" => complex(Squeeze),
            "BS" => complex(BeamSplitter),
            "K" => real(Kerr),
            "CK" => real(CrossKerr),
            "P" => real(QuadraticPhase),
            "V" => real(CubicPhase),
            "RSB" => complex(RedSideband),
            "BSB" => complex(BlueSideband),
            "CR" => real(CondRotation),
            "CD" => complex(CondDisplace),
            "CS" => complex(CondSqueeze),
            "CBS" => complex(CondBeamSplitter),
            "SWAP" => bare(Swap),
            "ENT" => real(Entangler),
            other => Err(Error::UnknownGate(other.to_string())),
        }
    }
}

/// `z = θ e^{iφ}` with `θ ≥ 0`, `φ ∈ [0, 2π)`.
pub fn polar(z: C64) -> (f64, f64) {
    let theta = z.norm();
    if theta == 0.0 {
        return (0.0, 0.0);
    }
    let mut phi = z.arg();
    if phi < 0.0 {
        phi += 2.0 * std::f64::consts::PI;
    }
    if phi >= 2.0 * std::f64::consts::PI {
        phi -= 2.0 * std::f64::consts::PI;
    }
    (theta, phi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateSpec {
    pub kind: GateKind,
    pub targets: Vec<usize>,
}

impl GateSpec {
    pub fn new(kind: GateKind, targets: &[usize]) -> Result<Self> {
        let expected = match kind.arity() {
            Arity::Qubit | Arity::Qumode => 1,
            Arity::TwoQubits | Arity::TwoQumodes | Arity::QubitQumode => 2,
            Arity::QubitTwoQumodes => 3,
        };
        if targets.len() != expected {
            return Err(Error::InvalidParameter(format!("{} needs {expected} targets", kind.name())));
        }
        if (1..targets.len()).any(|i| targets[..i].contains(&targets[i])) {
            return Err(Error::InvalidParameter(format!("{} has repeated targets", kind.name())));
        }
        Ok(Self { kind, targets: targets.to_vec() })
    }

    pub fn inverse(&self) -> Self {
        Self { kind: self.kind.inverse(), targets: self.targets.clone() }
    }

    /// Parses one line of the text form.
    pub fn parse(line: &str) -> Result<Self> {
        let (head, slots) = line.split_once('@').ok_or_else(|| Error::Parse(format!("missing '@' in `{line}`")))?;
        let (name, params) = split_call(head.trim())?;
        let targets = parse_slots(slots)?;
        Self::new(GateKind::from_parts(name, &params)?, &targets)
    }
}

fn split_call(head: &str) -> Result<(&str, Vec<f64>)> {
    let open = head.find('(').ok_or_else(|| Error::Parse(format!("missing '(' in `{head}`")))?;
    let inner = head[open + 1..].strip_suffix(')').ok_or_else(|| Error::Parse(format!("missing ')' in `{head}`")))?;
    let params = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("`{s}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((head[..open].trim(), params))
}

pub(crate) fn parse_slots(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("slot `{t}`: {e}"))))
        .collect()
}

pub(crate) fn fmt_number(x: f64) -> String {
    format!("{x:.16e}")
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.kind.params().into_iter().map(fmt_number).collect();
        let slots: Vec<String> = self.targets.iter().map(usize::to_string).collect();
        write!(f, "{}({}) @ {}", self.kind.name(), params.join(","), slots.join(","))
    }
}
