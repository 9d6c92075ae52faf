use hybrid_lgt::gates::*;
use hybrid_lgt::hybrid::fock::{fock_matrix, two_mode_j_matrix, FockKind};
use hybrid_lgt::hybrid::layout::{HybridLayout, QumodeBasis, Space};
use hybrid_lgt::hybrid::operator::OperatorMatrix;
use hybrid_lgt::hybrid::qubit::{pauli_x, pauli_y, pauli_z};
use hybrid_lgt::numerics::linalg::{HermitianSpectrum, C64};
use nalgebra::DMatrix;

fn modes(n: usize, count: usize) -> HybridLayout {
    HybridLayout::new(0, vec![QumodeBasis::Fock { n_max: n }; count]).unwrap()
}

/// `e^{scale·H}` on `layout` by dense diagonalization.
fn exp_oracle(layout: HybridLayout, h: &DMatrix<C64>, scale: C64) -> OperatorMatrix {
    let u = HermitianSpectrum::of(h).unwrap().exp_matrix(scale);
    OperatorMatrix::on_layout(layout, u).unwrap()
}

fn minus_i(s: f64) -> C64 {
    C64::new(0.0, -s)
}

#[test]
fn exp_j_matches_direct_exponential() {
    let n = 20;
    let target = exp_oracle(modes(n, 2), &two_mode_j_matrix(n), minus_i(0.3));
    let r = verify_identity(&decompose_exp_j(0.3), &target, 0.5).unwrap();
    assert!(r <= 1e-8, "residual {r}");
}

#[test]
fn exp_j_at_zero_is_identity() {
    let id = OperatorMatrix::identity(Space::full(modes(6, 2)));
    assert!(verify_identity(&decompose_exp_j(0.0), &id, 1.0).unwrap() < 1e-10);
}

#[test]
fn exp_j_inverse_pair() {
    let mut c = decompose_exp_j(0.7);
    c.append(&decompose_exp_j(-0.7));
    let id = OperatorMatrix::identity(Space::full(modes(10, 2)));
    assert!(verify_identity(&c, &id, 0.5).unwrap() < 1e-9);
}

#[test]
fn wrong_sign_is_caught() {
    let n = 12;
    let target = exp_oracle(modes(n, 2), &two_mode_j_matrix(n), minus_i(0.3));
    let r = verify_identity(&decompose_exp_j(-0.3), &target, 0.5).unwrap();
    assert!(r >= 0.1, "negative control residual {r}");
}

#[test]
fn exp_j2_matches_direct_exponential() {
    let n = 20;
    let j = two_mode_j_matrix(n);
    let target = exp_oracle(modes(n, 2), &(&j * &j), minus_i(0.2));
    let r = verify_identity(&decompose_exp_j2(0.2), &target, 0.5).unwrap();
    assert!(r <= 1e-8, "residual {r}");
}

#[test]
fn exp_jj_matches_kronecker_oracle() {
    let n = 8;
    let j = OperatorMatrix::hermitian_on_layout(modes(n, 2), two_mode_j_matrix(n)).unwrap();
    let target = ExpKron::new(modes(n, 4), &j, &j, C64::new(0.0, 0.1)).unwrap();
    let r = verify_identity(&decompose_exp_jj(0.1), &target, 0.5).unwrap();
    assert!(r <= 1e-8, "residual {r}");
    let mut pair = decompose_exp_jj(0.1);
    pair.append(&decompose_exp_jj(-0.1));
    let id = ExpKron::new(modes(n, 4), &j, &j, C64::new(0.0, 0.0)).unwrap();
    assert!(verify_identity(&pair, &id, 0.5).unwrap() < 1e-9);
}

#[test]
fn zj_blocks_follow_qubit() {
    let n = 10;
    let layout = HybridLayout::new(1, vec![QumodeBasis::Fock { n_max: n }; 2]).unwrap();
    let zj = pauli_z().kronecker(&two_mode_j_matrix(n));
    let target = exp_oracle(layout, &zj, minus_i(0.4));
    let r = verify_identity(&decompose_zj(0.4), &target, 0.5).unwrap();
    assert!(r <= 1e-8, "residual {r}");
}

fn pauli_of(pair: PauliPair) -> DMatrix<C64> {
    let (a, b) = match pair {
        PauliPair::XX => (pauli_x(), pauli_x()),
        PauliPair::YY => (pauli_y(), pauli_y()),
        PauliPair::XY => (pauli_x(), pauli_y()),
        PauliPair::YX => (pauli_y(), pauli_x()),
        PauliPair::ZZ => (pauli_z(), pauli_z()),
    };
    a.kronecker(&b)
}

#[test]
fn ccd_matches_kronecker_oracle() {
    let n = 20;
    let layout = HybridLayout::new(2, vec![QumodeBasis::Fock { n_max: n }]).unwrap();
    for pair in [PauliPair::XX, PauliPair::YY, PauliPair::XY, PauliPair::YX, PauliPair::ZZ] {
        let h = pauli_of(pair).kronecker(&fock_matrix(FockKind::Q, n));
        let target = exp_oracle(layout.clone(), &h, minus_i(0.25));
        let r = verify_identity(&decompose_ccd(0.25, pair), &target, 0.5).unwrap();
        assert!(r <= 1e-8, "{pair:?}: residual {r}");
    }
}

#[test]
fn ccd_xx_is_hadamard_conjugated_zz() {
    let mut c = Circuit::new();
    c.gate(GateKind::Hadamard, &[0]).gate(GateKind::Hadamard, &[1]);
    c.append(&decompose_ccd(0.25, PauliPair::ZZ));
    c.gate(GateKind::Hadamard, &[0]).gate(GateKind::Hadamard, &[1]);
    let n = 12;
    let layout = HybridLayout::new(2, vec![QumodeBasis::Fock { n_max: n }]).unwrap();
    let h = pauli_of(PauliPair::XX).kronecker(&fock_matrix(FockKind::Q, n));
    let target = exp_oracle(layout, &h, minus_i(0.25));
    let a = verify_identity(&c, &target, 0.5).unwrap();
    let b = verify_identity(&decompose_ccd(0.25, PauliPair::XX), &target, 0.5).unwrap();
    assert!((a - b).abs() < 1e-12);
}

fn entangler_target(n: usize, s: f64) -> OperatorMatrix {
    let spec = GateSpec::new(GateKind::Entangler(s), &[0, 1]).unwrap();
    gate_matrix(&spec, &modes(n, 2)).unwrap()
}

#[test]
fn d_entangler_converges_on_low_levels() {
    // V spreads support quickly, so the certificate is taken on a fixed low block
    let r = verify_on(&decompose_d_entangler(0.1), &entangler_target(24, 0.1), Interior::Levels(4)).unwrap();
    assert!(r <= 1e-8, "residual {r}");
}

#[test]
fn d_entangler_inline_ordering_fails() {
    let r = verify_on(&decompose_d_entangler_inline(0.1), &entangler_target(16, 0.1), Interior::Levels(4)).unwrap();
    assert!(r > 0.05, "inline ordering residual {r}");
}

#[test]
fn residual_shrinks_with_cutoff() {
    let mut last = f64::INFINITY;
    for n in [8, 12, 16, 20] {
        let target = exp_oracle(modes(n, 2), &two_mode_j_matrix(n), minus_i(0.3));
        let r = verify_identity(&decompose_exp_j(0.3), &target, 0.5).unwrap();
        assert!(r <= last.max(1e-12) * 1.0 + 1e-12, "n={n}: {r} after {last}");
        last = r;
    }
}

#[test]
fn displacement_composition_law() {
    let n = 24;
    let layout = modes(n, 1);
    let (z1, z2) = (C64::new(0.3, 0.2), C64::new(-0.1, 0.4));
    let d = |z| gate_matrix(&GateSpec::new(GateKind::Displace(z), &[0]).unwrap(), &layout).unwrap();
    let product = d(z1).mul(&d(z2)).unwrap();
    let phase = C64::new(0.0, (z1 * z2.conj()).im).exp();
    let rhs = d(z1 + z2).data() * phase;
    let k = n / 2;
    let diff = (product.data().view((0, 0), (k, k)) - rhs.view((0, 0), (k, k))).iter().map(|c| c.norm()).fold(0.0, f64::max);
    assert!(diff < 1e-9, "{diff}");
}
