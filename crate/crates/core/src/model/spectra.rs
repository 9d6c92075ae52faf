//! Closed-form and static-limit spectra of the single plaquette.

use nalgebra::DMatrix;

use super::jw::{jw_single_plaquette, neutral_states};
use super::plaquette::{Backend, Cutoffs, PlaquetteParams, PlaquetteRegister, Sector};
use crate::error::{Error, Result};
use crate::numerics::linalg::{HermitianSpectrum, C64};
use crate::numerics::mathieu::{mathieu_char, MathieuKind};

/// Level `n` of `2g²J² + (1/g²)(1 − cos χ)`:
/// `(g²/2)a_n(−1/g⁴) + 1/g²` for even `n`, `(g²/2)b_{n+1}(−1/g⁴) + 1/g²` for odd `n`.
pub fn pure_gauge_energy(n: usize, g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::InvalidParameter(format!("coupling g = {g}")));
    }
    let q = -1.0 / g.powi(4);
    let c = if n % 2 == 0 { mathieu_char(MathieuKind::A, n, q)? } else { mathieu_char(MathieuKind::B, n + 1, q)? };
    Ok(0.5 * g * g * c + 1.0 / (g * g))
}

/// Lowest `count` eigenvalues of the pure-gauge plaquette in the angular basis
/// (vacuum fermions, unit radius, mass shift removed).
pub fn pure_gauge_ed(g: f64, j_max: usize, count: usize) -> Result<Vec<f64>> {
    let params = PlaquetteParams::new(g, 0.0)?.with_cutoffs(Cutoffs { j_max, ..Cutoffs::default() })?;
    let vacuum = jw_single_plaquette().vacuum_index();
    let reg = PlaquetteRegister::new(Backend::PolarSlice(1.0), &params.cutoffs, &Sector::States(vec![vacuum]))?;
    let parts = super::plaquette::assemble_parts(&params, &reg)?;
    let gauge = parts.h_e.add(&parts.h_b)?;
    let e = gauge.spectrum()?.eigenvalues;
    if count > e.len() {
        return Err(Error::InvalidParameter(format!("{count} levels requested from {} states", e.len())));
    }
    Ok(e[..count].to_vec())
}

/// Static fermion energies `E_{i,f}` in the order `v_1 … v_6`, as displayed:
/// `−2m0`, `3g²/8` (four times), `2m0 + g²/8`.
pub fn static_fermion_energies(g: f64, m0: f64) -> [f64; 6] {
    let pair = 3.0 * g * g / 8.0;
    [-2.0 * m0, pair, pair, pair, pair, 2.0 * m0 + g * g / 8.0]
}

/// Static fermion energies from the electric term itself: the
/// fermion-only remainder `H_M + (g²/2)(Σc_i² − 𝒜²/4)` left after
/// completing the square in `J`, diagonalized on `v_1 … v_6`.
pub fn static_fermion_energies_ed(g: f64, m0: f64) -> Result<[f64; 6]> {
    let params = PlaquetteParams::new(g, m0)?.with_cutoffs(Cutoffs { j_max: 1, ..Cutoffs::default() })?;
    let reg = PlaquetteRegister::new(Backend::PolarSlice(1.0), &params.cutoffs, &Sector::Full)?;
    let c = |x: f64| C64::new(x, 0.0);
    let flux = reg.flux_charge();
    let shift_sq = reg.electric_shifts().iter().fold(DMatrix::zeros(16, 16), |acc, s| acc + s * s);
    let remainder = (shift_sq - &flux * &flux * c(0.25)) * c(0.5 * g * g);
    let mass = (0..4).fold(DMatrix::zeros(16, 16), |acc, k| {
        acc + &reg.jw.numbers[k] * c(if k % 2 == 0 { m0 } else { -m0 })
    });
    let h = mass + remainder;
    let v = neutral_states();
    let block = DMatrix::from_fn(6, 6, |r, col| v[r].dotc(&(&h * &v[col])));
    let spec = HermitianSpectrum::of(&block)?;
    let mut out = [0.0; 6];
    // assign each eigenvalue to the v_i it is concentrated on
    for (k, &e) in spec.eigenvalues.iter().enumerate() {
        let col = spec.eigenvectors.column(k);
        let (i, _) = col.iter().enumerate().fold((0, 0.0), |best, (i, x)| if x.norm() > best.1 { (i, x.norm()) } else { best });
        out[i] = e;
    }
    Ok(out)
}

/// Second-order estimate `−2m0 + (g²/2)a_0(1/g⁴) + 1/g² − 1/(2m0)`.
pub fn perturbative_ground_energy(g: f64, m0: f64) -> Result<f64> {
    if !(m0 > 0.0) {
        return Err(Error::InvalidParameter(format!("mass m0 = {m0}")));
    }
    if !(g > 0.0) {
        return Err(Error::InvalidParameter(format!("coupling g = {g}")));
    }
    let a0 = mathieu_char(MathieuKind::A, 0, 1.0 / g.powi(4))?;
    Ok(-2.0 * m0 + 0.5 * g * g * a0 + 1.0 / (g * g) - 0.5 / m0)
}
