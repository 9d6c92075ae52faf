//! Numerical certificates of the algebraic structure of the plaquette model.

use nalgebra::DMatrix;

use super::jw::jw_single_plaquette;
use super::plaquette::{assemble_parts, Backend, Cutoffs, PlaquetteParams, PlaquetteRegister, Sector};
use crate::error::Result;
use crate::gates::verify::Interior;
use crate::hybrid::fock::fock_layout;
use crate::numerics::linalg::{spectral_norm, HermitianSpectrum, C64};

fn max_entry(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Largest entry of `{a_i, a_j†} − δ_ij` and `{a_i, a_j}` over the four sites.
pub fn car_defect() -> f64 {
    let t = jw_single_plaquette();
    let id = DMatrix::<C64>::identity(16, 16);
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let (a, b, bd) = (&t.annihilators[i], &t.annihilators[j], &t.creators[j]);
            let mixed = a * bd + bd * a - if i == j { id.clone() } else { DMatrix::zeros(16, 16) };
            worst = worst.max(max_entry(&mixed)).max(max_entry(&(a * b + b * a)));
        }
    }
    worst
}

/// `‖[H, Q_total]‖` on the full fermion register.
pub fn charge_commutator_defect(params: &PlaquetteParams, backend: Backend) -> Result<f64> {
    let reg = PlaquetteRegister::new(backend, &params.cutoffs, &Sector::Full)?;
    let parts = assemble_parts(params, &reg)?;
    let q = reg.hermitian(&[(&reg.jw.total_charge(), &reg.gauge.identity())])?;
    parts.total.commutator_defect(&q)
}

/// Rows and columns of the two-mode Fock register below half the cutoff.
fn gauge_interior(n_max: usize) -> Vec<usize> {
    Interior::Fraction(0.5).indices(&fock_layout(n_max, 2))
}

fn block(m: &DMatrix<C64>, rows: &[usize]) -> DMatrix<C64> {
    DMatrix::from_fn(rows.len(), rows.len(), |r, c| m[(rows[r], rows[c])])
}

/// `‖e^{iθJ} U e^{−iθJ} − e^{iθ} U‖` on the Fock interior, `U = q⁰ + iq¹`.
pub fn gauge_covariance_defect(n_max: usize, theta: f64) -> Result<f64> {
    let cutoffs = Cutoffs { n_max, ..Cutoffs::default() };
    let reg = PlaquetteRegister::new(Backend::Fock, &cutoffs, &Sector::States(vec![0]))?;
    let g = &reg.gauge;
    let v = HermitianSpectrum::of(&g.j)?.exp_matrix(C64::new(0.0, theta));
    let rotated = &v * &g.u * v.adjoint();
    let expected = &g.u * C64::new(0.0, theta).exp();
    let rows = gauge_interior(n_max);
    Ok(spectral_norm(&block(&(rotated - expected), &rows)))
}

/// `‖[H, (q⁰)² + (q¹)²]‖` on the Fock interior of the neutral sector.
pub fn radius_conservation_defect(params: &PlaquetteParams) -> Result<f64> {
    let reg = PlaquetteRegister::new(Backend::Fock, &params.cutoffs, &Sector::ChargeZero)?;
    let parts = assemble_parts(params, &reg)?;
    let r2 = reg.assemble(&[(&reg.fermion_identity(), &reg.gauge.radius_sq)]);
    let h = parts.total.data();
    let comm = h * &r2 - &r2 * h;
    let gauge_rows = gauge_interior(params.cutoffs.n_max);
    let d = reg.gauge.dim;
    let rows: Vec<usize> =
        (0..reg.fermion_states.len()).flat_map(|f| gauge_rows.iter().map(move |&g| f * d + g)).collect();
    Ok(spectral_norm(&block(&comm, &rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutators_are_exact() {
        assert_eq!(car_defect(), 0.0);
    }

    #[test]
    fn covariance_and_conservation_on_interior() {
        assert!(gauge_covariance_defect(12, 0.3).unwrap() < 1e-8);
        let p = PlaquetteParams::new(1.0, 1.5).unwrap().with_cutoffs(Cutoffs { n_max: 8, ..Cutoffs::default() }).unwrap();
        assert!(radius_conservation_defect(&p).unwrap() < 1e-8);
    }

    #[test]
    fn wrong_phase_is_detected() {
        let cutoffs = Cutoffs { n_max: 12, ..Cutoffs::default() };
        let reg = PlaquetteRegister::new(Backend::Fock, &cutoffs, &Sector::States(vec![0])).unwrap();
        let u = &reg.gauge.u;
        let rows = gauge_interior(12);
        let off = block(&(u * C64::new(0.0, 0.3).exp() - u), &rows);
        assert!(spectral_norm(&off) > 0.1);
    }
}
