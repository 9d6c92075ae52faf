//! Plaquette observables on the same register as the Hamiltonian.

use nalgebra::DMatrix;

use super::plaquette::{Backend, Cutoffs, PlaquetteRegister, Sector};
use crate::error::Result;
use crate::hybrid::operator::OperatorMatrix;
use crate::numerics::linalg::C64;

#[derive(Clone, Debug)]
pub struct Observables {
    /// `q⁰`, or `R cos χ` on a radial slice.
    pub wilson_loop: OperatorMatrix,
    /// `(1/4) Σ (−1)^{i+1} Ψ̄_iΨ_i` with `Ψ̄_iΨ_i = Ψ_i†Ψ_i` for one-component sites.
    pub chiral_condensate: OperatorMatrix,
    /// Divergence minus charge at sites 1..4, with the link fields written
    /// through `J` and the charges. Sites 1–3 vanish identically; site 4
    /// equals `−Q_total`.
    pub gauss_generators: Vec<OperatorMatrix>,
    pub total_charge: OperatorMatrix,
    pub electric_field: OperatorMatrix,
    /// `(q⁰)² + (q¹)²`.
    pub radius_sq: OperatorMatrix,
    /// `𝒜 = Q₁ + 2Q₂ − Q₃`.
    pub flux_charge: OperatorMatrix,
}

pub fn observables(backend: Backend, cutoffs: &Cutoffs, sector: &Sector) -> Result<Observables> {
    let reg = PlaquetteRegister::new(backend, cutoffs, sector)?;
    observables_on(&reg)
}

pub fn observables_on(reg: &PlaquetteRegister) -> Result<Observables> {
    let c = |x: f64| C64::new(x, 0.0);
    let id_f = reg.fermion_identity();
    let id_g = reg.gauge.identity();
    let jw = &reg.jw;
    let q = &jw.charges;
    let zero = DMatrix::<C64>::zeros(16, 16);

    let condensate = (0..4).fold(zero.clone(), |acc, k| acc + &jw.numbers[k] * c(if k % 2 == 0 { 0.25 } else { -0.25 }));

    // link field = (fermion part) ⊗ 1 + (coefficient) J
    let link = |f: DMatrix<C64>, jc: f64| (f, jc);
    let e23 = link(zero.clone(), 1.0);
    let e12 = link(-&q[1], 1.0);
    let e43 = link(-&q[2], -1.0);
    let e14 = link(&q[0] + &q[1], -1.0);
    let combine = |terms: &[(f64, &(DMatrix<C64>, f64))], charge: &DMatrix<C64>| {
        let f = terms.iter().fold(-charge, |acc, (s, l)| acc + &l.0 * c(*s));
        let jc: f64 = terms.iter().map(|(s, l)| s * l.1).sum();
        (f, jc)
    };
    let generators = [
        combine(&[(1.0, &e12), (1.0, &e14)], &q[0]),
        combine(&[(1.0, &e23), (-1.0, &e12)], &q[1]),
        combine(&[(-1.0, &e23), (-1.0, &e43)], &q[2]),
        combine(&[(1.0, &e43), (-1.0, &e14)], &q[3]),
    ];
    let mut gauss_generators = Vec::with_capacity(4);
    for (f, jc) in &generators {
        let jpart = &reg.gauge.j * c(*jc);
        gauss_generators.push(reg.hermitian(&[(f, &id_g), (&id_f, &jpart)])?);
    }

    Ok(Observables {
        wilson_loop: reg.hermitian(&[(&id_f, &reg.gauge.q0)])?,
        chiral_condensate: reg.hermitian(&[(&condensate, &id_g)])?,
        gauss_generators,
        total_charge: reg.hermitian(&[(&jw.total_charge(), &id_g)])?,
        electric_field: reg.hermitian(&[(&id_f, &reg.gauge.j)])?,
        radius_sq: reg.hermitian(&[(&id_f, &reg.gauge.radius_sq)])?,
        flux_charge: reg.hermitian(&[(&reg.flux_charge(), &id_g)])?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid::state::HybridState;
    use crate::model::jw::jw_single_plaquette;

    #[test]
    fn condensate_on_static_vacuum() {
        let cut = Cutoffs { j_max: 2, ..Cutoffs::default() };
        let obs = observables(Backend::PolarSlice(1.0), &cut, &Sector::Full).unwrap();
        let vac = jw_single_plaquette().vacuum_index();
        let state = HybridState::basis(obs.wilson_loop.layout().clone(), &[1, 0, 1, 0, 2]).unwrap();
        assert_eq!(vac, 0b1010);
        assert!((state.expectation(&obs.chiral_condensate).unwrap() + 0.5).abs() < 1e-15);
        // j = 0 has no angular bias
        assert!(state.expectation(&obs.wilson_loop).unwrap().abs() < 1e-15);
    }

    #[test]
    fn gauss_generators_vanish_on_neutral_sector() {
        let cut = Cutoffs { j_max: 2, ..Cutoffs::default() };
        let full = observables(Backend::PolarSlice(1.0), &cut, &Sector::Full).unwrap();
        for g in &full.gauss_generators[..3] {
            assert!(g.data().iter().all(|x| x.norm() == 0.0));
        }
        let defect = full.gauss_generators[3].add(&full.total_charge).unwrap();
        assert!(defect.data().iter().all(|x| x.norm() < 1e-15));
        let neutral = observables(Backend::PolarSlice(1.0), &cut, &Sector::ChargeZero).unwrap();
        assert!(neutral.gauss_generators.iter().all(|g| g.data().iter().all(|x| x.norm() < 1e-15)));
    }
}
