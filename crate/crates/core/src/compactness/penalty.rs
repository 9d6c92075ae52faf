//! Method B: the penalty `(μ/2)(q²−1)²` on the gauge register.

use crate::error::{Error, Result};
use crate::hybrid::operator::OperatorMatrix;
use crate::model::plaquette::{gauge_layout, Backend, Cutoffs, GaugeOperators};
use crate::numerics::linalg::C64;

/// Penalty on the gauge register alone; a scalar multiple of the identity on a radial slice.
pub fn penalty_operator(mu: f64, backend: Backend, cutoffs: &Cutoffs) -> Result<OperatorMatrix> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidParameter(format!("μ = {mu}")));
    }
    let layout = gauge_layout(backend, cutoffs)?;
    let ops = GaugeOperators::new(backend, cutoffs)?;
    let data = &ops.constraint_sq * C64::new(0.5 * mu, 0.0);
    OperatorMatrix::hermitian_on_layout(layout, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid::state::HybridState;

    #[test]
    fn zero_coupling_and_unit_radius_vanish() {
        let c = Cutoffs::default();
        let p = penalty_operator(0.0, Backend::Fock, &c).unwrap();
        assert!(p.data().iter().all(|x| x.norm() == 0.0));
        let p = penalty_operator(2.0, Backend::PolarSlice(1.0), &c).unwrap();
        assert!(p.data().iter().all(|x| x.norm() == 0.0));
        let p = penalty_operator(2.0, Backend::PolarSlice(2.0), &c).unwrap();
        assert!((p.data()[(0, 0)].re - 9.0).abs() < 1e-14);
    }

    #[test]
    fn vacuum_expectation_matches_gaussian_moments() {
        // vacuum: q⁰, q¹ independent with ⟨q²⟩ = ½, ⟨q⁴⟩ = ¾, so
        // ⟨(q⁰²+q¹²−1)²⟩ = 2·¾ + 2·¼ − 2·1 + 1 = 1
        let c = Cutoffs { n_max: 8, ..Cutoffs::default() };
        let mu = 1.7;
        let p = penalty_operator(mu, Backend::Fock, &c).unwrap();
        let vac = HybridState::basis(p.layout().clone(), &[0, 0]).unwrap();
        assert!((vac.expectation(&p).unwrap() - 0.5 * mu).abs() < 1e-12);
    }

    #[test]
    fn negative_coupling_rejected() {
        assert!(penalty_operator(-1.0, Backend::Fock, &Cutoffs::default()).is_err());
    }
}
