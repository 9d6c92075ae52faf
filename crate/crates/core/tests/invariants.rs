//! Property tests of invariants that hold for every admissible parameter.

use hybrid_lgt::model::{charge_commutator_defect, pure_gauge_ed, pure_gauge_energy, Backend, Cutoffs, PlaquetteParams};
use hybrid_lgt::numerics::{HermitianSpectrum, C64};
use hybrid_lgt::par;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn hermitian(n: usize, entries: &[(f64, f64)]) -> DMatrix<C64> {
    let a = DMatrix::from_fn(n, n, |r, c| {
        let (re, im) = entries[r * n + c];
        C64::new(re, im)
    });
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hamiltonian_conserves_charge(g in 0.3f64..3.0, m0 in 0.0f64..3.0, radius in 0.3f64..2.0) {
        let p = PlaquetteParams::new(g, m0)
            .and_then(|p| p.with_cutoffs(Cutoffs { j_max: 3, ..Cutoffs::default() }))
            .unwrap();
        prop_assert!(charge_commutator_defect(&p, Backend::PolarSlice(radius)).unwrap() < 1e-10);
    }

    #[test]
    fn exponential_of_hermitian_is_unitary(
        n in 1usize..7,
        entries in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 36),
        t in -3.0f64..3.0,
    ) {
        let h = hermitian(n, &entries);
        let u = HermitianSpectrum::of(&h).unwrap().exp_matrix(C64::new(0.0, t));
        let defect = (u.adjoint() * &u - DMatrix::<C64>::identity(n, n)).norm();
        prop_assert!(defect < 1e-10, "defect {defect}");
    }

    #[test]
    fn pure_gauge_levels_match_formula(g in 0.5f64..2.0) {
        let ed = pure_gauge_ed(g, 24, 3).unwrap();
        for (n, e) in ed.iter().enumerate() {
            prop_assert!((e - pure_gauge_energy(n, g).unwrap()).abs() < 1e-8);
        }
        prop_assert!(ed.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn parallel_map_keeps_input_order(items in prop::collection::vec(-1e6f64..1e6, 0..64)) {
        let f = |x: &f64| x.sin() * x;
        prop_assert_eq!(par::map(&items, f), par::map_sequential(&items, f));
    }
}
