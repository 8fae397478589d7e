//! Property tests for the module invariants.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

use isospec::fock::{build_ladder, FockSpec};
use isospec::gk::{action_identity, evolve, synthesize_vector_cs, GKSpectrumData, VectorCSParams};
use isospec::operator::{Band, InteriorSpec, Operator};

fn complex_matrix(dim: usize) -> impl Strategy<Value = Operator> {
    proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), dim * dim).prop_map(move |vals| {
        Operator::from_matrix(DMatrix::from_fn(dim, dim, |i, j| {
            let (re, im) = vals[i * dim + j];
            C64::new(re, im)
        }))
    })
}

fn hermitian_matrix(dim: usize) -> impl Strategy<Value = Operator> {
    complex_matrix(dim).prop_map(|a| a.add(&a.adjoint()).unwrap().scale(C64::new(0.5, 0.0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_is_involutive_bit_for_bit(a in complex_matrix(7)) {
        let back = a.adjoint().adjoint();
        prop_assert_eq!(a.matrix(), back.matrix());
    }

    #[test]
    fn commutator_norm_is_bounded(a in complex_matrix(6), b in complex_matrix(6)) {
        let c = a.commutator(&b).unwrap();
        prop_assert!(c.frobenius_norm() <= 2.0 * a.frobenius_norm() * b.frobenius_norm() + 1e-9);
    }

    #[test]
    fn hermitian_eigensystem_reconstructs(h in hermitian_matrix(12)) {
        let es = h.hermitian_eigensystem().unwrap();
        prop_assert!(es.reconstruction_residual() <= 1e-10 * h.frobenius_norm().max(1e-300));
        // ascending values, orthonormal columns
        for w in es.values().windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        let gram = es.vectors().adjoint() * es.vectors();
        let defect = (&gram - DMatrix::<C64>::identity(12, 12)).norm();
        prop_assert!(defect < 1e-10);
    }

    #[test]
    fn exponential_of_hermitian_is_unitary(b in hermitian_matrix(10)) {
        let u = b.unitary_from_hermitian().unwrap();
        let defect = u
            .adjoint()
            .multiply(&u)
            .unwrap()
            .sub(&Operator::identity(10))
            .unwrap()
            .frobenius_norm();
        prop_assert!(defect < 1e-10);
    }

    #[test]
    fn interior_norm_is_monotone_in_margin(a in complex_matrix(9)) {
        let mut prev = f64::INFINITY;
        for margin in 0..9 {
            let n = a.interior_norm(InteriorSpec::new(margin));
            prop_assert!(n <= prev * (1.0 + 1e-15) + 1e-300);
            prev = n;
        }
    }

    #[test]
    fn operator_json_round_trip_is_exact(a in complex_matrix(5)) {
        let text = a.to_json_string();
        let back = Operator::from_json_str(&text, "prop").unwrap();
        prop_assert_eq!(a.matrix(), back.matrix());
        prop_assert_eq!(a.band(), back.band());
        prop_assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn product_band_bounded_by_sum(a in complex_matrix(8), b in complex_matrix(8)) {
        let (Band::Width(wa), Band::Width(wb)) = (a.band(), b.band()) else {
            return Ok(());
        };
        let prod = a.multiply(&b).unwrap();
        let Band::Width(wp) = prod.band() else {
            return Ok(());
        };
        prop_assert!(wp <= (wa + wb).min(7));
    }

    #[test]
    fn q_mutator_holds_across_the_family(q in -0.95f64..0.95) {
        let spec = FockSpec::quon(q, 16).unwrap();
        let (a, ad) = build_ladder(&spec);
        let lhs = a
            .multiply(&ad)
            .unwrap()
            .sub(&ad.multiply(&a).unwrap().scale(C64::new(q, 0.0)))
            .unwrap();
        let defect = lhs.sub(&Operator::identity(16)).unwrap();
        prop_assert!(defect.interior_norm(InteriorSpec::new(1)) < 1e-12);
    }

    #[test]
    fn coherent_states_stay_normalized_and_stable(
        j1 in 0.0f64..4.0,
        j2 in 0.0f64..4.0,
        gamma in -2.0f64..2.0,
        delta in 0.05f64..2.0,
        t in -3.0f64..3.0,
    ) {
        let data = GKSpectrumData::from_fock(&FockSpec::boson(2).unwrap(), 160).unwrap();
        let params = VectorCSParams::new(j1, j2, gamma, delta);
        let state = synthesize_vector_cs(&params, &data).unwrap();
        prop_assert!((state.norm() - 1.0).abs() < 1e-12);

        let action = action_identity(&state, &data).unwrap();
        prop_assert!(action.difference < 1e-10);

        let evolved = evolve(&state, t, &data);
        let mut shifted = params;
        shifted.gamma += t;
        let direct = synthesize_vector_cs(&shifted, &data).unwrap();
        prop_assert!(evolved.distance(&direct) < 1e-12);
    }
}
