mod common;

use bellmix_core::matrix::{
    hermitian_eigenvalues, psd_sqrt, singular_values_3x3, spin_flip, ComplexMatrix4, RealMatrix3,
};
use bellmix_core::measures::{
    bell_violation, correlation_matrix, eof_from_tangle, m_from_correlation, measure_all, tangle, TSIRELSON,
};
use bellmix_core::rng::Stream;
use bellmix_core::states::{make_family, sample_hilbert_schmidt_at, sample_pure_at, Bell, DensityMatrix, FamilySpec};
use common::{gram_state, random_local_unitary, random_unitary4};
use proptest::prelude::*;

fn raw_entries() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0f64..1.0, 32)
}

proptest! {
    #[test]
    fn eigenvalues_sum_to_trace(raw in raw_entries(), shift in -1.0f64..1.0) {
        let m = gram_state(&raw) + ComplexMatrix4::identity().scale(shift);
        let e = hermitian_eigenvalues(&m).unwrap();
        prop_assert!((e.sum() - m.trace().re).abs() <= 1e-10);
        let v = e.values();
        prop_assert!(v[0] >= v[1] && v[1] >= v[2] && v[2] >= v[3]);
    }

    #[test]
    fn eigenvalues_survive_unitary_conjugation(raw in raw_entries(), seed in any::<u64>()) {
        let m = gram_state(&raw);
        let u = random_unitary4(&mut Stream::new(seed, 0));
        let a = hermitian_eigenvalues(&m).unwrap().values();
        let b = hermitian_eigenvalues(&m.conjugate_by(&u)).unwrap().values();
        for (x, y) in a.iter().zip(b) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn sqrt_squares_back(raw in raw_entries()) {
        let m = gram_state(&raw);
        let s = psd_sqrt(&m).unwrap();
        prop_assert!((s * s).max_abs_diff(&m) <= 1e-9);
        prop_assert!(s.hermiticity_residual() <= 1e-12);
    }

    #[test]
    fn spin_flip_is_an_involution(raw in raw_entries()) {
        let m = gram_state(&raw);
        prop_assert!(spin_flip(&spin_flip(&m)).max_abs_diff(&m) <= 1e-14);
    }

    #[test]
    fn singular_values_ignore_transpose(entries in proptest::collection::vec(-1.0f64..1.0, 9)) {
        let t = RealMatrix3(std::array::from_fn(|i| std::array::from_fn(|j| entries[3 * i + j])));
        let a = singular_values_3x3(&t);
        let b = singular_values_3x3(&t.transpose());
        for (x, y) in a.iter().zip(b) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
        prop_assert!(a[0] >= a[1] && a[1] >= a[2] && a[2] >= 0.0);
        // s² are the eigenvalues of T·Tᵀ: their sum is the squared Frobenius norm.
        let frob: f64 = entries.iter().map(|x| x * x).sum();
        prop_assert!((a.iter().map(|s| s * s).sum::<f64>() - frob).abs() <= 1e-10);
    }

    #[test]
    fn bell_violation_ignores_correlation_transpose(raw in raw_entries()) {
        let rho = DensityMatrix::validate(gram_state(&raw)).unwrap();
        let t = correlation_matrix(&rho).unwrap();
        let b1 = 2.0 * m_from_correlation(&t).sqrt();
        let b2 = 2.0 * m_from_correlation(&t.transpose()).sqrt();
        prop_assert!((b1 - b2).abs() <= 1e-12);
        prop_assert!((b1 - bell_violation(&rho).unwrap()).abs() <= 1e-15);
    }

    #[test]
    fn constructors_produce_valid_states(a in 0.0f64..=1.0, w in 0.0f64..=1.0, g in 1e-6f64..=1.0) {
        for spec in [
            FamilySpec::Pure { a },
            FamilySpec::Werner { x: w },
            FamilySpec::Mems { gamma: g },
            FamilySpec::TwoBell { w },
        ] {
            let rho = make_family(spec).unwrap();
            prop_assert!(DensityMatrix::validate(*rho.matrix()).is_ok());
        }
    }

    #[test]
    fn two_bell_is_a_three_bell_edge(w in 0.5f64..=1.0) {
        let a = make_family(FamilySpec::TwoBell { w }).unwrap();
        let b = make_family(FamilySpec::ThreeBell { w1: w, w2: 1.0 - w, w3: 0.0 }).unwrap();
        prop_assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-15);
    }
}

#[test]
fn werner_endpoint_is_phi_plus() {
    let a = make_family(FamilySpec::Werner { x: 1.0 }).unwrap();
    let b = make_family(FamilySpec::Pure {
        a: std::f64::consts::FRAC_1_SQRT_2,
    })
    .unwrap();
    assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-15);
}

#[test]
fn mems_is_continuous_at_two_thirds() {
    for eps in [1e-3, 1e-5, 1e-7] {
        let lo = make_family(FamilySpec::Mems { gamma: 2.0 / 3.0 - eps }).unwrap();
        let hi = make_family(FamilySpec::Mems { gamma: 2.0 / 3.0 + eps }).unwrap();
        assert!(lo.matrix().max_abs_diff(hi.matrix()) <= 2.0 * eps, "eps {eps}");
    }
}

#[test]
fn measures_are_local_unitary_invariant() {
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let rho = sample_hilbert_schmidt_at(99, i);
        let u = random_local_unitary(&mut Stream::new(100, i));
        let a = measure_all(&rho).unwrap();
        let b = measure_all(&rho.conjugate_by(&u).unwrap()).unwrap();
        for (x, y) in [
            (a.tau, b.tau),
            (a.eof, b.eof),
            (a.m_value, b.m_value),
            (a.bell_b, b.bell_b),
            (a.s_linear, b.s_linear),
            (a.s_von_neumann, b.s_von_neumann),
        ] {
            worst = worst.max((x - y).abs());
        }
    }
    assert!(worst <= 1e-9, "worst deviation {worst:e}");
}

#[test]
fn pure_state_tangle_is_four_det_reduced() {
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let rho = sample_pure_at(17, i);
        let r = rho.reduced_first();
        let det = (r[0][0] * r[1][1] - r[0][1] * r[1][0]).re;
        worst = worst.max((tangle(&rho).unwrap() - 4.0 * det).abs());
    }
    assert!(worst <= 1e-10, "worst deviation {worst:e}");
}

#[test]
fn entropies_vanish_together() {
    for i in 0..200 {
        let pure = sample_pure_at(3, i);
        let r = measure_all(&pure).unwrap();
        assert!(r.s_linear <= 1e-9 && r.s_von_neumann <= 1e-9);
        assert!((pure.eigenvalues().max() - 1.0).abs() <= 1e-9);

        let mixed = sample_hilbert_schmidt_at(3, i);
        let r = measure_all(&mixed).unwrap();
        assert!(r.s_linear > 1e-9 && r.s_von_neumann > 1e-9);
        assert!(mixed.eigenvalues().max() < 1.0 - 1e-9);
    }
    let r = measure_all(&DensityMatrix::validate(Bell::PsiMinus.projector()).unwrap()).unwrap();
    assert!(r.s_linear <= 1e-9 && r.s_von_neumann <= 1e-9);
}

#[test]
fn eof_is_monotone_in_tangle() {
    let values: Vec<f64> = (0..=100).map(|k| eof_from_tangle(k as f64 / 100.0).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] >= w[0]));
    assert_eq!(values[0], 0.0);
    assert!((values[100] - 1.0).abs() < 1e-15);
}

#[test]
fn measures_stay_in_range_on_random_states() {
    for i in 0..10_000 {
        let r = measure_all(&sample_hilbert_schmidt_at(2024, i)).unwrap();
        assert!(r.is_consistent(), "{i}: {r:?}");
        assert!((0.0..=1.0).contains(&r.tau));
        assert!(r.bell_b >= 0.0 && r.bell_b <= TSIRELSON + 1e-9);
        assert!(r.s_linear >= 0.0 && r.s_linear <= 1.0 + 1e-9);
        assert!(r.s_von_neumann >= 0.0 && r.s_von_neumann <= 1.0 + 1e-9);
    }
}
