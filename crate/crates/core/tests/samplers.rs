use bellmix_core::matrix::ComplexMatrix4;
use bellmix_core::states::{
    sample_bell_diagonal, sample_bell_diagonal_at, sample_bell_weights_at, sample_hilbert_schmidt,
    sample_hilbert_schmidt_at, Bell, DensityMatrix,
};

#[test]
fn hilbert_schmidt_is_deterministic_and_normalized() {
    assert_eq!(sample_hilbert_schmidt(5), sample_hilbert_schmidt(5));
    assert_ne!(sample_hilbert_schmidt(5), sample_hilbert_schmidt(6));
    for seed in 0..100 {
        let rho = sample_hilbert_schmidt(seed);
        assert!((rho.matrix().trace().re - 1.0).abs() <= 1e-12);
        assert!(DensityMatrix::validate(*rho.matrix()).is_ok());
    }
}

#[test]
fn hilbert_schmidt_mean_is_maximally_mixed() {
    // The Ginibre construction is unitarily invariant, so E[ρ] = I/4.
    let n = 10_000;
    let mut sum = ComplexMatrix4::zeros();
    for i in 0..n {
        sum = sum + *sample_hilbert_schmidt_at(8, i).matrix();
    }
    let mean = sum.scale(1.0 / n as f64);
    let dev = mean.max_abs_diff(&ComplexMatrix4::identity().scale(0.25));
    assert!(dev <= 0.01, "max deviation {dev}");
}

#[test]
fn bell_diagonal_is_deterministic() {
    assert_eq!(sample_bell_diagonal(9), sample_bell_diagonal(9));
    assert_eq!(sample_bell_diagonal_at(9, 4), sample_bell_diagonal_at(9, 4));
    assert_ne!(sample_bell_diagonal_at(9, 4), sample_bell_diagonal_at(9, 5));
}

#[test]
fn bell_diagonal_commutes_with_bell_projectors() {
    for i in 0..100 {
        let rho = *sample_bell_diagonal_at(1, i).matrix();
        for b in Bell::ALL {
            let p = b.projector();
            assert!((rho * p).max_abs_diff(&(p * rho)) <= 1e-12);
        }
    }
}

#[test]
fn bell_weights_have_dirichlet_mean() {
    let n = 10_000;
    let mut mean = [0.0; 4];
    for i in 0..n {
        let w = sample_bell_weights_at(12, i);
        for k in 0..4 {
            mean[k] += w[k] / n as f64;
        }
    }
    for m in mean {
        assert!((m - 0.25).abs() <= 0.01, "{mean:?}");
    }
}
