#![allow(dead_code)]

use bellmix_core::matrix::ComplexMatrix4;
use bellmix_core::rng::Stream;
use num_complex::Complex64;

pub type Unitary2 = [[Complex64; 2]; 2];

/// Haar-random SU(2) element times a random global phase.
pub fn random_unitary2(s: &mut Stream) -> Unitary2 {
    let q: [f64; 4] = [s.normal(), s.normal(), s.normal(), s.normal()];
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (a, b) = (Complex64::new(q[0] / n, q[1] / n), Complex64::new(q[2] / n, q[3] / n));
    let phase = Complex64::from_polar(1.0, std::f64::consts::TAU * s.uniform());
    [[a * phase, -b.conj() * phase], [b * phase, a.conj() * phase]]
}

pub fn random_local_unitary(s: &mut Stream) -> ComplexMatrix4 {
    ComplexMatrix4::kron(&random_unitary2(s), &random_unitary2(s))
}

/// Haar-ish 4×4 unitary from Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary4(s: &mut Stream) -> ComplexMatrix4 {
    let mut cols: Vec<[Complex64; 4]> = Vec::new();
    while cols.len() < 4 {
        let mut v: [Complex64; 4] = std::array::from_fn(|_| Complex64::new(s.normal(), s.normal()));
        for c in &cols {
            let ip: Complex64 = c.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for k in 0..4 {
                v[k] -= c[k] * ip;
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-8 {
            cols.push(v.map(|z| z / n));
        }
    }
    let mut u = ComplexMatrix4::zeros();
    for (j, c) in cols.iter().enumerate() {
        for i in 0..4 {
            u[(i, j)] = c[i];
        }
    }
    u
}

/// G·G†/tr from 32 reals.
pub fn gram_state(raw: &[f64]) -> ComplexMatrix4 {
    let mut g = ComplexMatrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let k = 2 * (4 * i + j);
            g[(i, j)] = Complex64::new(raw[k], raw[k + 1]);
        }
    }
    let w = g * g.adjoint();
    let tr = w.trace().re;
    w.scale(1.0 / tr)
}
