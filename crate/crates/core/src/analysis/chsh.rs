//! Direct maximization of the CHSH expression over measurement directions.
//!
//! With correlation matrix T, the CHSH value of directions a, a′, b, b′ is
//! `a·T(b+b′) + a′·T(b−b′)`. For fixed b, b′ the best a, a′ are the
//! normalized T(b±b′); for fixed a, a′ the best b, b′ are the normalized
//! Tᵀ(a±a′). Alternating the two exact half-steps increases the value
//! monotonically. It serves as an independent check of 2√M.

use crate::matrix::RealMatrix3;
use crate::measures::correlation_matrix;
use crate::rng::Stream;
use crate::states::DensityMatrix;
use crate::Result;
use num_traits::Float;

pub const CHSH_MAX_ITERATIONS: usize = 500;
/// Stop once an iteration improves the value by less than this.
pub const CHSH_TOLERANCE: f64 = 1e-12;

type Vec3 = [f64; 3];

fn dot(u: &Vec3, v: &Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn add(u: &Vec3, v: &Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

fn sub(u: &Vec3, v: &Vec3) -> Vec3 {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

/// Normalizes `v`, or returns `fallback` when `v` vanishes.
fn unit_or(v: Vec3, fallback: Vec3) -> Vec3 {
    let n = dot(&v, &v).sqrt();
    if n > 1e-300 {
        v.map(|x| x / n)
    } else {
        fallback
    }
}

/// Best directions found and their CHSH value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshOptimum {
    pub value: f64,
    pub a: Vec3,
    pub a_prime: Vec3,
    pub b: Vec3,
    pub b_prime: Vec3,
}

/// a·Tb + a·Tb′ + a′·Tb − a′·Tb′
pub fn chsh_value(t: &RealMatrix3, a: &Vec3, a_prime: &Vec3, b: &Vec3, b_prime: &Vec3) -> f64 {
    let tb = t.apply(b);
    let tb2 = t.apply(b_prime);
    dot(a, &tb) + dot(a, &tb2) + dot(a_prime, &tb) - dot(a_prime, &tb2)
}

fn climb(t: &RealMatrix3, tt: &RealMatrix3, mut b: Vec3, mut b_prime: Vec3) -> ChshOptimum {
    let mut a = [1.0, 0.0, 0.0];
    let mut a_prime = [0.0, 1.0, 0.0];
    let mut best = f64::NEG_INFINITY;
    for _ in 0..CHSH_MAX_ITERATIONS {
        a = unit_or(t.apply(&add(&b, &b_prime)), a);
        a_prime = unit_or(t.apply(&sub(&b, &b_prime)), a_prime);
        b = unit_or(tt.apply(&add(&a, &a_prime)), b);
        b_prime = unit_or(tt.apply(&sub(&a, &a_prime)), b_prime);
        let value = chsh_value(t, &a, &a_prime, &b, &b_prime);
        let improved = value - best;
        best = best.max(value);
        if improved < CHSH_TOLERANCE {
            break;
        }
    }
    ChshOptimum {
        value: best,
        a,
        a_prime,
        b,
        b_prime,
    }
}

/// Best CHSH value over `restarts` random starts (at least one).
pub fn chsh_optimize_correlation(t: &RealMatrix3, restarts: usize, seed: u64) -> ChshOptimum {
    let tt = t.transpose();
    (0..restarts.max(1) as u64)
        .map(|r| {
            let mut s = Stream::new(seed, r);
            let b = s.unit_vector3();
            let b_prime = s.unit_vector3();
            climb(t, &tt, b, b_prime)
        })
        .fold(None::<ChshOptimum>, |acc, o| match acc {
            Some(best) if best.value >= o.value => Some(best),
            _ => Some(o),
        })
        .expect("at least one restart")
}

/// Maximal CHSH value found by alternating maximization.
pub fn chsh_optimize(rho: &DensityMatrix, restarts: usize, seed: u64) -> Result<f64> {
    let t = correlation_matrix(rho)?;
    Ok(chsh_optimize_correlation(&t, restarts, seed).value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{bell_violation, TSIRELSON};
    use crate::states::{make_family, Bell, FamilySpec};

    #[test]
    fn tsirelson_point() {
        let rho = DensityMatrix::validate(Bell::PhiPlus.projector()).unwrap();
        let v = chsh_optimize(&rho, 32, 1).unwrap();
        assert!((v - TSIRELSON).abs() < 1e-6, "{v}");
    }

    #[test]
    fn no_correlations() {
        let v = chsh_optimize(&DensityMatrix::maximally_mixed(), 4, 1).unwrap();
        assert!(v.abs() < 1e-9);
    }

    #[test]
    fn optimum_directions_reproduce_value() {
        let rho = make_family(FamilySpec::ThreeBell {
            w1: 0.7,
            w2: 0.2,
            w3: 0.1,
        })
        .unwrap();
        let t = correlation_matrix(&rho).unwrap();
        let o = chsh_optimize_correlation(&t, 8, 3);
        let again = chsh_value(&t, &o.a, &o.a_prime, &o.b, &o.b_prime);
        assert!((again - o.value).abs() < 1e-12);
        for v in [o.a, o.a_prime, o.b, o.b_prime] {
            assert!((dot(&v, &v) - 1.0).abs() < 1e-12);
        }
        assert!((o.value - bell_violation(&rho).unwrap()).abs() < 1e-6);
    }
}
