//! Seeded random streams.
//!
//! Every sample is a pure function of `(seed, index)`: the seed keys a
//! ChaCha8 generator and the index selects its stream, so parallel callers
//! can partition the index space without sharing state.

use core::f64::consts::TAU;

use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub struct Stream {
    rng: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl Stream {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self {
            rng,
            spare_normal: None,
        }
    }

    /// Uniform on [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on (0, 1].
    fn uniform_open_zero(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal via Box–Muller; the second variate is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let r = (-2.0 * self.uniform_open_zero().ln()).sqrt();
        let (s, c) = (TAU * self.uniform()).sin_cos();
        self.spare_normal = Some(r * s);
        r * c
    }

    /// Unit-rate exponential.
    pub fn exponential(&mut self) -> f64 {
        -self.uniform_open_zero().ln()
    }

    /// A uniform point on the probability simplex of dimension `N`.
    pub fn simplex<const N: usize>(&mut self) -> [f64; N] {
        let e: [f64; N] = core::array::from_fn(|_| self.exponential());
        let total: f64 = e.iter().sum();
        e.map(|x| x / total)
    }

    /// A uniform unit vector in ℝ³.
    pub fn unit_vector3(&mut self) -> [f64; 3] {
        loop {
            let v = [self.normal(), self.normal(), self.normal()];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 1e-12 {
                return v.map(|x| x / n);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a: [f64; 4] = core::array::from_fn({
            let mut s = Stream::new(7, 3);
            move |_| s.uniform()
        });
        let b: [f64; 4] = core::array::from_fn({
            let mut s = Stream::new(7, 3);
            move |_| s.uniform()
        });
        let c: [f64; 4] = core::array::from_fn({
            let mut s = Stream::new(7, 4);
            move |_| s.uniform()
        });
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn normal_moments() {
        let mut s = Stream::new(1, 0);
        let n = 200_000;
        let (mut m1, mut m2) = (0.0, 0.0);
        for _ in 0..n {
            let z = s.normal();
            m1 += z;
            m2 += z * z;
        }
        m1 /= n as f64;
        m2 /= n as f64;
        assert!(m1.abs() < 0.01, "mean {m1}");
        assert!((m2 - 1.0).abs() < 0.02, "second moment {m2}");
    }

    #[test]
    fn simplex_sums_to_one() {
        let mut s = Stream::new(2, 0);
        for _ in 0..100 {
            let p: [f64; 4] = s.simplex();
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
            assert!(p.iter().all(|&x| x > 0.0));
        }
    }
}
