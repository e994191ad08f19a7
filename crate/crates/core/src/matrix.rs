//! Dense 4×4 complex and 3×3 real linear algebra.
//!
//! Only what the two-qubit measures need: products, adjoints, traces, a
//! cyclic Jacobi eigensolver for Hermitian matrices, PSD square roots, the
//! spin flip, and singular values by one-sided Jacobi.

use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result, STATE_TOLERANCE};
use num_traits::Float;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub const PAULI_X: [[Complex64; 2]; 2] = [[ZERO, ONE], [ONE, ZERO]];
pub const PAULI_Y: [[Complex64; 2]; 2] = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
pub const PAULI_Z: [[Complex64; 2]; 2] = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];
/// σx, σy, σz in that order.
pub const PAULIS: [[[Complex64; 2]; 2]; 3] = [PAULI_X, PAULI_Y, PAULI_Z];

const MAX_SWEEPS: usize = 64;

/// A 4×4 complex matrix in the product basis |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(pub [[Complex64; 4]; 4]);

impl ComplexMatrix4 {
    pub const fn zeros() -> Self {
        Self([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_real_diagonal([1.0; 4])
    }

    pub fn from_real_diagonal(d: [f64; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        Self(rows.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    /// |v⟩⟨w|
    pub fn outer(v: &[Complex64; 4], w: &[Complex64; 4]) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = v[i] * w[j].conj();
            }
        }
        m
    }

    /// Kronecker product a ⊗ b of two 2×2 matrices.
    pub fn kron(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self(self.0.map(|r| r.map(|z| z.conj())))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self(self.0.map(|r| r.map(|z| z * k)))
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Frobenius norm squared, which equals tr(m·m†).
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// U·m·U†
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }
}

impl Default for ComplexMatrix4 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

/// A 3×3 real matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RealMatrix3(pub [[f64; 3]; 3]);

impl RealMatrix3 {
    pub fn identity() -> Self {
        Self::diagonal([1.0; 3])
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        let mut m = Self::default();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::default();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        let r = &self.0;
        [
            r[0][0] * v[0] + r[0][1] * v[1] + r[0][2] * v[2],
            r[1][0] * v[0] + r[1][1] * v[1] + r[1][2] * v[2],
            r[2][0] * v[0] + r[2][1] * v[1] + r[2][2] * v[2],
        ]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

/// Four reals in descending order.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Spectrum4([f64; 4]);

impl Spectrum4 {
    /// Sorts `values` descending.
    pub fn new(mut values: [f64; 4]) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self(values)
    }

    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    pub fn max(&self) -> f64 {
        self.0[0]
    }

    pub fn min(&self) -> f64 {
        self.0[3]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Eigenvalues (descending) and matching eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone, Copy)]
pub struct HermitianEigen {
    pub values: Spectrum4,
    /// Column `k` is the eigenvector for `values.values()[k]`.
    pub vectors: ComplexMatrix4,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> [Complex64; 4] {
        core::array::from_fn(|i| self.vectors.0[i][k])
    }
}

fn check_hermitian(m: &ComplexMatrix4) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = m.hermiticity_residual();
    if residual > STATE_TOLERANCE {
        return Err(Error::NonHermitianInput { residual });
    }
    Ok(())
}

/// Full eigendecomposition by cyclic complex Jacobi rotations.
pub fn hermitian_eigen(m: &ComplexMatrix4) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    // Work on the exactly Hermitian part.
    let mut a = (*m + m.adjoint()).scale(0.5);
    let mut v = ComplexMatrix4::identity();
    let scale = a.norm_sqr();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.0[i][j].norm_sqr())
            .sum();
        if off <= f64::EPSILON * f64::EPSILON * scale * 1e-4 || off == 0.0 {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a.0[p][q];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = apq / g;
                let theta = 0.5 * (2.0 * g).atan2(a.0[q][q].re - a.0[p][p].re);
                let (s, c) = theta.sin_cos();
                // J = diag(1, conj(phase)) · [[c, s], [-s, c]]
                let j00 = Complex64::new(c, 0.0);
                let j01 = Complex64::new(s, 0.0);
                let j10 = -phase.conj() * s;
                let j11 = phase.conj() * c;
                for k in 0..4 {
                    let (akp, akq) = (a.0[k][p], a.0[k][q]);
                    a.0[k][p] = akp * j00 + akq * j10;
                    a.0[k][q] = akp * j01 + akq * j11;
                    let (vkp, vkq) = (v.0[k][p], v.0[k][q]);
                    v.0[k][p] = vkp * j00 + vkq * j10;
                    v.0[k][q] = vkp * j01 + vkq * j11;
                }
                for k in 0..4 {
                    let (apk, aqk) = (a.0[p][k], a.0[q][k]);
                    a.0[p][k] = j00.conj() * apk + j10.conj() * aqk;
                    a.0[q][k] = j01.conj() * apk + j11.conj() * aqk;
                }
                a.0[p][q] = ZERO;
                a.0[q][p] = ZERO;
                a.0[p][p].im = 0.0;
                a.0[q][q].im = 0.0;
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&x, &y| a.0[y][y].re.total_cmp(&a.0[x][x].re));
    let values = Spectrum4(order.map(|k| a.0[k][k].re));
    let mut vectors = ComplexMatrix4::zeros();
    for (col, &k) in order.iter().enumerate() {
        for i in 0..4 {
            vectors.0[i][col] = v.0[i][k];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// The four real eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix4) -> Result<Spectrum4> {
    hermitian_eigen(m).map(|e| e.values)
}

/// Rebuilds Σ f(λₖ)|vₖ⟩⟨vₖ| from an eigendecomposition.
pub fn spectral_map(eig: &HermitianEigen, f: impl Fn(f64) -> f64) -> ComplexMatrix4 {
    let mut out = ComplexMatrix4::zeros();
    for (k, &lambda) in eig.values.0.iter().enumerate() {
        let fk = f(lambda);
        if fk == 0.0 {
            continue;
        }
        let vk = eig.vector(k);
        out = out + ComplexMatrix4::outer(&vk, &vk).scale(fk);
    }
    out
}

/// Hermitian square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[-1e-9, 0)` are clamped to zero.
pub fn psd_sqrt(m: &ComplexMatrix4) -> Result<ComplexMatrix4> {
    let eig = hermitian_eigen(m)?;
    let min_eigenvalue = eig.values.min();
    if min_eigenvalue < -STATE_TOLERANCE {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    Ok(spectral_map(&eig, |x| x.max(0.0).sqrt()))
}

/// σy ⊗ σy, which is real.
pub fn sigma_y_y() -> ComplexMatrix4 {
    ComplexMatrix4::kron(&PAULI_Y, &PAULI_Y)
}

/// (σy⊗σy)·ρ*·(σy⊗σy), conjugating in the product basis.
pub fn spin_flip(rho: &ComplexMatrix4) -> ComplexMatrix4 {
    let yy = sigma_y_y();
    yy * rho.conj() * yy
}

/// Singular values of a square complex matrix by one-sided (Hestenes)
/// Jacobi, descending. Columns are orthogonalized in place, so small
/// singular values keep absolute accuracy of order ε·‖m‖.
fn one_sided_jacobi<const N: usize>(mut cols: [[Complex64; N]; N]) -> [f64; N] {
    // cols[j] is column j.
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..N.saturating_sub(1) {
            for q in (p + 1)..N {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..N {
                    let xp = cols[p][k];
                    let xq = cols[q][k] * phase.conj();
                    cols[p][k] = xp * c - xq * s;
                    cols[q][k] = xp * s + xq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv = cols.map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Singular values of a 4×4 complex matrix, descending.
pub fn singular_values_4x4(m: &ComplexMatrix4) -> [f64; 4] {
    one_sided_jacobi(m.transpose().0)
}

/// Singular values of a 3×3 real matrix, descending. Their squares are the
/// eigenvalues of T·Tᵀ.
pub fn singular_values_3x3(t: &RealMatrix3) -> [f64; 3] {
    let cols: [[Complex64; 3]; 3] = core::array::from_fn(|j| core::array::from_fn(|i| Complex64::new(t.0[i][j], 0.0)));
    one_sided_jacobi(cols)
}
