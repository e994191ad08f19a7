//! Entanglement, Bell violation and mixedness of a two-qubit state.
//!
//! | quantity | definition |
//! |---|---|
//! | tangle τ | `max(0, λ₁−λ₂−λ₃−λ₄)²`, λ the descending square roots of the spectrum of ρρ̃ |
//! | EoF | `h((1+√(1−τ))/2)` with the binary entropy `h` |
//! | M | sum of the two larger eigenvalues of T·Tᵀ, `t_mn = tr(ρ σ_n⊗σ_m)` |
//! | B | `2√M` |
//! | S_L | `(4/3)(1 − tr ρ²)` |
//! | S | `−tr(ρ log₄ ρ)` |

use core::f64::consts::{LN_2, SQRT_2};

use num_complex::Complex64;

use crate::matrix::{
    psd_sqrt, singular_values_3x3, singular_values_4x4, spin_flip, ComplexMatrix4, RealMatrix3, PAULIS,
};
use crate::states::DensityMatrix;
use crate::{Error, Result, STATE_TOLERANCE};
use num_traits::Float;

/// Imaginary residue allowed on a correlation-matrix entry.
pub const CORRELATION_IMAG_TOLERANCE: f64 = 1e-10;
/// Tsirelson's bound 2√2.
pub const TSIRELSON: f64 = 2.0 * SQRT_2;
const LN_4: f64 = 2.0 * LN_2;

/// The six measures of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasureRecord {
    pub tau: f64,
    pub eof: f64,
    pub m_value: f64,
    pub bell_b: f64,
    pub s_linear: f64,
    pub s_von_neumann: f64,
}

impl MeasureRecord {
    /// Range and internal-consistency check, with 1e-9 slack on the ranges.
    pub fn is_consistent(&self) -> bool {
        let slack = STATE_TOLERANCE;
        let within = |x: f64, hi: f64| x.is_finite() && x >= -slack && x <= hi + slack;
        let eof_ok = eof_from_tangle(self.tau)
            .map(|e| (e - self.eof).abs() <= 1e-12)
            .unwrap_or(false);
        within(self.tau, 1.0)
            && within(self.eof, 1.0)
            && within(self.m_value, 2.0)
            && within(self.bell_b, TSIRELSON)
            && within(self.s_linear, 1.0)
            && within(self.s_von_neumann, 1.0)
            && eof_ok
            && (self.bell_b - 2.0 * self.m_value.sqrt()).abs() <= 1e-12
    }
}

/// h(x) = −x·log₂x − (1−x)·log₂(1−x), with 0·log 0 = 0.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainError { name: "x", value: x });
    }
    Ok((xlnx(x) + xlnx(1.0 - x)) / -LN_2)
}

fn xlnx(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.ln()
    }
}

/// Descending square roots of the eigenvalues of ρρ̃.
///
/// These are the singular values of √ρ·√ρ̃, whose Gram matrix is the
/// Hermitian √ρ·ρ̃·√ρ. Taking singular values directly avoids the square
/// root of roundoff-sized eigenvalues.
pub fn spin_flip_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let root = psd_sqrt(rho.matrix())?;
    let x = root * spin_flip(&root);
    Ok(singular_values_4x4(&x))
}

/// Wootters concurrence max(0, λ₁−λ₂−λ₃−λ₄).
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let l = spin_flip_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

pub fn tangle(rho: &DensityMatrix) -> Result<f64> {
    concurrence(rho).map(|c| c * c)
}

/// h((1+√(1−τ))/2); τ is clamped to [0, 1] first.
pub fn eof_from_tangle(tau: f64) -> Result<f64> {
    if !tau.is_finite() {
        return Err(Error::DomainError {
            name: "tau",
            value: tau,
        });
    }
    let tau = tau.clamp(0.0, 1.0);
    binary_entropy(((1.0 + (1.0 - tau).sqrt()) / 2.0).min(1.0))
}

pub fn eof(rho: &DensityMatrix) -> Result<f64> {
    eof_from_tangle(tangle(rho)?)
}

/// `t[m][n] = tr(ρ·σ_n⊗σ_m)` for m, n over x, y, z.
pub fn correlation_matrix(rho: &DensityMatrix) -> Result<RealMatrix3> {
    let m = rho.matrix();
    let mut t = RealMatrix3::default();
    for row in 0..3 {
        for col in 0..3 {
            let op = ComplexMatrix4::kron(&PAULIS[col], &PAULIS[row]);
            let mut z = Complex64::new(0.0, 0.0);
            for i in 0..4 {
                for k in 0..4 {
                    z += m[(i, k)] * op[(k, i)];
                }
            }
            if z.im.abs() > CORRELATION_IMAG_TOLERANCE {
                return Err(Error::NonRealCorrelation { row, col, imag: z.im });
            }
            t.0[row][col] = z.re;
        }
    }
    Ok(t)
}

/// Sum of the two largest eigenvalues of T·Tᵀ.
pub fn m_from_correlation(t: &RealMatrix3) -> f64 {
    let s = singular_values_3x3(t);
    s[0] * s[0] + s[1] * s[1]
}

pub fn m_value(rho: &DensityMatrix) -> Result<f64> {
    correlation_matrix(rho).map(|t| m_from_correlation(&t))
}

/// Maximal CHSH value 2√M.
pub fn bell_violation(rho: &DensityMatrix) -> Result<f64> {
    let b = 2.0 * m_value(rho)?.sqrt();
    debug_assert!(b <= TSIRELSON + STATE_TOLERANCE, "B = {b} above Tsirelson");
    Ok(b)
}

/// (4/3)(1 − tr ρ²).
pub fn linear_entropy(rho: &DensityMatrix) -> Result<f64> {
    // For Hermitian ρ, tr ρ² is the squared Frobenius norm.
    let purity = rho.matrix().norm_sqr();
    Ok((4.0 / 3.0 * (1.0 - purity)).max(0.0))
}

/// −Σ pᵢ log₄ pᵢ over a spectrum; entries in [−1e-9, 0) count as zero.
pub fn von_neumann_entropy_of_spectrum(p: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for &x in p {
        if x < -STATE_TOLERANCE {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: x });
        }
        acc += xlnx(x.max(0.0));
    }
    Ok((-acc / LN_4).max(0.0))
}

/// (4/3)(1 − Σ pᵢ²) over a spectrum.
pub fn linear_entropy_of_spectrum(p: &[f64]) -> f64 {
    (4.0 / 3.0 * (1.0 - p.iter().map(|x| x * x).sum::<f64>())).max(0.0)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    von_neumann_entropy_of_spectrum(&rho.eigenvalues().values())
}

pub fn measure_all(rho: &DensityMatrix) -> Result<MeasureRecord> {
    let tau = tangle(rho)?;
    let m = m_value(rho)?;
    Ok(MeasureRecord {
        tau,
        eof: eof_from_tangle(tau)?,
        m_value: m,
        bell_b: 2.0 * m.sqrt(),
        s_linear: linear_entropy(rho)?,
        s_von_neumann: von_neumann_entropy(rho)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_family, Bell, FamilySpec};
    use core::f64::consts::FRAC_1_SQRT_2;

    fn phi_plus() -> DensityMatrix {
        DensityMatrix::validate(Bell::PhiPlus.projector()).unwrap()
    }

    fn fam(spec: FamilySpec) -> DensityMatrix {
        make_family(spec).unwrap()
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.9).unwrap() - 0.4689955935892811).abs() < 1e-15);
        assert!((binary_entropy(0.3).unwrap() - binary_entropy(0.7).unwrap()).abs() < 1e-15);
        assert!(matches!(binary_entropy(1.01), Err(Error::DomainError { .. })));
        assert!(matches!(binary_entropy(f64::NAN), Err(Error::DomainError { .. })));
    }

    #[test]
    fn tangle_examples() {
        assert!((tangle(&phi_plus()).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(tangle(&DensityMatrix::maximally_mixed()).unwrap(), 0.0);
        // concurrence (3x − 1)/2 at x = 0.5
        assert!((tangle(&fam(FamilySpec::Werner { x: 0.5 })).unwrap() - 0.0625).abs() < 1e-12);
    }

    #[test]
    fn eof_examples() {
        assert!((eof(&phi_plus()).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(eof(&DensityMatrix::maximally_mixed()).unwrap(), 0.0);
        let e = eof(&fam(FamilySpec::TwoBell { w: 0.8 })).unwrap();
        assert!((e - 0.4689955935892811).abs() < 1e-9);
    }

    #[test]
    fn correlation_examples() {
        let t = correlation_matrix(&phi_plus()).unwrap();
        assert!(t.max_abs_diff(&RealMatrix3::diagonal([1.0, -1.0, 1.0])) < 1e-15);
        let t = correlation_matrix(&DensityMatrix::maximally_mixed()).unwrap();
        assert_eq!(t, RealMatrix3::default());
        let t = correlation_matrix(&fam(FamilySpec::ThreeBell {
            w1: 0.7,
            w2: 0.2,
            w3: 0.1,
        }))
        .unwrap();
        assert!(t.max_abs_diff(&RealMatrix3::diagonal([0.6, -0.4, 0.8])) < 1e-15);
    }

    #[test]
    fn correlation_index_order() {
        // ρ = |0+⟩⟨0+| has ⟨σz⊗σx⟩ = 1, which lands at row x, column z.
        let h = FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let rho = DensityMatrix::from_pure([Complex64::new(h, 0.0), Complex64::new(h, 0.0), z, z]).unwrap();
        let t = correlation_matrix(&rho).unwrap();
        assert!((t.0[0][2] - 1.0).abs() < 1e-15);
        assert!(t.0[2][0].abs() < 1e-15);
    }

    #[test]
    fn m_and_b_examples() {
        assert!((m_value(&phi_plus()).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(m_value(&DensityMatrix::maximally_mixed()).unwrap(), 0.0);
        let three = fam(FamilySpec::ThreeBell {
            w1: 0.7,
            w2: 0.2,
            w3: 0.1,
        });
        assert!((m_value(&three).unwrap() - 1.0).abs() < 1e-14);

        assert!((bell_violation(&phi_plus()).unwrap() - 2.8284271247461903).abs() < 1e-12);
        let w = fam(FamilySpec::Werner { x: FRAC_1_SQRT_2 });
        assert!((bell_violation(&w).unwrap() - 2.0).abs() < 1e-12);
        let two = fam(FamilySpec::TwoBell { w: 0.8 });
        assert!((bell_violation(&two).unwrap() - 2.3323807579381204).abs() < 1e-12);
    }

    #[test]
    fn entropy_examples() {
        let pure = fam(FamilySpec::Pure { a: 0.6 });
        assert!(linear_entropy(&pure).unwrap() < 1e-14);
        assert!(von_neumann_entropy(&pure).unwrap() < 1e-12);
        let mm = DensityMatrix::maximally_mixed();
        assert!((linear_entropy(&mm).unwrap() - 1.0).abs() < 1e-15);
        assert!((von_neumann_entropy(&mm).unwrap() - 1.0).abs() < 1e-15);
        let two = fam(FamilySpec::TwoBell { w: 0.8 });
        assert!((linear_entropy(&two).unwrap() - 0.4266666666666667).abs() < 1e-12);
        assert!((von_neumann_entropy(&two).unwrap() - 0.36096404744368127).abs() < 1e-12);
    }

    #[test]
    fn measure_all_examples() {
        let r = measure_all(&phi_plus()).unwrap();
        assert!((r.tau - 1.0).abs() < 1e-12 && (r.eof - 1.0).abs() < 1e-9);
        assert!((r.m_value - 2.0).abs() < 1e-12 && (r.bell_b - TSIRELSON).abs() < 1e-12);
        assert!(r.s_linear < 1e-14 && r.s_von_neumann < 1e-12);
        assert!(r.is_consistent());

        let r = measure_all(&DensityMatrix::maximally_mixed()).unwrap();
        assert_eq!((r.tau, r.eof, r.m_value, r.bell_b), (0.0, 0.0, 0.0, 0.0));
        assert!((r.s_linear - 1.0).abs() < 1e-15 && (r.s_von_neumann - 1.0).abs() < 1e-15);

        // Closed forms: τ = ((3x−1)/2)², S_L = 1 − x², spectrum ((1+3x)/4, 3×(1−x)/4).
        let r = measure_all(&fam(FamilySpec::Werner { x: FRAC_1_SQRT_2 })).unwrap();
        assert!((r.tau - 0.31433982822017836).abs() < 1e-9);
        assert!((r.eof - 0.422897067834504).abs() < 1e-9);
        assert!((r.m_value - 1.0).abs() < 1e-12);
        assert!((r.bell_b - 2.0).abs() < 1e-12);
        assert!((r.s_linear - 0.5).abs() < 1e-12);
        assert!((r.s_von_neumann - 0.5538664470257066).abs() < 1e-9);
        assert!(r.is_consistent());
    }

    #[test]
    fn spectrum_entropy_rejects_negative() {
        assert!(von_neumann_entropy_of_spectrum(&[1.0, -1e-12, 0.0, 0.0]).is_ok());
        assert!(von_neumann_entropy_of_spectrum(&[1.1, -0.1, 0.0, 0.0]).is_err());
    }
}
