//! Validated two-qubit density matrices and the state families built from
//! Bell projectors.

use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::matrix::{hermitian_eigenvalues, ComplexMatrix4, Spectrum4};
use crate::rng::Stream;
use crate::{Error, Result, STATE_TOLERANCE};
use num_traits::Float;

/// Tolerance on Σw = 1 for three-Bell weights.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// A 4×4 matrix known to be Hermitian, unit-trace and PSD within 1e-9.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(ComplexMatrix4);

impl DensityMatrix {
    /// Checks the three state invariants. The input is stored unchanged.
    pub fn validate(raw: ComplexMatrix4) -> Result<Self> {
        if !raw.is_finite() {
            return Err(Error::NonFinite);
        }
        let residual = raw.hermiticity_residual();
        if residual > STATE_TOLERANCE {
            return Err(Error::NonHermitian { residual });
        }
        let trace = raw.trace().re;
        let residual = (trace - 1.0).abs();
        if residual > STATE_TOLERANCE {
            return Err(Error::TraceNotOne { trace, residual });
        }
        let min_eigenvalue = hermitian_eigenvalues(&raw)?.min();
        if min_eigenvalue < -STATE_TOLERANCE {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(Self(raw))
    }

    /// I/4
    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix4::identity().scale(0.25))
    }

    /// |ψ⟩⟨ψ| for a nonzero vector, normalized first.
    pub fn from_pure(psi: [Complex64; 4]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidArgument("pure state vector must be nonzero and finite"));
        }
        let v = psi.map(|z| z / norm);
        Ok(Self(ComplexMatrix4::outer(&v, &v)))
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix4 {
        self.0
    }

    pub fn eigenvalues(&self) -> Spectrum4 {
        hermitian_eigenvalues(&self.0).expect("validated states are Hermitian")
    }

    /// U·ρ·U† for a unitary U; re-validated.
    pub fn conjugate_by(&self, u: &ComplexMatrix4) -> Result<Self> {
        Self::validate(self.0.conjugate_by(u))
    }

    /// tr_B ρ as a 2×2 matrix.
    pub fn reduced_first(&self) -> [[Complex64; 2]; 2] {
        let m = &self.0 .0;
        let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = m[2 * i][2 * j] + m[2 * i + 1][2 * j + 1];
            }
        }
        r
    }
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    pub fn vector(self) -> [Complex64; 4] {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        match self {
            Bell::PhiPlus => [s, z, z, s],
            Bell::PhiMinus => [s, z, z, -s],
            Bell::PsiPlus => [z, s, s, z],
            Bell::PsiMinus => [z, s, -s, z],
        }
    }

    /// The projector, with its entries exactly ±1/2.
    pub fn projector(self) -> ComplexMatrix4 {
        let ((a, b), sign) = match self {
            Bell::PhiPlus => ((0, 3), 1.0),
            Bell::PhiMinus => ((0, 3), -1.0),
            Bell::PsiPlus => ((1, 2), 1.0),
            Bell::PsiMinus => ((1, 2), -1.0),
        };
        let mut m = [[0.0; 4]; 4];
        m[a][a] = 0.5;
        m[b][b] = 0.5;
        m[a][b] = 0.5 * sign;
        m[b][a] = 0.5 * sign;
        ComplexMatrix4::from_real(m)
    }
}

/// Σ pₖ P[Bellₖ] over Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn bell_mixture(weights: [f64; 4]) -> ComplexMatrix4 {
    let mut m = ComplexMatrix4::zeros();
    for (w, b) in weights.into_iter().zip(Bell::ALL) {
        if w != 0.0 {
            m = m + b.projector().scale(w);
        }
    }
    m
}

/// Which state family, without its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FamilyKind {
    Pure,
    Werner,
    Mems,
    TwoBell,
    ThreeBell,
}

impl FamilyKind {
    pub const fn name(self) -> &'static str {
        match self {
            FamilyKind::Pure => "pure",
            FamilyKind::Werner => "werner",
            FamilyKind::Mems => "mems",
            FamilyKind::TwoBell => "two_bell",
            FamilyKind::ThreeBell => "three_bell",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Self::Pure, Self::Werner, Self::Mems, Self::TwoBell, Self::ThreeBell]
            .into_iter()
            .find(|k| k.name() == name)
    }

    /// The single-parameter constructor for the one-parameter families.
    pub fn at(self, p: f64) -> Option<FamilySpec> {
        match self {
            FamilyKind::Pure => Some(FamilySpec::Pure { a: p }),
            FamilyKind::Werner => Some(FamilySpec::Werner { x: p }),
            FamilyKind::Mems => Some(FamilySpec::Mems { gamma: p }),
            FamilyKind::TwoBell => Some(FamilySpec::TwoBell { w: p }),
            FamilyKind::ThreeBell => None,
        }
    }
}

/// One member of a state family.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "snake_case"))]
pub enum FamilySpec {
    /// P[a|00⟩ + b|11⟩] with b = √(1 − a²).
    Pure { a: f64 },
    /// x·P[Φ⁺] + (1 − x)/4·I.
    Werner { x: f64 },
    /// Maximally entangled mixed states; γ ∈ (0, 1].
    Mems { gamma: f64 },
    /// w·P[Φ⁺] + (1 − w)·P[Φ⁻].
    TwoBell { w: f64 },
    /// w1·P[Φ⁺] + w2·P[Φ⁻] + w3·P[Ψ⁺], sorted so that w1 ≥ w2 ≥ w3.
    ThreeBell { w1: f64, w2: f64, w3: f64 },
}

fn check_unit(family: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidFamilyParameter {
            family,
            value,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(())
}

/// g(γ) of the MEMS family: 1/3 below γ = 2/3, γ/2 from 2/3 on.
pub fn mems_g(gamma: f64) -> f64 {
    if gamma < 2.0 / 3.0 {
        1.0 / 3.0
    } else {
        gamma / 2.0
    }
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Pure { .. } => FamilyKind::Pure,
            FamilySpec::Werner { .. } => FamilyKind::Werner,
            FamilySpec::Mems { .. } => FamilyKind::Mems,
            FamilySpec::TwoBell { .. } => FamilyKind::TwoBell,
            FamilySpec::ThreeBell { .. } => FamilyKind::ThreeBell,
        }
    }

    /// Checks the parameter range and puts three-Bell weights in descending
    /// order.
    pub fn normalized(self) -> Result<Self> {
        match self {
            FamilySpec::Pure { a } => check_unit("pure", a).map(|_| self),
            FamilySpec::Werner { x } => check_unit("werner", x).map(|_| self),
            FamilySpec::TwoBell { w } => check_unit("two_bell", w).map(|_| self),
            FamilySpec::Mems { gamma } => {
                if gamma > 0.0 && gamma <= 1.0 {
                    Ok(self)
                } else {
                    Err(Error::InvalidFamilyParameter {
                        family: "mems",
                        value: gamma,
                        reason: "must lie in (0, 1]",
                    })
                }
            }
            FamilySpec::ThreeBell { w1, w2, w3 } => {
                let mut w = [w1, w2, w3];
                for &v in &w {
                    check_unit("three_bell", v)?;
                }
                let sum = w1 + w2 + w3;
                if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
                    return Err(Error::InvalidFamilyParameter {
                        family: "three_bell",
                        value: sum,
                        reason: "weights must sum to 1",
                    });
                }
                w.sort_by(|a, b| b.total_cmp(a));
                Ok(FamilySpec::ThreeBell {
                    w1: w[0],
                    w2: w[1],
                    w3: w[2],
                })
            }
        }
    }

    /// Weights on Φ⁺, Φ⁻, Ψ⁺, Ψ⁻ for the Bell-diagonal families.
    pub fn bell_weights(&self) -> Option<[f64; 4]> {
        match *self {
            FamilySpec::Werner { x } => {
                let n = (1.0 - x) / 4.0;
                Some([x + n, n, n, n])
            }
            FamilySpec::TwoBell { w } => Some([w, 1.0 - w, 0.0, 0.0]),
            FamilySpec::ThreeBell { w1, w2, w3 } => Some([w1, w2, w3, 0.0]),
            _ => None,
        }
    }

    fn raw_matrix(&self) -> ComplexMatrix4 {
        match *self {
            FamilySpec::Pure { a } => {
                let b = (1.0 - a * a).max(0.0).sqrt();
                let z = Complex64::new(0.0, 0.0);
                let v = [Complex64::new(a, 0.0), z, z, Complex64::new(b, 0.0)];
                ComplexMatrix4::outer(&v, &v)
            }
            FamilySpec::Werner { x } => {
                Bell::PhiPlus.projector().scale(x) + ComplexMatrix4::identity().scale((1.0 - x) / 4.0)
            }
            FamilySpec::Mems { gamma } => {
                let g = mems_g(gamma);
                let mut m = Bell::PhiPlus.projector().scale(0.5 * (2.0 * g + gamma))
                    + Bell::PhiMinus.projector().scale(0.5 * (2.0 * g - gamma));
                m[(1, 1)] += Complex64::new(1.0 - 2.0 * g, 0.0);
                m
            }
            FamilySpec::TwoBell { w } => bell_mixture([w, 1.0 - w, 0.0, 0.0]),
            FamilySpec::ThreeBell { w1, w2, w3 } => bell_mixture([w1, w2, w3, 0.0]),
        }
    }
}

/// Builds the family member, validating parameters and the resulting state.
pub fn make_family(spec: FamilySpec) -> Result<DensityMatrix> {
    let spec = spec.normalized()?;
    DensityMatrix::validate(spec.raw_matrix())
}

/// G·G†/tr(G·G†) for a 4×4 matrix G of standard complex Gaussians drawn
/// from stream `index` of `seed`.
pub fn sample_hilbert_schmidt_at(seed: u64, index: u64) -> DensityMatrix {
    let mut s = Stream::new(seed, index);
    let mut g = ComplexMatrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            g[(i, j)] = Complex64::new(s.normal(), s.normal());
        }
    }
    let w = g * g.adjoint();
    let rho = w.scale(1.0 / w.trace().re);
    DensityMatrix::validate(rho).expect("G·G† is a valid state after normalization")
}

pub fn sample_hilbert_schmidt(seed: u64) -> DensityMatrix {
    sample_hilbert_schmidt_at(seed, 0)
}

/// Bell weights drawn uniformly from the 3-simplex.
pub fn sample_bell_weights_at(seed: u64, index: u64) -> [f64; 4] {
    Stream::new(seed, index).simplex()
}

pub fn sample_bell_diagonal_at(seed: u64, index: u64) -> DensityMatrix {
    DensityMatrix::validate(bell_mixture(sample_bell_weights_at(seed, index))).expect("Bell mixtures are valid states")
}

pub fn sample_bell_diagonal(seed: u64) -> DensityMatrix {
    sample_bell_diagonal_at(seed, 0)
}

/// A Haar-random pure state: a normalized complex Gaussian vector.
pub fn sample_pure_at(seed: u64, index: u64) -> DensityMatrix {
    let mut s = Stream::new(seed, index);
    let psi: [Complex64; 4] = core::array::from_fn(|_| Complex64::new(s.normal(), s.normal()));
    DensityMatrix::from_pure(psi).expect("Gaussian vector is nonzero")
}
