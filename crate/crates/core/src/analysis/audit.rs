//! Does ordering states by S_L agree with ordering them by S?

use alloc::vec::Vec;

use crate::measures::{linear_entropy_of_spectrum, measure_all, von_neumann_entropy_of_spectrum};
use crate::states::{make_family, FamilyKind};
use crate::Result;

use super::claims::{verify_claim, ClaimConfig, ClaimId, ClaimReport, EQUALITY_TOLERANCE};

/// Two spectra on which S_L and S disagree: S_L(p) > S_L(q) but S(p) < S(q).
pub const REFERENCE_SPECTRA: ([f64; 4], [f64; 4]) = ([0.5, 0.5, 0.0, 0.0], [0.7, 0.1, 0.1, 0.1]);

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilyAgreement {
    pub family: FamilyKind,
    pub points: usize,
    /// Unordered pairs compared.
    pub pairs: usize,
    pub disagreements: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectralComparison {
    pub p: [f64; 4],
    pub q: [f64; 4],
    pub s_linear: (f64, f64),
    pub s_von_neumann: (f64, f64),
    pub orders_agree: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropyAudit {
    pub families: Vec<FamilyAgreement>,
    pub reference: SpectralComparison,
    pub general: ClaimReport,
}

fn sign(d: f64) -> i8 {
    if d > EQUALITY_TOLERANCE {
        1
    } else if d < -EQUALITY_TOLERANCE {
        -1
    } else {
        0
    }
}

/// Compares both entropies on two spectra.
pub fn compare_spectra(p: [f64; 4], q: [f64; 4]) -> Result<SpectralComparison> {
    let s_linear = (linear_entropy_of_spectrum(&p), linear_entropy_of_spectrum(&q));
    let s_von_neumann = (
        von_neumann_entropy_of_spectrum(&p)?,
        von_neumann_entropy_of_spectrum(&q)?,
    );
    Ok(SpectralComparison {
        p,
        q,
        s_linear,
        s_von_neumann,
        orders_agree: sign(s_linear.0 - s_linear.1) == sign(s_von_neumann.0 - s_von_neumann.1),
    })
}

fn family_agreement(kind: FamilyKind, points: usize) -> Result<FamilyAgreement> {
    let values: Vec<(f64, f64)> = (1..=points)
        .map(|k| {
            let p = k as f64 / (points + 1) as f64;
            let spec = kind.at(p).expect("one-parameter family");
            let r = measure_all(&make_family(spec)?)?;
            Ok((r.s_linear, r.s_von_neumann))
        })
        .collect::<Result<_>>()?;
    let mut pairs = 0;
    let mut disagreements = 0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            pairs += 1;
            if sign(a.0 - b.0) != sign(a.1 - b.1) {
                disagreements += 1;
            }
        }
    }
    Ok(FamilyAgreement {
        family: kind,
        points,
        pairs,
        disagreements,
    })
}

/// Pairwise agreement along the Werner, two-Bell and MEMS curves on
/// `grid_points` interior points each, the reference spectra, and the
/// `entropy_order_general` claim over `general_count` random pairs.
pub fn entropy_order_audit(grid_points: usize, general_count: usize, seed: u64) -> Result<EntropyAudit> {
    let families = [FamilyKind::Werner, FamilyKind::TwoBell, FamilyKind::Mems]
        .into_iter()
        .map(|k| family_agreement(k, grid_points))
        .collect::<Result<_>>()?;
    let reference = compare_spectra(REFERENCE_SPECTRA.0, REFERENCE_SPECTRA.1)?;
    let config = ClaimConfig::for_claim(ClaimId::EntropyOrderGeneral).with_count(general_count);
    let general = verify_claim(ClaimId::EntropyOrderGeneral, &config, seed)?;
    Ok(EntropyAudit {
        families,
        reference,
        general,
    })
}
