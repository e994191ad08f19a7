use alloc::vec::Vec;

use crate::measures::{linear_entropy_of_spectrum, measure_all, von_neumann_entropy_of_spectrum};
use crate::states::{make_family, FamilyKind, FamilySpec};
use crate::{Error, Result};
use num_traits::Float;

/// Analytic (τ, B, S_L, S) of a family member.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClosedForm {
    pub tau: f64,
    pub bell_b: f64,
    pub s_linear: f64,
    pub s_von_neumann: f64,
}

/// One family member measured both ways.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurvePoint {
    pub family: FamilySpec,
    pub tau: f64,
    pub bell_b: f64,
    pub s_linear: f64,
    pub s_von_neumann: f64,
    pub closed: ClosedForm,
    /// Largest |closed form − matrix pipeline| over the four fields.
    pub pipeline_gap: f64,
}

fn sorted_desc(mut p: [f64; 4]) -> [f64; 4] {
    p.sort_by(|a, b| b.total_cmp(a));
    p
}

fn from_spectrum(tau: f64, m: f64, spectrum: [f64; 4]) -> Result<ClosedForm> {
    Ok(ClosedForm {
        tau,
        bell_b: 2.0 * m.max(0.0).sqrt(),
        s_linear: linear_entropy_of_spectrum(&spectrum),
        s_von_neumann: von_neumann_entropy_of_spectrum(&spectrum)?,
    })
}

/// Closed forms derived by hand for each family. None of these touch the
/// matrix pipeline.
pub fn closed_form(spec: &FamilySpec) -> Result<ClosedForm> {
    let spec = spec.normalized()?;
    match spec {
        FamilySpec::Pure { a } => {
            let b2 = 1.0 - a * a;
            let tau = 4.0 * a * a * b2;
            Ok(ClosedForm {
                tau,
                bell_b: 2.0 * (1.0 + tau).sqrt(),
                s_linear: 0.0,
                s_von_neumann: 0.0,
            })
        }
        FamilySpec::Werner { x } => {
            let c = ((3.0 * x - 1.0) / 2.0).max(0.0);
            let n = (1.0 - x) / 4.0;
            let mut cf = from_spectrum(c * c, 2.0 * x * x, [(1.0 + 3.0 * x) / 4.0, n, n, n])?;
            cf.s_linear = 1.0 - x * x;
            Ok(cf)
        }
        FamilySpec::Mems { gamma } => {
            // T = diag(γ, −γ, t_zz), concurrence γ.
            let (t_zz, spectrum) = if gamma < 2.0 / 3.0 {
                (
                    1.0 / 3.0,
                    [1.0 / 3.0 + gamma / 2.0, 1.0 / 3.0, 1.0 / 3.0 - gamma / 2.0, 0.0],
                )
            } else {
                (2.0 * gamma - 1.0, [gamma, 1.0 - gamma, 0.0, 0.0])
            };
            let m = gamma * gamma + (gamma * gamma).max(t_zz * t_zz);
            from_spectrum(gamma * gamma, m, sorted_desc(spectrum))
        }
        FamilySpec::TwoBell { w } => {
            let tau = (2.0 * w - 1.0) * (2.0 * w - 1.0);
            let mut cf = from_spectrum(tau, 1.0 + tau, sorted_desc([w, 1.0 - w, 0.0, 0.0]))?;
            cf.bell_b = 2.0 * (1.0 + tau).sqrt();
            cf.s_linear = 8.0 / 3.0 * w * (1.0 - w);
            Ok(cf)
        }
        FamilySpec::ThreeBell { w1, w2, w3 } => {
            let q = |w: f64| w * (1.0 - w);
            // Valid for w1 > 1/2; below that the state is separable.
            let tau = if w1 > 0.5 { 1.0 - 4.0 * q(w1) } else { 0.0 };
            Ok(ClosedForm {
                tau,
                bell_b: 2.0 * (2.0 - 4.0 * q(w2) - 4.0 * q(w3)).max(0.0).sqrt(),
                s_linear: 4.0 / 3.0 * (q(w1) + q(w2) + q(w3)),
                s_von_neumann: von_neumann_entropy_of_spectrum(&[w1, w2, w3, 0.0])?,
            })
        }
    }
}

pub fn curve_point(spec: &FamilySpec) -> Result<CurvePoint> {
    let family = spec.normalized()?;
    let closed = closed_form(&family)?;
    let r = measure_all(&make_family(family)?)?;
    let pipeline_gap = [
        (r.tau - closed.tau).abs(),
        (r.bell_b - closed.bell_b).abs(),
        (r.s_linear - closed.s_linear).abs(),
        (r.s_von_neumann - closed.s_von_neumann).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(CurvePoint {
        family,
        tau: r.tau,
        bell_b: r.bell_b,
        s_linear: r.s_linear,
        s_von_neumann: r.s_von_neumann,
        closed,
        pipeline_gap,
    })
}

/// Evaluates a one-parameter family on `grid`.
pub fn family_curve(kind: FamilyKind, grid: &[f64]) -> Result<Vec<CurvePoint>> {
    grid.iter()
        .map(|&p| {
            let spec = kind
                .at(p)
                .ok_or(Error::InvalidArgument("three_bell has no one-parameter grid"))?;
            curve_point(&spec)
        })
        .collect()
}
