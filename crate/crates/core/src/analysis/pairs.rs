//! Exact constructions of states sharing a measure value.

use crate::measures::TSIRELSON;
use crate::states::{FamilyKind, FamilySpec};
use crate::{Error, Result};
use num_traits::Float;

/// Roundoff allowed on the discriminant and on the derived weights.
const ROOT_SLACK: f64 = 1e-14;

/// Three-Bell weights with first weight `target_w1` and the same B as `base`.
///
/// B of a sorted three-Bell mixture depends on w2(1−w2) + w3(1−w3) only.
/// With s = w2′ + w3′ = 1 − target_w1 and that sum fixed at its base value K,
/// the product p = w2′·w3′ = (K − s + s²)/2, so w2′ and w3′ are the roots of
/// t² − s·t + p, assigned larger-then-smaller.
pub fn equal_b_three_bell_pair(base: FamilySpec, target_w1: f64) -> Result<FamilySpec> {
    let FamilySpec::ThreeBell { w1, w2, w3 } = base.normalized()? else {
        return Err(Error::InvalidArgument("base must be a three_bell state"));
    };
    if w1 <= 0.5 {
        return Err(Error::InvalidFamilyParameter {
            family: "three_bell",
            value: w1,
            reason: "base w1 must exceed 1/2",
        });
    }
    if !(target_w1 > 0.5 && target_w1 <= 1.0) {
        return Err(Error::InvalidFamilyParameter {
            family: "three_bell",
            value: target_w1,
            reason: "target w1 must lie in (1/2, 1]",
        });
    }
    let k = w2 * (1.0 - w2) + w3 * (1.0 - w3);
    let s = 1.0 - target_w1;
    let p = (k - s + s * s) / 2.0;
    let discriminant = s * s - 4.0 * p;
    if discriminant < -ROOT_SLACK {
        return Err(Error::NoRealSolution { discriminant });
    }
    let root = discriminant.max(0.0).sqrt();
    let hi = (s + root) / 2.0;
    // s − hi rather than (s − root)/2 keeps w2′ + w3′ = s exact.
    let lo = s - hi;
    if hi > target_w1 + ROOT_SLACK {
        return Err(Error::OrderingViolated { w1: target_w1, w2: hi });
    }
    if lo < -ROOT_SLACK {
        return Err(Error::NegativeWeight { w3: lo });
    }
    Ok(FamilySpec::ThreeBell {
        w1: target_w1,
        w2: hi.min(target_w1),
        w3: lo.max(0.0),
    })
}

/// The pure state a|00⟩ + b|11⟩ with a ≤ b and tangle `tau`.
pub fn pure_with_tangle(tau: f64) -> Result<FamilySpec> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::DomainError {
            name: "tau",
            value: tau,
        });
    }
    // 2ab = √τ with a² + b² = 1.
    let a2 = (1.0 - (1.0 - tau).sqrt()) / 2.0;
    Ok(FamilySpec::Pure { a: a2.sqrt() })
}

/// The member of a one-parameter family with Bell violation `b`, when one
/// exists. Pure states cover [2, 2√2], Werner states [0, 2√2] and MEMS
/// (2/3, 2√2].
pub fn family_at_bell(kind: FamilyKind, b: f64) -> Result<FamilySpec> {
    let out_of_range = |reason| Error::InvalidFamilyParameter {
        family: kind.name(),
        value: b,
        reason,
    };
    if !(0.0..=TSIRELSON).contains(&b) {
        return Err(out_of_range("B must lie in [0, 2√2]"));
    }
    let m = b * b / 4.0;
    match kind {
        FamilyKind::Pure => {
            if b < 2.0 {
                return Err(out_of_range("pure states have B ≥ 2"));
            }
            pure_with_tangle((m - 1.0).min(1.0))
        }
        FamilyKind::Werner => Ok(FamilySpec::Werner {
            x: (b / TSIRELSON).min(1.0),
        }),
        FamilyKind::Mems => {
            // M = 2γ² for γ ≥ 1/3, γ² + 1/9 below.
            let gamma = if m >= 2.0 / 9.0 {
                (m / 2.0).sqrt()
            } else if m > 1.0 / 9.0 {
                (m - 1.0 / 9.0).sqrt()
            } else {
                return Err(out_of_range("MEMS have B > 2/3"));
            };
            Ok(FamilySpec::Mems { gamma: gamma.min(1.0) })
        }
        FamilyKind::TwoBell => {
            if b < 2.0 {
                return Err(out_of_range("two-Bell mixtures have B ≥ 2"));
            }
            // τ = (2w − 1)² = M − 1, taking w ≥ 1/2.
            Ok(FamilySpec::TwoBell {
                w: ((1.0 + (m - 1.0).min(1.0).sqrt()) / 2.0).min(1.0),
            })
        }
        FamilyKind::ThreeBell => Err(Error::InvalidArgument("three_bell is not a one-parameter family")),
    }
}
