//! Seeded checks of ordering claims between Bell violation, tangle and
//! mixedness.
//!
//! Every claim is an implication over pairs of states. Pairs whose premise
//! involves an equality ("equal B", "equal τ") are constructed exactly; the
//! matrix pipeline then confirms the equality to [`EQUALITY_TOLERANCE`] and
//! a failed confirmation counts as a violation.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::pairs::{equal_b_three_bell_pair, family_at_bell, pure_with_tangle};
use crate::matrix::ComplexMatrix4;
use crate::measures::{measure_all, MeasureRecord, TSIRELSON};
use crate::rng::Stream;
use crate::states::{
    make_family, sample_bell_diagonal_at, sample_hilbert_schmidt_at, DensityMatrix, FamilyKind, FamilySpec,
};
use crate::{Error, Result};

/// Tolerance for "equal B" / "equal τ" and for deciding a strict order.
pub const EQUALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ClaimId {
    /// Equal B ⇒ equal τ, and S_L(two-Bell) > S_L(pure).
    TwoBellVsPure,
    /// Equal B and τ(ρ₃) > τ(ρ₃′) ⇒ S_L(ρ₃) < S_L(ρ₃′).
    ThreeBellReversal,
    /// Equal τ and B(ρ₃) > B(ρ₃′) ⇒ S_L(ρ₃) < S_L(ρ₃′).
    ThreeBellEqualTau,
    /// Pure/Werner/MEMS pairs with equal B: higher τ ⇒ higher S_L.
    MunroThreeFamilies,
    /// S_L(ρ) > S_L(ρ′) ⟺ S(ρ) > S(ρ′).
    EntropyOrderGeneral,
}

impl ClaimId {
    pub const ALL: [ClaimId; 5] = [
        ClaimId::TwoBellVsPure,
        ClaimId::ThreeBellReversal,
        ClaimId::ThreeBellEqualTau,
        ClaimId::MunroThreeFamilies,
        ClaimId::EntropyOrderGeneral,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            ClaimId::TwoBellVsPure => "two_bell_vs_pure",
            ClaimId::ThreeBellReversal => "three_bell_reversal",
            ClaimId::ThreeBellEqualTau => "three_bell_equal_tau",
            ClaimId::MunroThreeFamilies => "munro_three_families",
            ClaimId::EntropyOrderGeneral => "entropy_order_general",
        }
    }

    pub const fn default_count(self) -> usize {
        match self {
            ClaimId::TwoBellVsPure => 99,
            ClaimId::ThreeBellReversal => 10_000,
            ClaimId::ThreeBellEqualTau | ClaimId::MunroThreeFamilies => 1_000,
            ClaimId::EntropyOrderGeneral => 10_000,
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClaimConfig {
    /// Number of pairs (grid points for `two_bell_vs_pure`).
    pub count: usize,
    /// B window for `munro_three_families`, intersected with each family
    /// pair's common range.
    pub b_range: (f64, f64),
}

impl ClaimConfig {
    pub fn for_claim(id: ClaimId) -> Self {
        Self {
            count: id.default_count(),
            b_range: (2.0, TSIRELSON),
        }
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Holds,
    Fails,
    Mixed,
}

impl Verdict {
    pub fn from_counts(tested: usize, violations: usize) -> Self {
        if violations == 0 {
            Verdict::Holds
        } else if violations == tested {
            Verdict::Fails
        } else {
            Verdict::Mixed
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Mixed => "mixed",
        }
    }
}

/// Where a witness state came from, enough to rebuild it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum StateRef {
    Family { spec: FamilySpec },
    HilbertSchmidt { seed: u64, index: u64 },
    BellDiagonal { seed: u64, index: u64 },
    Spectrum { values: [f64; 4] },
}

impl StateRef {
    pub fn state(&self) -> Result<DensityMatrix> {
        match *self {
            StateRef::Family { spec } => make_family(spec),
            StateRef::HilbertSchmidt { seed, index } => Ok(sample_hilbert_schmidt_at(seed, index)),
            StateRef::BellDiagonal { seed, index } => Ok(sample_bell_diagonal_at(seed, index)),
            StateRef::Spectrum { values } => DensityMatrix::validate(ComplexMatrix4::from_real_diagonal(values)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Instance {
    pub state: StateRef,
    pub record: MeasureRecord,
}

impl Instance {
    pub fn measure(state: StateRef) -> Result<Self> {
        let record = measure_all(&state.state()?)?;
        Ok(Self { state, record })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub first: Instance,
    pub second: Instance,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClaimReport {
    pub claim_id: ClaimId,
    /// Pairs built.
    pub ensemble_size: usize,
    /// Pairs whose premise held and which were therefore checked.
    pub tested: usize,
    pub violations: usize,
    /// First violating pair.
    pub witness: Option<Witness>,
    pub verdict: Verdict,
}

/// Running tally while a claim is evaluated.
struct Tally {
    id: ClaimId,
    ensemble_size: usize,
    tested: usize,
    violations: usize,
    witness: Option<Witness>,
}

impl Tally {
    fn new(id: ClaimId) -> Self {
        Self {
            id,
            ensemble_size: 0,
            tested: 0,
            violations: 0,
            witness: None,
        }
    }

    fn record(&mut self, first: Instance, second: Instance, outcome: Outcome) {
        self.ensemble_size += 1;
        match outcome {
            Outcome::Untested => {}
            Outcome::Confirmed => self.tested += 1,
            Outcome::Violated => {
                self.tested += 1;
                self.violations += 1;
                self.witness.get_or_insert(Witness { first, second });
            }
        }
    }

    fn finish(self) -> ClaimReport {
        ClaimReport {
            claim_id: self.id,
            ensemble_size: self.ensemble_size,
            tested: self.tested,
            violations: self.violations,
            witness: self.witness,
            verdict: Verdict::from_counts(self.tested, self.violations),
        }
    }
}

enum Outcome {
    Untested,
    Confirmed,
    Violated,
}

impl Outcome {
    fn of(ok: bool) -> Self {
        if ok {
            Outcome::Confirmed
        } else {
            Outcome::Violated
        }
    }
}

fn equal(x: f64, y: f64) -> bool {
    (x - y).abs() <= EQUALITY_TOLERANCE
}

/// Sign of x − y with a dead band of [`EQUALITY_TOLERANCE`].
fn order(x: f64, y: f64) -> i8 {
    if x - y > EQUALITY_TOLERANCE {
        1
    } else if y - x > EQUALITY_TOLERANCE {
        -1
    } else {
        0
    }
}

fn family(spec: FamilySpec) -> Result<Instance> {
    Instance::measure(StateRef::Family { spec })
}

/// Evaluates `id` over a seeded ensemble.
pub fn verify_claim(id: ClaimId, config: &ClaimConfig, seed: u64) -> Result<ClaimReport> {
    if config.count == 0 {
        return Err(Error::InvalidArgument("ensemble count must be at least 1"));
    }
    let mut tally = Tally::new(id);
    match id {
        ClaimId::TwoBellVsPure => two_bell_vs_pure(config, &mut tally)?,
        ClaimId::ThreeBellReversal => three_bell_reversal(config, seed, &mut tally)?,
        ClaimId::ThreeBellEqualTau => three_bell_equal_tau(config, seed, &mut tally)?,
        ClaimId::MunroThreeFamilies => munro_three_families(config, seed, &mut tally)?,
        ClaimId::EntropyOrderGeneral => entropy_order_general(config, seed, &mut tally)?,
    }
    Ok(tally.finish())
}

fn two_bell_vs_pure(config: &ClaimConfig, tally: &mut Tally) -> Result<()> {
    let n = config.count;
    for k in 1..=n {
        let w = 0.5 + 0.5 * k as f64 / (n + 1) as f64;
        let c = 2.0 * w - 1.0;
        let mixed = family(FamilySpec::TwoBell { w })?;
        let pure = family(pure_with_tangle(c * c)?)?;
        let (m, p) = (&mixed.record, &pure.record);
        let ok = equal(m.bell_b, p.bell_b) && equal(m.tau, p.tau) && m.s_linear > p.s_linear;
        tally.record(mixed, pure, Outcome::of(ok));
    }
    Ok(())
}

/// A sorted three-Bell point with w1 > 1/2, uniform on that part of the
/// simplex.
fn entangled_three_bell(s: &mut Stream) -> FamilySpec {
    loop {
        let mut w: [f64; 3] = s.simplex();
        w.sort_by(|a, b| b.total_cmp(a));
        if w[0] > 0.5 {
            return FamilySpec::ThreeBell {
                w1: w[0],
                w2: w[1],
                w3: w[2],
            };
        }
    }
}

fn three_bell_reversal(config: &ClaimConfig, seed: u64, tally: &mut Tally) -> Result<()> {
    let max_attempts = config.count.saturating_mul(1000) as u64;
    let mut attempt = 0u64;
    while tally.ensemble_size < config.count && attempt < max_attempts {
        let mut s = Stream::new(seed, attempt);
        attempt += 1;
        let base = entangled_three_bell(&mut s);
        let FamilySpec::ThreeBell { w1, .. } = base else {
            unreachable!()
        };
        let target = s.uniform_in(0.5, 1.0);
        if target <= 0.5 || (target - w1).abs() < 1e-6 {
            continue;
        }
        let Ok(other) = equal_b_three_bell_pair(base, target) else {
            continue;
        };
        let (a, b) = (family(base)?, family(other)?);
        let outcome = if !equal(a.record.bell_b, b.record.bell_b) {
            Outcome::Violated
        } else {
            match order(a.record.tau, b.record.tau) {
                1 => Outcome::of(a.record.s_linear < b.record.s_linear),
                -1 => Outcome::of(b.record.s_linear < a.record.s_linear),
                _ => Outcome::Untested,
            }
        };
        tally.record(a, b, outcome);
    }
    Ok(())
}

fn three_bell_equal_tau(config: &ClaimConfig, seed: u64, tally: &mut Tally) -> Result<()> {
    for i in 0..config.count as u64 {
        let mut s = Stream::new(seed, i);
        let w1 = s.uniform_in(0.5, 1.0).max(0.5 + 1e-12);
        let rest = 1.0 - w1;
        // w2 ∈ [rest/2, rest] keeps w1 ≥ w2 ≥ w3 ≥ 0.
        let mut split = || {
            let w2 = s.uniform_in(rest / 2.0, rest);
            FamilySpec::ThreeBell { w1, w2, w3: rest - w2 }
        };
        let (a, b) = (family(split())?, family(split())?);
        let outcome = if !equal(a.record.tau, b.record.tau) {
            Outcome::Violated
        } else {
            match order(a.record.bell_b, b.record.bell_b) {
                1 => Outcome::of(a.record.s_linear < b.record.s_linear),
                -1 => Outcome::of(b.record.s_linear < a.record.s_linear),
                _ => Outcome::Untested,
            }
        };
        tally.record(a, b, outcome);
    }
    Ok(())
}

const MUNRO_PAIRS: [(FamilyKind, FamilyKind); 3] = [
    (FamilyKind::Pure, FamilyKind::Werner),
    (FamilyKind::Pure, FamilyKind::Mems),
    (FamilyKind::Werner, FamilyKind::Mems),
];

/// Common B range of a family: pure [2, 2√2], Werner [0, 2√2], MEMS (2/3, 2√2].
fn bell_range(kind: FamilyKind) -> (f64, f64) {
    match kind {
        FamilyKind::Pure | FamilyKind::TwoBell => (2.0, TSIRELSON),
        FamilyKind::Mems => (2.0 / 3.0, TSIRELSON),
        FamilyKind::Werner | FamilyKind::ThreeBell => (0.0, TSIRELSON),
    }
}

fn munro_three_families(config: &ClaimConfig, seed: u64, tally: &mut Tally) -> Result<()> {
    let windows: Vec<_> = MUNRO_PAIRS
        .iter()
        .filter_map(|&(fa, fb)| {
            let lo = bell_range(fa).0.max(bell_range(fb).0).max(config.b_range.0);
            let hi = TSIRELSON.min(config.b_range.1);
            (lo < hi).then_some((fa, fb, lo, hi))
        })
        .collect();
    if windows.is_empty() {
        return Err(Error::InvalidArgument(
            "B window does not meet any family pair's common range",
        ));
    }
    for i in 0..config.count as u64 {
        let (fa, fb, lo, hi) = windows[(i % windows.len() as u64) as usize];
        let mut s = Stream::new(seed, i);
        let mut b = s.uniform_in(lo, hi);
        if b <= lo {
            b = 0.5 * (lo + hi);
        }
        let (a, c) = (family(family_at_bell(fa, b)?)?, family(family_at_bell(fb, b)?)?);
        let outcome = if !equal(a.record.bell_b, c.record.bell_b) {
            Outcome::Violated
        } else {
            match order(a.record.tau, c.record.tau) {
                1 => Outcome::of(a.record.s_linear > c.record.s_linear),
                -1 => Outcome::of(c.record.s_linear > a.record.s_linear),
                _ => Outcome::Untested,
            }
        };
        tally.record(a, c, outcome);
    }
    Ok(())
}

fn entropy_order_general(config: &ClaimConfig, seed: u64, tally: &mut Tally) -> Result<()> {
    for i in 0..config.count as u64 {
        let (x, y) = if i % 2 == 0 {
            (
                StateRef::HilbertSchmidt { seed, index: 2 * i },
                StateRef::HilbertSchmidt { seed, index: 2 * i + 1 },
            )
        } else {
            (
                StateRef::BellDiagonal { seed, index: 2 * i },
                StateRef::BellDiagonal { seed, index: 2 * i + 1 },
            )
        };
        let (a, b) = (Instance::measure(x)?, Instance::measure(y)?);
        let by_linear = order(a.record.s_linear, b.record.s_linear);
        let by_entropy = order(a.record.s_von_neumann, b.record.s_von_neumann);
        let outcome = if by_linear == 0 && by_entropy == 0 {
            Outcome::Untested
        } else {
            Outcome::of(by_linear == by_entropy)
        };
        tally.record(a, b, outcome);
    }
    Ok(())
}
