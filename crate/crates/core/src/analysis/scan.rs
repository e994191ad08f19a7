use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::measures::{measure_all, TSIRELSON};
use crate::states::{make_family, sample_bell_diagonal_at, sample_hilbert_schmidt_at, DensityMatrix, FamilyKind};
use crate::{Error, Result};
use num_traits::Float;

/// What a scan draws its states from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanSource {
    HilbertSchmidt,
    BellDiagonal,
    /// An evenly spaced grid over a one-parameter family.
    Family(FamilyKind),
}

impl ScanSource {
    pub fn name(&self) -> &'static str {
        match self {
            ScanSource::HilbertSchmidt => "hilbert_schmidt",
            ScanSource::BellDiagonal => "bell_diagonal",
            ScanSource::Family(k) => k.name(),
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "hilbert_schmidt" => Some(ScanSource::HilbertSchmidt),
            "bell_diagonal" => Some(ScanSource::BellDiagonal),
            _ => FamilyKind::from_name(name)
                .filter(|k| *k != FamilyKind::ThreeBell)
                .map(ScanSource::Family),
        }
    }

    /// The `index`-th state of an `n`-point scan.
    pub fn state(&self, seed: u64, index: u64, n: usize) -> Result<DensityMatrix> {
        match *self {
            ScanSource::HilbertSchmidt => Ok(sample_hilbert_schmidt_at(seed, index)),
            ScanSource::BellDiagonal => Ok(sample_bell_diagonal_at(seed, index)),
            ScanSource::Family(kind) => {
                let p = match kind {
                    // γ = 0 is excluded.
                    FamilyKind::Mems => (index + 1) as f64 / n as f64,
                    _ if n == 1 => 1.0,
                    _ => index as f64 / (n - 1) as f64,
                };
                let spec = kind
                    .at(p)
                    .ok_or(Error::InvalidArgument("three_bell cannot be scanned on a grid"))?;
                make_family(spec)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRecord {
    pub source: ScanSource,
    pub seed: u64,
    pub index: u64,
    pub tau: f64,
    pub bell_b: f64,
    pub s_linear: f64,
    pub s_von_neumann: f64,
}

/// Measures `n` states from `source`. Record `i` depends only on
/// `(source, seed, i, n)`.
pub fn region_scan(source: ScanSource, n: usize, seed: u64) -> Result<Vec<ScanRecord>> {
    if n == 0 {
        return Err(Error::InvalidArgument("scan size must be at least 1"));
    }
    if source == ScanSource::Family(FamilyKind::ThreeBell) {
        return Err(Error::InvalidArgument("three_bell cannot be scanned on a grid"));
    }
    (0..n as u64)
        .map(|index| {
            let r = measure_all(&source.state(seed, index, n)?)?;
            Ok(ScanRecord {
                source,
                seed,
                index,
                tau: r.tau,
                bell_b: r.bell_b,
                s_linear: r.s_linear,
                s_von_neumann: r.s_von_neumann,
            })
        })
        .collect()
}

/// Extremes of τ and S_L among records whose B falls in `[b_lo, b_hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontierBin {
    pub b_lo: f64,
    pub b_hi: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub sl_min: f64,
    pub sl_max: f64,
    pub count: usize,
}

/// Bins records by B into `[k·w, (k+1)·w)` anchored at 0, omitting empty
/// bins.
pub fn frontier(records: &[ScanRecord], bin_width: f64) -> Result<Vec<FrontierBin>> {
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return Err(Error::InvalidArgument("bin width must be positive"));
    }
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut bins: BTreeMap<u64, FrontierBin> = BTreeMap::new();
    for r in records {
        let b = r.bell_b.clamp(0.0, TSIRELSON);
        let k = (b / bin_width).floor() as u64;
        let bin = bins.entry(k).or_insert(FrontierBin {
            b_lo: k as f64 * bin_width,
            b_hi: (k + 1) as f64 * bin_width,
            tau_min: f64::INFINITY,
            tau_max: f64::NEG_INFINITY,
            sl_min: f64::INFINITY,
            sl_max: f64::NEG_INFINITY,
            count: 0,
        });
        bin.tau_min = bin.tau_min.min(r.tau);
        bin.tau_max = bin.tau_max.max(r.tau);
        bin.sl_min = bin.sl_min.min(r.s_linear);
        bin.sl_max = bin.sl_max.max(r.s_linear);
        bin.count += 1;
    }
    Ok(bins.into_values().collect())
}
