use bellmix_core::analysis::{
    chsh_optimize, chsh_optimize_correlation, frontier, pure_with_tangle, region_scan, ScanRecord, ScanSource,
};
use bellmix_core::measures::{bell_violation, correlation_matrix, measure_all, TSIRELSON};
use bellmix_core::states::{make_family, sample_hilbert_schmidt_at, FamilyKind, FamilySpec};

#[test]
fn chsh_oracle_never_exceeds_closed_form() {
    for i in 0..300 {
        let rho = sample_hilbert_schmidt_at(31, i);
        let t = correlation_matrix(&rho).unwrap();
        let b = bell_violation(&rho).unwrap();
        // A single restart must also stay below the bound.
        let one = chsh_optimize_correlation(&t, 1, i).value;
        assert!(one <= b + 1e-9);
        let best = chsh_optimize(&rho, 32, i).unwrap();
        assert!(best <= b + 1e-9);
        assert!(b - best <= 1e-6, "state {i}: {best} vs {b}");
    }
}

#[test]
fn chsh_oracle_on_families() {
    for spec in [
        FamilySpec::Werner { x: 0.9 },
        FamilySpec::Mems { gamma: 0.3 },
        FamilySpec::Pure { a: 0.2 },
        FamilySpec::ThreeBell {
            w1: 0.5,
            w2: 0.3,
            w3: 0.2,
        },
    ] {
        let rho = make_family(spec).unwrap();
        let gap = (chsh_optimize(&rho, 32, 1).unwrap() - bell_violation(&rho).unwrap()).abs();
        assert!(gap <= 1e-6, "{spec:?}: {gap}");
    }
}

/// Fraction of Hilbert–Schmidt states with B > 2, recorded at 0.0082 for
/// seed 1 and n = 10⁴ and pinned to ±3σ of a binomial proportion.
#[test]
fn hilbert_schmidt_violation_fraction_fixture() {
    const PINNED: f64 = 0.0082;
    let n = 10_000;
    let sigma = (PINNED * (1.0 - PINNED) / n as f64).sqrt();
    for seed in [1, 2, 3] {
        let records = region_scan(ScanSource::HilbertSchmidt, n, seed).unwrap();
        let frac = records.iter().filter(|r| r.bell_b > 2.0).count() as f64 / n as f64;
        assert!((frac - PINNED).abs() <= 3.0 * sigma, "seed {seed}: {frac}");
    }
}

fn family_records(specs: &[FamilySpec]) -> Vec<ScanRecord> {
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let r = measure_all(&make_family(*s).unwrap()).unwrap();
            ScanRecord {
                source: ScanSource::Family(s.kind()),
                seed: 0,
                index: i as u64,
                tau: r.tau,
                bell_b: r.bell_b,
                s_linear: r.s_linear,
                s_von_neumann: r.s_von_neumann,
            }
        })
        .collect()
}

#[test]
fn frontier_separates_pure_and_two_bell_by_mixedness_only() {
    // Offset grid keeps every B clear of a bin edge.
    let taus: Vec<f64> = (0..99).map(|k| (k as f64 + 0.5) / 100.0).collect();
    let pure: Vec<_> = taus.iter().map(|&t| pure_with_tangle(t).unwrap()).collect();
    let two: Vec<_> = taus
        .iter()
        .map(|&t| FamilySpec::TwoBell {
            w: (1.0 + t.sqrt()) / 2.0,
        })
        .collect();
    let fp = frontier(&family_records(&pure), 0.05).unwrap();
    let ft = frontier(&family_records(&two), 0.05).unwrap();
    assert_eq!(fp.len(), ft.len());
    for (p, t) in fp.iter().zip(&ft) {
        assert_eq!(p.b_lo, t.b_lo);
        assert!((p.tau_min - t.tau_min).abs() <= 1e-9);
        assert!((p.tau_max - t.tau_max).abs() <= 1e-9);
        assert!(p.sl_max <= 1e-12);
        assert!(t.sl_min > 0.0);
    }
    let mut both = family_records(&pure);
    both.extend(family_records(&two));
    for bin in frontier(&both, 0.05).unwrap() {
        assert!(bin.sl_min <= 1e-12 && bin.sl_max > 0.0);
    }
}

fn mixed_source(seed: u64) -> Vec<ScanRecord> {
    let mut recs = region_scan(ScanSource::HilbertSchmidt, 4000, seed).unwrap();
    recs.extend(region_scan(ScanSource::BellDiagonal, 4000, seed).unwrap());
    recs.extend(region_scan(ScanSource::Family(FamilyKind::Mems), 1000, seed).unwrap());
    recs.extend(region_scan(ScanSource::Family(FamilyKind::Pure), 1000, seed).unwrap());
    recs
}

/// Recorded on first run: with seed 1, per-bin max τ never decreases across
/// the whole B axis up to the Tsirelson bin.
#[test]
fn mixed_source_frontier_fixture() {
    let bins = frontier(&mixed_source(1), 0.05).unwrap();
    assert_eq!(bins.len(), 55);
    assert!(bins.last().unwrap().b_hi > TSIRELSON);
    assert!(bins.windows(2).all(|w| w[1].tau_max >= w[0].tau_max));
}

#[test]
fn frontier_max_tangle_is_monotone_above_mems_onset() {
    // From B = 2/3 on the MEMS grid carries the envelope. Below it random
    // entangled samples can leave an isolated bump.
    for seed in 1..=5 {
        let bins = frontier(&mixed_source(seed), 0.05).unwrap();
        let upper: Vec<_> = bins.iter().filter(|b| b.b_lo >= 2.0 / 3.0).collect();
        assert!(upper.windows(2).all(|w| w[1].tau_max >= w[0].tau_max), "seed {seed}");
    }
}
