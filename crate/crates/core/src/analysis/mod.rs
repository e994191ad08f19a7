//! Family curves, equal-violation pair constructions, claim checks, the CHSH
//! optimization oracle, region scans and the entropy-order audit.

mod audit;
mod chsh;
mod claims;
mod curves;
mod pairs;
mod scan;

pub use audit::{
    compare_spectra, entropy_order_audit, EntropyAudit, FamilyAgreement, SpectralComparison, REFERENCE_SPECTRA,
};
pub use chsh::{
    chsh_optimize, chsh_optimize_correlation, chsh_value, ChshOptimum, CHSH_MAX_ITERATIONS, CHSH_TOLERANCE,
};
pub use claims::{
    verify_claim, ClaimConfig, ClaimId, ClaimReport, Instance, StateRef, Verdict, Witness, EQUALITY_TOLERANCE,
};
pub use curves::{closed_form, curve_point, family_curve, ClosedForm, CurvePoint};
pub use pairs::{equal_b_three_bell_pair, family_at_bell, pure_with_tangle};
pub use scan::{frontier, region_scan, FrontierBin, ScanRecord, ScanSource};
