use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m†| = {residual:e}")]
    NonHermitianInput { residual: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("state is not Hermitian: max |ρ - ρ†| = {residual:e}")]
    NonHermitian { residual: f64 },
    #[error("state trace is {trace} (|tr - 1| = {residual:e})")]
    TraceNotOne { trace: f64, residual: f64 },
    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("invalid {family} parameter {value}: {reason}")]
    InvalidFamilyParameter {
        family: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("{name} = {value} lies outside [0, 1]")]
    DomainError { name: &'static str, value: f64 },
    #[error("correlation entry ({row}, {col}) has imaginary part {imag:e}")]
    NonRealCorrelation { row: usize, col: usize, imag: f64 },
    #[error("no real weights reach the requested violation (discriminant {discriminant:e})")]
    NoRealSolution { discriminant: f64 },
    #[error("paired weight {w2} exceeds target w1 = {w1}")]
    OrderingViolated { w1: f64, w2: f64 },
    #[error("paired weight {w3} is negative")]
    NegativeWeight { w3: f64 },
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("input is empty")]
    EmptyInput,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
