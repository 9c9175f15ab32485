use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {size} exceeds the supported limit")]
    FieldTooLarge { size: u128 },
    #[error("no primitive polynomial of degree {k} over GF({p})")]
    NoPrimitivePolynomial { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not in the subfield")]
    NotInSubfield,
    #[error("field GF({p}^{k}) has no conjugation (odd extension degree)")]
    NoConjugationDefined { p: u32, k: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("gcd({n}, {base}) != 1")]
    NotCoprime { n: u64, base: u64 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("m = {0} does not satisfy the leader-exception hypotheses")]
    UnsupportedM(u32),
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("minimal polynomial coefficient fell outside GF(Q)")]
    ProjectionFailure,
    #[error("generator does not divide x^n - 1")]
    NotADivisor,
    #[error("set is not closed under multiplication by Q")]
    NotCosetClosed,
    #[error("polynomial and defining-set LCD criteria disagree")]
    CriterionMismatch,
    #[error("code is degenerate (k = 0 or k = n)")]
    DegenerateCode,
    #[error("work {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("MacWilliams transform produced a non-integral or negative count")]
    InconsistentEnumerator,
    #[error("code is not Hermitian LCD")]
    NotHermitianLcd,
    #[error("u + v = {0} factors is too many to enumerate")]
    TooManyFactors(usize),
    #[error("undetected fault of weight {weight} below minimum distance {distance}")]
    DetectionGuaranteeViolated { weight: usize, distance: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::NoPrimitivePolynomial { .. } => "NoPrimitivePolynomial",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotInSubfield => "NotInSubfield",
            Error::NoConjugationDefined { .. } => "NoConjugationDefined",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::FieldMismatch => "FieldMismatch",
            Error::Singular => "Singular",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::OutOfRange(_) => "OutOfRange",
            Error::UnsupportedM(_) => "UnsupportedM",
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::ProjectionFailure => "ProjectionFailure",
            Error::NotADivisor => "NotADivisor",
            Error::NotCosetClosed => "NotCosetClosed",
            Error::CriterionMismatch => "CriterionMismatch",
            Error::DegenerateCode => "DegenerateCode",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InconsistentEnumerator => "InconsistentEnumerator",
            Error::NotHermitianLcd => "NotHermitianLcd",
            Error::TooManyFactors(_) => "TooManyFactors",
            Error::DetectionGuaranteeViolated { .. } => "DetectionGuaranteeViolated",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }
}
