use thiserror::Error;

/// Errors raised by the engine. Verification failures are reported, not
/// raised; these cover invalid inputs and missing data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient is zero to working order")]
    NonInvertibleLeadingTerm,
    #[error("operation on an exact series needs a truncation window")]
    Unbounded,
    #[error("eta quotient has nonzero weight {0}/2")]
    WeightNotZero(i64),
    #[error("eta factor {n} does not divide level {m}")]
    LevelMismatch { n: u64, m: u64 },
    #[error("product is not constant: first nonconstant term at q^{0}")]
    NotConstant(String),
    #[error("coefficient C({d},{r}) lies beyond the recorded depth")]
    InsufficientDepth { d: i64, r: i64 },
    #[error("Hecke index {n} is not coprime to the level {m}")]
    LevelNotCoprime { n: u64, m: u64 },
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("{0} is not a discriminant (must be nonzero and 0 or 1 mod 4)")]
    BadDiscriminant(i64),
    #[error("discriminant {d} is excluded at level {m}")]
    ExcludedDiscriminant { d: i64, m: u64 },
    #[error("no represented value coprime to D found within bound {0}")]
    NoRepresentativeFound(i64),
    #[error("no rational function of degree at most {0} fits")]
    NoSolutionWithinDegree(usize),
    #[error("window of {have} coefficients is too short for degree {deg} (need {need})")]
    Underdetermined { have: usize, need: usize, deg: usize },
    #[error("unknown eulerian series {0:?}")]
    UnknownName(String),
    #[error("no shift in {0} aligns the supports")]
    UnresolvableShift(String),
    #[error("infinite product does not stabilize")]
    Divergent,
    #[error("missing source data: {0}")]
    MissingSource(String),
    #[error("unknown lambency {0:?}")]
    UnknownLambency(String),
    #[error("line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("line {line}: D = {d} is not congruent to r^2 = {r}^2 mod {modulus}")]
    CongruenceViolation {
        line: usize,
        d: i64,
        r: i64,
        modulus: i64,
    },
    #[error("line {line}: duplicate record for ({lambency}, {class}, r={r}, D={d})")]
    DuplicateRecord {
        line: usize,
        lambency: String,
        class: String,
        r: i64,
        d: i64,
    },
    #[error("residue {a} is not in O_{m}")]
    NotInOm { a: i64, m: u64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
