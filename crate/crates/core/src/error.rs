use thiserror::Error;

/// Which line of a Cayley table broke the Latin-square property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatinViolation {
    Row(usize),
    Column(usize),
}

impl std::fmt::Display for LatinViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LatinViolation::Row(r) => write!(f, "row {r}"),
            LatinViolation::Column(c) => write!(f, "column {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial {poly:?} is reducible over GF({p})")]
    Reducible { p: u32, poly: Vec<u32> },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeCapExceeded { what: &'static str, size: u64, cap: u64 },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("shape error: {0}")]
    Shape(String),

    #[error("table is not square or has out-of-range entries: {0}")]
    MalformedTable(String),
    #[error("table is not a Latin square ({0})")]
    NotLatinSquare(LatinViolation),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotPermutation { index: usize, degree: usize },
    #[error("{what}: order {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },

    #[error("p = 2 is not supported by the bilinear model")]
    EvenPrime,
    #[error("commutator map is not alternating at ({i}, {j})")]
    NotAlternating { i: usize, j: usize },
    #[error("inconsistent commutator relations for [{left}, {right}]")]
    InconsistentRelations { left: String, right: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid parameter n = {n}: {reason}")]
    InvalidN { n: usize, reason: &'static str },
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("construction failed verification of {predicate}: {detail}")]
    VerificationFailed { predicate: String, detail: String },

    #[error("element {0} is central")]
    CentralElement(usize),
    #[error("group order {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("group is not a p-group")]
    NotPGroup,
    #[error("group is abelian")]
    AbelianGroup,
    #[error("every element of the subgroup is central")]
    AllCentral,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("subgroup is not maximal abelian")]
    NotMaximalAbelian,
    #[error("group is not semi-extraspecial")]
    NotSes,

    #[error("group file: {0}")]
    Format(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
