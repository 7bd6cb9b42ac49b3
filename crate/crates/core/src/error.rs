use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generators have mismatched degrees ({expected} vs {found})")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("subgroup does not belong to this group")]
    NotSubgroup,
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("cyclotomic conductor {0} exceeds the cap")]
    ConductorTooLarge(u64),
    #[error("ell = {0} is too small for a solitary character")]
    EllTooSmall(u64),
    #[error("ell = {ell} divides the group order {order}")]
    EllDividesOrder { ell: u64, order: usize },
    #[error("malformed character: {0}")]
    MalformedCharacter(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: i64, divisor: usize },
    #[error("subgroup is not cyclic")]
    NotCyclic,
    #[error("operator dimension {size} exceeds the cap {cap}")]
    DimensionOverflow { size: usize, cap: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("the covering graph is disconnected")]
    DisconnectedCover,
    #[error("vector is not a witness: {0}")]
    NotAWitness(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("could not certify the kernel dimension exactly")]
    KernelCertificate,
    /// Two independent computations of the same quantity disagreed.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}
