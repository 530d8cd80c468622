use thiserror::Error;

/// Errors raised by the library. Every precondition violation named in the
/// operation contracts has its own variant so callers (and the CLI exit codes)
/// can tell input problems from resource caps and certified failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point set does not span the ambient space affinely")]
    NotFullDimensional,
    #[error("the origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("point {0} is not a vertex of the polytope")]
    VertexNotFound(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {0} exceeds the supported maximum")]
    DimensionTooLarge(usize),
    #[error("unsupported root system type {0}")]
    UnsupportedType(String),
    #[error("orbit or group size exceeds the cap of {0}")]
    OrbitCapExceeded(usize),
    #[error("group size exceeds the cap of {0}")]
    GroupCapExceeded(usize),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not a point of the lattice M")]
    NotLatticePoint(String),
    #[error("weight must be nonzero")]
    ZeroWeight,
    #[error("row {row} is not defined for rank {rank}")]
    OutOfTableRange { row: String, rank: usize },
    #[error("table row {0} produced a non-reflexive polytope")]
    InternalTableViolation(String),
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error("polytope is not a lattice polytope")]
    NotLattice,
    #[error("lattice basis is not between the root and weight lattices: {0}")]
    InvalidLattice(String),
    #[error("product of root systems with incompatible lattices")]
    IncompatibleLattices,
    #[error("source and target masses differ: {0} vs {1}")]
    UnbalancedMasses(String, String),
    #[error("cycle enumeration needs {needed} combinations, budget is {budget}")]
    CombinatorialBudgetExceeded { needed: u128, budget: u128 },
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("non-integer entry {0:?}")]
    NonIntegerEntry(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Whether the error comes from a configured resource cap (exit code 3).
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::OrbitCapExceeded(_)
                | Error::GroupCapExceeded(_)
                | Error::CombinatorialBudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
