use thiserror::Error;

/// Errors raised by lattice, projectivity, commutator and classification
/// routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("element {elem} out of range for a lattice with {n} elements")]
    ElementOutOfRange { elem: usize, n: usize },
    #[error("cover relation contains a cycle through elements {x} and {y}")]
    CycleDetected { x: usize, y: usize },
    #[error("elements {x} and {y} have no unique {op}")]
    NotALattice {
        x: usize,
        y: usize,
        op: &'static str,
    },
    #[error("cover pair ({x}, {y}) is implied transitively or repeated")]
    RedundantCover { x: usize, y: usize },
    #[error("lattice is not modular: {x} <= {z} but {x} v ({y} ^ {z}) != ({x} v {y}) ^ {z}")]
    NotModular { x: usize, y: usize, z: usize },
    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),
    #[error("map is not a (0,1)-lattice homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("subset is not a sublattice: {0}")]
    NotASublattice(String),
    #[error("sublattice has no members")]
    EmptySublattice,
    #[error("no sublattice member lies above element {0}")]
    NoMemberAbove(usize),
    #[error("({lo}, {hi}) is not a prime interval")]
    NotAPrimeInterval { lo: usize, hi: usize },
    #[error("table shape does not match the lattice: {0}")]
    ShapeMismatch(String),
    #[error("table is not a commutator multiplication: {0}")]
    InvalidTable(String),
    #[error("({delta}, {epsilon}) is not a splitting pair")]
    NotASplittingPair { delta: usize, epsilon: usize },
    #[error("congruence does not relate epsilon = {epsilon} with the top element")]
    CongruenceMissingSeed { epsilon: usize },
    #[error("lattice has {n} elements, exhaustive search is limited to {max}")]
    LatticeTooLarge { n: usize, max: usize },
    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),
}

impl LatticeError {
    /// True for errors that can only arise from an implementation bug, as
    /// opposed to invalid input.
    pub fn is_bug(&self) -> bool {
        matches!(
            self,
            LatticeError::CrossCheckMismatch(_)
                | LatticeError::TheoremViolation(_)
                | LatticeError::InternalCheckFailed(_)
        )
    }
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;
