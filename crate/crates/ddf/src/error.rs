use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("structure of order {order} exceeds the configured bound {bound}")]
    SizeExceeded { order: u64, bound: u64 },
    #[error("discrete logarithm of zero is undefined")]
    DlogOfZero,
    #[error("{divisor} does not divide {of}")]
    DoesNotDivide { divisor: u64, of: u64 },
    #[error("index {index} out of range [0, {bound})")]
    IndexOutOfRange { index: u64, bound: u64 },
    #[error("uniform cyclotomy hypotheses not met: {0}")]
    ConditionsNotMet(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("subring embedding requires even extension degree, got {0}")]
    OddDegree(usize),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("blocks are not pairwise disjoint (element index {0} repeated)")]
    NotDisjoint(u32),
    #[error("blocks have unequal sizes ({0} vs {1})")]
    UnequalBlockSizes(usize, usize),
    #[error("given set is not a subgroup")]
    NotASubgroup,
    #[error("map is not a permutation of the point set")]
    NotAPermutation,
    #[error("design with {points} points and {blocks} blocks exceeds the search budget ({max_points} points, {max_blocks} blocks)")]
    BudgetExceeded {
        points: usize,
        blocks: usize,
        max_points: usize,
        max_blocks: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
