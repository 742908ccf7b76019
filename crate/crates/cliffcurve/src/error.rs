//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("scalars or matrices of different characteristics were mixed")]
    CharMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("minor order {k} out of range for a {rows}x{cols} matrix")]
    MinorOrder { k: usize, rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("f(x) is not squarefree over the base field")]
    NotSquarefree,

    #[error("unsupported infinity kind: need gcd(n, deg f) = 1 or n | deg f")]
    UnsupportedInfinity,

    #[error("split infinity places are not rational: z^{n} = lc(f) needs {n} distinct roots in F_p (choose p = 1 mod {n} and lc(f) an {n}-th power)")]
    InfinityNotRational { n: u64 },

    #[error("characteristic {ch} divides the cover degree {n}")]
    BadCharacteristic { ch: u64, n: u64 },

    #[error("place is invalid on this curve: {0}")]
    InvalidPlace(String),

    #[error("branch fiber requested at x0 with f(x0) = 0; use the branch place")]
    BranchFiber,

    #[error("no {n}-th root of {of} in F_{p}")]
    NoRootInField { n: u64, of: u64, p: u64 },

    #[error("sampling exhausted after {0} attempts")]
    SamplingExhausted(usize),

    #[error("divisor support requires the full fiber over x0 = {x0} to be rational, but it is not")]
    IrrationalFiber { x0: String },

    #[error("operation needs a positive characteristic (finite field) model")]
    NeedsFiniteField,

    #[error("expansion requested at unsupported place configuration: {0}")]
    UnsupportedExpansion(String),

    #[error("support collision: {0}")]
    SupportCollision(String),

    #[error("coefficient index out of range: {0}")]
    CoefficientIndex(String),

    #[error("line bundle is not very ample (witness pair failed separation)")]
    NotVeryAmple,

    #[error("divisor is not base point free (base point found)")]
    NotBasePointFree,

    #[error("vanishing-ideal dimension did not stabilize under cloud doubling (cloud too small)")]
    UnstableDimension,

    #[error("witness construction failed: {0}")]
    WitnessConstruction(String),

    #[error("basis expansion failed; the target basis does not span the product (internal error)")]
    ExpansionFailure,

    #[error("matrix entry budget exceeded: {need} entries > budget {budget}")]
    EntryBudget { need: usize, budget: usize },

    #[error("characteristic guard: char must exceed {min} for this operation, got {ch}")]
    CharGuard { min: u64, ch: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("divisor has places with irrational coordinates and cannot be expressed on rational places")]
    NotRationallySupported,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
