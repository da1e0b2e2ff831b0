use alloc::string::String;

/// Everything that can go wrong inside the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("no built-in modulus for GF({p}^{k})")]
    NoBuiltinModulus { p: u32, k: u32 },
    #[error("field too large for table-driven arithmetic: {0} elements")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("field too small: {0} elements")]
    FieldTooSmall(u64),
    #[error("not a square")]
    NotASquare,
    #[error("matrix is singular")]
    Singular,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is scalar")]
    ScalarInput,
    #[error("characteristic polynomial does not match the prescribed spectrum")]
    SpectrumMismatch,
    #[error("matrix is not a square-zero unipotent matrix")]
    NotU2,
    #[error("determinant of the prescription does not match det(A)")]
    DeterminantMismatch,
    #[error("prescribed-spectrum construction failed after {0} attempts")]
    ConstructionFailed(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("value is one of -1, 0, 1")]
    DegenerateValue,
    #[error("matrix does not have determinant 1")]
    NotSpecialLinear,
    #[error("unsupported field size {0} for this route")]
    UnsupportedFieldSize(u64),
    #[error("matrix lies outside the derived subgroup")]
    OutsideDerivedSubgroup,
    #[error("group enumeration exceeds budget ({size} > {budget})")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("illegal commutator pair after combination")]
    IllegalPair,
    #[error("certificate uses {pairs} pairs, more than the promised {bound}")]
    BoundExceeded { pairs: usize, bound: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
