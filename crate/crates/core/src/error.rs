//! Error types, one enum per domain. Validation failures carry the name of
//! the condition that failed; nothing is ever silently approximated.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("window [{lo}, {hi}] does not match modulus degree span {span}")]
    BadWindow { lo: i64, hi: i64, span: i64 },
    #[error("matrix entry {0} is not an integer")]
    NotIntegral(String),
    #[error("Laurent exponent overflow in {0}")]
    ExponentOverflow(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PervError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("not a direct sum: {0}")]
    NotDirectSum(String),
    #[error("cross map singular: {0}")]
    CrossMapSingular(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalSysError {
    #[error("unknown basepoint {0:?}")]
    UnknownBasepoint(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator {0:?} has a singular matrix")]
    SingularGenerator(String),
    #[error("relation {0:?} does not evaluate to the identity")]
    RelationViolated(String),
    #[error("word is not composable: {0}")]
    NotComposable(String),
    #[error("missing factorization for coarse generator {0:?}")]
    MissingFactorization(String),
    #[error("covering is inconsistent: {0}")]
    CoverInconsistent(String),
    #[error("lift of generator {generator:?} on sheet {sheet:?} leaves the truncation window")]
    TruncationBoundary { generator: String, sheet: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("boundary word monodromy differs from the disk total monodromy")]
    BoundaryMismatch,
    #[error("loop monodromy is not the presented twist: {0}")]
    MonodromyNotTwist(String),
    #[error("bad loop word: {0}")]
    BadLoop(String),
    #[error("half monodromy mismatch: {0}")]
    HalfMonodromyMismatch(String),
    #[error("global genus-zero relation fails")]
    GlobalRelationFails,
    #[error(transparent)]
    Gmv(#[from] PervError),
    #[error(transparent)]
    LocalSys(#[from] LocalSysError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GitFlopError {
    #[error("not Calabi-Yau: sum(a) = {sum_a} differs from sum(b) = {sum_b}")]
    NotCalabiYau { sum_a: i64, sum_b: i64 },
    #[error("weights must be strictly positive, got {0}")]
    BadWeights(i64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Pair(#[from] PervError),
    #[error(transparent)]
    LocalSys(#[from] LocalSysError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
