use thiserror::Error;

/// Errors raised by the exact algebra engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("scalar literal {text:?}: {msg} at offset {pos}")]
    Literal { text: String, pos: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("value is not real (differs from its complex conjugate)")]
    NotReal,

    #[error("operators {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("characteristic polynomial of operator {op} does not split over Q(zeta_{order}) (unsplit degree {residual_degree})")]
    NonSplit {
        op: usize,
        order: usize,
        residual_degree: usize,
    },

    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    #[error("invalid composition {parts:?} for n = {n}")]
    InvalidComposition { parts: Vec<usize>, n: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),

    #[error("unsupported mode: {0}")]
    Mode(String),

    #[error("commutator [zt_{i}, zt_{j}] has positive z-degree {degree}")]
    NotInGroupAlgebra { i: usize, j: usize, degree: usize },

    #[error("matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),

    #[error("invalid module: relation {relation} fails at ({row}, {col})")]
    Relation { relation: String, row: usize, col: usize },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("weight absent: {0}")]
    WeightAbsent(String),

    #[error("module is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("module file: {0}")]
    ModuleFile(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
