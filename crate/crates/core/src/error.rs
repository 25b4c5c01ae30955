use crate::report::StructureReport;

#[derive(thiserror::Error, Debug, Clone)]
pub enum Error {
    #[error("index {index} out of range for {what} (size {size})")]
    IndexOutOfRange {
        what: String,
        index: usize,
        size: usize,
    },
    #[error("input is not a group: ({0},{1},{2}) is not associative")]
    NotAGroup(usize, usize, usize),
    #[error("product domain mismatch at ({a},{b}): {reason}")]
    ProductDomainMismatch { a: usize, b: usize, reason: String },
    #[error("invalid action")]
    InvalidAction(StructureReport),
    #[error("projection is not surjective: object {0} has an empty fiber")]
    NotSurjective(usize),
    #[error("empty base set")]
    EmptyBase,
    #[error("morphisms are not composable: {0}")]
    CompositionMismatch(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("action domain mismatch at ({h},{a}): {reason}")]
    DomainMismatch { h: usize, a: usize, reason: String },
    #[error("action axioms fail")]
    ActionInvalid(StructureReport),
    #[error("not a matched pair")]
    InvalidMatchedPair(StructureReport),
    #[error("object map of {0} is not the identity")]
    ObjectMapNotIdentity(&'static str),
    #[error("not an exact factorization")]
    NotExact(StructureReport),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("magma or coalgebra law violated")]
    PreconditionFailed(StructureReport),
    #[error("not a weak Hopf quasigroup")]
    NotWhq(StructureReport),
    #[error("invalid morphism")]
    InvalidMorphism(StructureReport),
    #[error("invalid structure")]
    Invalid(StructureReport),
}

impl Error {
    /// The report carried by violation-style errors.
    pub fn report(&self) -> Option<&StructureReport> {
        match self {
            Error::InvalidAction(r)
            | Error::ActionInvalid(r)
            | Error::InvalidMatchedPair(r)
            | Error::NotExact(r)
            | Error::PreconditionFailed(r)
            | Error::NotWhq(r)
            | Error::InvalidMorphism(r)
            | Error::Invalid(r) => Some(r),
            _ => None,
        }
    }

    pub(crate) fn range(what: impl Into<String>, index: usize, size: usize) -> Self {
        Error::IndexOutOfRange {
            what: what.into(),
            index,
            size,
        }
    }
}
