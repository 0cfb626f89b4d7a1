use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateName(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("not an interval: {bottom} is not below {top}")]
    InvalidInterval { bottom: usize, top: usize },
    #[error("intervals {first} and {second} overlap")]
    OverlappingIntervals { first: usize, second: usize },
    #[error("relation is not a partial order: {0}")]
    NotAnOrder(String),
    #[error("not a lattice: elements {a} and {b} have no {missing}")]
    NotALattice {
        a: usize,
        b: usize,
        missing: &'static str,
    },
    #[error("context is not reduced ({0}); reduce it first or allow internal reduction")]
    NotReduced(String),
    #[error("relation does not contain the base incidence at ({object}, {attribute})")]
    NotASuperset { object: usize, attribute: usize },
    #[error("relation is not an equivalence: {0}")]
    NotAnEquivalence(String),
    #[error("not a concept of the context: {0}")]
    NotAConcept(String),
    #[error("interval is nested; the map is defined for pure intervals only")]
    NotPure,
    #[error("expected a single interval, got {0}")]
    NotSingleInterval(usize),
    #[error("invalid interval spec `{spec}`: {reason}")]
    IntervalSpec { spec: String, reason: String },
    #[error("{what} size {actual} exceeds the oracle budget of {limit}")]
    Budget {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("invalid oracle budget: {0}")]
    BudgetSpec(String),
    #[error("invalid lattice JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
