use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("color matrix is empty")]
    Empty,

    #[error("color matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("bad relation index: {0}")]
    BadIndex(String),

    #[error("identity relation 0 appears off the diagonal at ({x}, {y})")]
    NotAPartitionOfDiagonal { x: usize, y: usize },

    #[error("no involution: pair ({x}, {y}) and its transpose disagree with relation {expected_star}")]
    NoInvolution { x: usize, y: usize, expected_star: usize },

    #[error(
        "not regular: a[{p}][{q}][{s}] is {expected} at ({}, {}) but {found} at ({}, {})",
        .witness.0, .witness.1, .other.0, .other.1
    )]
    NotRegular {
        p: usize,
        q: usize,
        s: usize,
        witness: (usize, usize),
        expected: u32,
        other: (usize, usize),
        found: u32,
    },

    #[error("basepoint {basepoint} out of range for {order} points")]
    BasepointOutOfRange { basepoint: usize, order: usize },

    #[error("not a group table: {0}")]
    NotAGroup(String),

    #[error("relation {relation} out of range for rank {rank}")]
    RelationOutOfRange { relation: usize, rank: usize },

    #[error("point {point} out of range for {order} points")]
    PointOutOfRange { point: usize, order: usize },

    #[error("subset {0:?} is not closed")]
    NotClosed(Vec<usize>),

    #[error("closed subset {0:?} is not normal")]
    NotNormal(Vec<usize>),

    #[error("not a morphism: pairs ({}, {}) and ({}, {}) share a relation but land in {} and {}",
        .first.0, .first.1, .second.0, .second.1, .images.0, .images.1)]
    NotAMorphism {
        first: (usize, usize),
        second: (usize, usize),
        images: (usize, usize),
    },

    #[error("map is not based")]
    NotBased,

    #[error("not an isomorphism: {0}")]
    NotIso(String),

    #[error("coset map is not well defined: points {0} and {1} share a coset but map to different cosets")]
    NotWellDefined(usize, usize),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("tau-scheme does not match the morphism: {0}")]
    MismatchedTauScheme(String),

    #[error("not a tau-scheme: {0}")]
    NotATauScheme(String),

    #[error("action condition ({condition}) fails at points {points:?}")]
    ConditionFailed { condition: u8, points: Vec<usize> },

    #[error("splitting does not induce an isomorphism onto the quotient: {0}")]
    SplitNotIso(String),

    #[error("|t(ui)| = 1 fails for u = {u}, t = {t}")]
    ConditionViolated { u: usize, t: usize },

    #[error("no based isomorphism from the given scheme to the basepoint coset subscheme")]
    NoBasedIso,

    #[error("reconstruction map is not an isomorphism: {0}")]
    EtaNotIso(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse { line, reason: reason.into() }
    }
}
