use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown Dynkin family `{0}`")]
    UnknownFamily(String),
    #[error("rank {rank} is out of range for family {family}")]
    RankOutOfRange { family: char, rank: usize },
    #[error("vertex {0} is not in the diagram")]
    UnknownVertex(usize),
    #[error("diagram must be affine")]
    NotAffine,
    #[error("marked set {0} must be a proper subset of the finite part")]
    MarkedNotProper(String),
    #[error("vectors live over different lattices")]
    LatticeMismatch,
    #[error("a restricted lattice needs at least two surviving vertices")]
    LatticeTooSmall,
    #[error("vertex {0} is not mutable here")]
    NotMutable(usize),
    #[error("the subgraph spans the whole affine diagram, its Weyl group is infinite")]
    InfiniteParabolic,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("the given vectors do not form a basis")]
    DegenerateBasis,
    #[error("coefficients are not integral in the model basis")]
    NonIntegral,
    #[error("step {position} (vertex {vertex}) is not valid for this path")]
    InvalidStep { position: usize, vertex: usize },
    #[error("resource cap exceeded: more than {0} chambers")]
    ResourceCap(usize),
    #[error("the zero cone is not a heart cone")]
    ZeroCone,
    #[error("not a heart cone: {0}")]
    NotAHeartCone(String),
    #[error("the zero functional has no numerical interval")]
    ZeroFunctional,
    #[error("chamber is not maximal in the requested sector")]
    NotMaximal,
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),
    #[error("chambers do not form a covering pair")]
    NotCovering,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
