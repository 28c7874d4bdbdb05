use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("map is not an involution")]
    NotInvolution,

    #[error("embedding is not injective with torsion-free cokernel (Smith invariants {0:?})")]
    NotSaturated(Vec<String>),

    #[error("embedding does not intertwine the involutions")]
    NotEquivariantEmbedding,

    #[error("embedding is not equivariant: F∘τ̂ ≠ τ̂′∘F")]
    NonEquivariant,

    #[error("ambient cone is not stable under τ̂′")]
    ConeNotStable,

    #[error("{0}")]
    InvalidCone(String),

    #[error("empty input")]
    EmptyInput,

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("polyhedron has a non-pointed recession cone")]
    NonPointedTail,

    #[error("support function unbounded: covector is not in the dual of the tail cone")]
    Unbounded,

    #[error("image fan has a non-pointed cone")]
    NonPointedImage,

    #[error("vector {0:?} is not a ray generator of the image fan")]
    NotARay(Vec<String>),

    #[error("weight {0:?} lies outside the weight cone")]
    OutsideWeightCone(Vec<String>),

    #[error("fan support is not convex")]
    NonConvexSupport,

    #[error("fan is not stable under the involution")]
    FanNotStable,

    #[error("coefficient tail differs from the divisor tail cone")]
    TailMismatch,

    #[error("duplicate ray {0:?}")]
    DuplicateRay(Vec<String>),

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("sign data inconsistent with a monoid morphism: {0}")]
    InconsistentSigns(String),

    #[error("point {0:?} is not in the graded piece")]
    PointNotInPiece(Vec<String>),

    #[error("ambient cone must be the positive orthant for monomial enumeration")]
    NonOrthantAmbient,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub(crate) fn show<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
