use thiserror::Error;

/// Errors raised by the exact computations and the input layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at {0}")]
    Pole(String),
    #[error("malformed type spec: {0}")]
    MalformedType(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("not a diagram automorphism: {0}")]
    NotDiagramAutomorphism(String),
    #[error("datum is not semisimple: {0}")]
    NotSemisimple(String),
    #[error("twisted type outside the built-in tables: {0}")]
    UnsupportedTwist(String),
    #[error("Weyl group exceeds the enumeration bound {0}")]
    WeylBound(usize),
    #[error("torus point is not fixed by the twist")]
    NotThetaFixed,
    #[error("representation is not self-dual")]
    NotSelfDual,
    #[error("gamma vanishes at s = 0 (zero of order {0})")]
    GammaVanishes(u32),
    #[error("gamma has a pole at s = 0 (order {0})")]
    GammaPole(u32),
    #[error("gamma is indeterminate at the point")]
    Indeterminate,
    #[error("point is not residual (p - z = {excess}, rank {rank}); the parameter is not discrete")]
    NotResidual { excess: i64, rank: usize },
    #[error("point is not W-conjugate to the principal point")]
    NotPrincipal,
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
}

pub type Result<T> = std::result::Result<T, Error>;
