use thiserror::Error;

use crate::nets::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime >= 5")]
    InvalidModulus(u64),
    #[error("no primitive {n}-th root of unity: {n} does not divide p - 1 = {p_minus_one}")]
    NoRootOfUnity { n: u64, p_minus_one: u64 },
    #[error("prime search exhausted below {0}")]
    PrimeSearchExhausted(u64),
    #[error("the zero vector is not a projective point or line")]
    ZeroVector,
    #[error("points coincide; the joining line is undefined")]
    CoincidentPoints,
    #[error("lines coincide; the meet is undefined")]
    CoincidentLines,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("lines are not concurrent")]
    NotConcurrent,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("singular point")]
    SingularPoint,
    #[error("c^2 - c + 1 != 0: the cubic does not have j-invariant 0")]
    NotEquianharmonic,
    #[error("{0} is not a square in GF(p)")]
    NoSquareRoot(u64),
    #[error("expected {expected} common points, found {found}")]
    BaseLocusSize { expected: usize, found: usize },
    #[error("coset collision: the three cosets are not pairwise disjoint")]
    CosetCollision,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("net is not verified")]
    Unverified,
    #[error("net violation: {0}")]
    Net(Violation),
    #[error("cross-ratio is not constant: {0}")]
    NonConstant(String),
    #[error("no construction found: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
