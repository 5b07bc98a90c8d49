use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),

    #[error("{n} is not coprime to {modulus}")]
    NotCoprime { n: i64, modulus: u64 },

    #[error("group is not finite within bound {0}")]
    NotFinite(usize),

    #[error("generator {0} is not invertible")]
    SingularGenerator(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("arrangement is not essential")]
    NotEssential,

    #[error("{count} hyperplanes exceeds the desk-scale bound of {bound}")]
    TooManyHyperplanes { count: usize, bound: usize },

    #[error("invalid group spec: {0}")]
    Spec(String),

    #[error("not a supported Coxeter catalog group: {0}")]
    NotCoxeter(String),

    #[error("invariant form is not certified positive definite: {0}")]
    NotPositive(String),

    #[error("point lies on hyperplane {0}")]
    OnHyperplane(usize),

    #[error("path step around hyperplane {0} is too coarse; refine the samples")]
    TooCoarse(usize),

    #[error("no regular waypoint found near hyperplane {0}")]
    NoWaypoint(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
