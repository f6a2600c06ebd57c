use std::io;

use thiserror::Error;

use crate::classify::Obstruction;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow: result exceeds the exact range of the integer backend")]
    Overflow,

    /// Input to an operation that is only defined for differences of two squares.
    #[error("{0} is not a difference of two squares (it is 2 mod 4)")]
    NotDifferenceOfSquares(String),

    #[error("matrix is not a difference of two squares: {0}")]
    NotRepresentable(Obstruction),

    #[error("modulus {modulus} exceeds the exhaustive-enumeration cap {cap}")]
    ModulusCap { modulus: u32, cap: u32 },

    #[error("modulus must be positive")]
    ZeroModulus,

    /// A construction that the classification promises would succeed did not.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
