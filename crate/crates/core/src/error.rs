use alloc::string::String;

use crate::torus::Character;

/// Errors raised by the algebra kernel and the localization pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("the zero ideal is not supported")]
    ZeroIdeal,
    #[error("generator `{0}` is not homogeneous in x0..x3")]
    NotHomogeneous(String),
    #[error("every generator vanishes at t = 0")]
    VanishesAtTZero,
    #[error("operation requires an ideal in x0..x3 only, got `{0}`")]
    InvolvesT(String),
    #[error("monomial `{0}` has a nonzero t-exponent")]
    NonzeroTExponent(String),
    #[error("index {k} out of range for {n} values")]
    OutOfRange { k: usize, n: usize },
    #[error("character bag is not contained in the ambient bag")]
    NotContained,
    #[error("character {0:?} is not in the normal bag")]
    MissingCharacter(Character),
    #[error("character bag is not effective")]
    NotEffective,
    #[error("duplicate interpolation node d = {0}")]
    DuplicateNode(i64),
    #[error("at least two interpolation nodes are required")]
    TooFewNodes,
    #[error("degree {0} is not supported on this path")]
    UnsupportedDegree(i64),
    #[error("weight spec {0:?} makes a tangent weight vanish")]
    Inadmissible([i64; 4]),
    #[error("Bott sum is not integral: {0}")]
    NonIntegral(String),
    #[error("structural failure in {stage}: {detail}")]
    Structural { stage: &'static str, detail: String },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn structural(stage: &'static str, detail: impl Into<String>) -> Error {
    Error::Structural {
        stage,
        detail: detail.into(),
    }
}
