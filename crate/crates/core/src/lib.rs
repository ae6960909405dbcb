//! Exact free-boson engine for the elliptic algebra at generic level.

pub mod catalog;
pub mod fock;
pub mod oscillators;
pub mod qseries;
pub mod verifier;
pub mod vop;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("product is an infinite sum in the exchange variable")]
    InfiniteSum,
    #[error("not meromorphic: {0}")]
    NotMeromorphic(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown field or relation: {0}")]
    Unknown(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
