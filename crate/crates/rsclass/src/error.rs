use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group descriptor: {0}")]
    Descriptor(String),
    #[error("coupling is not a homomorphism: relation {0} fails")]
    Coupling(String),
    #[error("group order {order} exceeds bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("order {order} is not of the form 4*lambda*p for p = {p}")]
    CatalogueShape { order: usize, p: u32 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
