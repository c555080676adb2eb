use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate frame: {0}")]
    DegenerateFrame(&'static str),
    #[error("circles not disjoint")]
    NotDisjoint,
    #[error("components {0} and {1} are not disjoint")]
    ComponentsNotDisjoint(usize, usize),
    #[error("not invariant: image of component {0} matches no component")]
    NotInvariant(usize),
    #[error("component {0} carries no exact axis tag")]
    Untagged(usize),
    #[error("link degenerate: base component {base} meets component {other}")]
    LinkDegenerate { base: usize, other: usize },
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error("1/0 is the trivial two component link, which is excluded")]
    TrivialLink,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
