use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("weight is not integral: {0}")]
    NotIntegral(String),
    #[error("weight is not parabolic-dominant: {0}")]
    NotParabolicDominant(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("levels differ ({0} vs {1}); weights lie in distinct blocks")]
    LevelMismatch(String, String),
    #[error("singular anchor {0}: graded decomposition data needs a regular weight (use the dual-block routines)")]
    SingularAnchor(String),
    #[error("element is not a minimal coset representative: {0}")]
    NotMinimalRepresentative(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("invalid parabolic subset: {0}")]
    InvalidParabolic(String),
    #[error("no admissible dual anchor: {0}")]
    NoDualAnchor(String),
    #[error("dot action paths disagree: {0}")]
    DotActionMismatch(String),
    #[error("parse error in `{key}`: {msg}")]
    Parse { key: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
