use thiserror::Error;

use crate::polyring::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("derivation or map needs {nvars} non-Laurent images in {nvars} variables")]
    InvalidImages { nvars: usize },
    #[error("iterates of x{var} did not vanish within {cap} steps")]
    NilpotencyCap { var: usize, cap: usize },
    #[error("slice formula needs the last variable to map to 1")]
    NotASlice,
    #[error("the zero derivation has no leading derivation")]
    ZeroDerivation,
    #[error("elementary step on x{index} must not involve x{index}")]
    ElementaryInvolvesVariable { index: usize },
    #[error("affine matrix is singular or not {0}x{0}")]
    SingularAffine(usize),
    #[error("map carries no generator word")]
    NoWord,
    #[error("map has a zero image at x{0}")]
    ZeroImage(usize),
    #[error("operation needs 3 variables, got {0}")]
    NotThreeVariables(usize),
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("lemma hypothesis failed: {0}")]
    LemmaHypothesis(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("closed form disagrees with the exponential computation: {0}")]
    ClosedFormMismatch(String),
    #[error("bracket degree is -inf; the bound is undefined for dependent pairs")]
    DependentPair,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
