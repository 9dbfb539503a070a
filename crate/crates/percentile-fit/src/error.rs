use thiserror::Error;

/// Errors reported by the fitting library.
///
/// Everything here is a contract violation or a structural failure the caller
/// can act on; numerical noise is never turned into an error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("residual vector is empty")]
    EmptyResiduals,

    #[error("outlier count {outliers} out of range: need 0 <= outliers < {len}")]
    OutlierCountOutOfRange { outliers: usize, len: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dataset points have inconsistent feature dimensions")]
    RaggedFeatures,

    #[error("dataset mixes labeled and unlabeled points")]
    MixedLabels,

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("the {family} family requires labeled points")]
    LabelsRequired { family: &'static str },

    #[error("the {family} family does not accept labeled points")]
    LabelsUnexpected { family: &'static str },

    #[error("black-box families support at most 2 parameters, got {dim}")]
    BlackboxDimTooLarge { dim: usize },

    #[error("subset is empty")]
    EmptySubset,

    #[error("subset index {index} out of range for {len} points")]
    SubsetIndexOutOfRange { index: usize, len: usize },

    #[error("subset repeats index {index}")]
    DuplicateSubsetIndex { index: usize },

    #[error("subset of size {size} is too small: the fit needs at least {required} points")]
    SubsetTooSmall { size: usize, required: usize },

    #[error("enumerating {required} subsets exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("every candidate subset was degenerate")]
    AllSubsetsDegenerate,

    #[error(
        "small-subset enumeration needs d+1 < M-O, got d+1 = {small} and M-O = {inliers}; \
         fall back to full-subset enumeration"
    )]
    SmallSubsetBoundViolated { small: usize, inliers: usize },

    #[error("the {family} family has no exact small-subset fit; {solver} cannot use it")]
    NoExactSmallFit {
        family: &'static str,
        solver: &'static str,
    },

    #[error("{op} does not support the {family} family")]
    UnsupportedFamily {
        op: &'static str,
        family: &'static str,
    },

    #[error("sample count must be at least 1")]
    ZeroSamples,

    #[error("grid search supports at most 2 parameters, got {dim}")]
    GridDimTooLarge { dim: usize },

    #[error("grid resolution must be at least 2, got {resolution}")]
    GridResolutionTooSmall { resolution: usize },

    #[error("invalid grid box: {reason}")]
    GridBoxInvalid { reason: String },

    #[error("normal equations are singular")]
    SingularNormalEquations,

    #[error("invalid experiment config: {reason}")]
    InvalidConfig { reason: String },

    #[error("no trial results to summarize")]
    EmptyResults,
}

pub type Result<T> = std::result::Result<T, Error>;
