use crate::numeric::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("item {index} has size {size}, expected a value in (0, 1]")]
    SizeOutOfRange { index: usize, size: Rational },
    #[error("beta must be non-negative, got {0}")]
    NegativeBeta(Rational),
    #[error("green threshold G must lie in [0, 1], got {0}")]
    GreenOutOfRange(Rational),
    #[error("energy budget must be non-negative, got {0}")]
    NegativeBudget(Rational),
    #[error("CGBP instance infeasible: budget {budget} is below the minimum energy {minimum}")]
    InfeasibleBudget { budget: Rational, minimum: Rational },
    #[error("instance has no energy budget; CGBP requires one")]
    MissingBudget,
    #[error("load {0} is outside [0, 1]")]
    LoadOutOfRange(Rational),
    #[error("epsilon must be in (0, 1] with integral 1/epsilon, got {0}")]
    InvalidEpsilon(Rational),
    #[error("delta {delta} must lie in [0, {limit}]")]
    InvalidDelta { delta: Rational, limit: Rational },
    #[error("tau {tau} must lie in [0, {limit}]")]
    InvalidTau { tau: Rational, limit: Rational },
    #[error("scaling factor {0} must be positive")]
    InvalidScale(Rational),
    #[error("scaled size of item {index} is {size}, exceeding capacity 1")]
    ScaledSizeTooLarge { index: usize, size: Rational },
    #[error("pipeline requires {requirement}")]
    WrongRegime { requirement: &'static str },
    #[error("bin {bin} is overfull with load {load}")]
    OverfullBin { bin: usize, load: Rational },
    #[error("bin {bin} is empty")]
    EmptyBin { bin: usize },
    #[error("item {item} covered twice (bins {first} and {second})")]
    ItemCoveredTwice { item: usize, first: usize, second: usize },
    #[error("item {item} is not packed")]
    ItemMissing { item: usize },
    #[error("bin {bin} references unknown item {item}")]
    UnknownItem { bin: usize, item: usize },
    #[error("{what} budget exceeded after {explored} nodes")]
    BudgetExceeded { what: &'static str, explored: u64 },
}
