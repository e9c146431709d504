use alloc::boxed::Box;
use core::fmt;

use crate::classify::PairType;
use crate::gaussian::GaussianPair;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("affine map has a singular linear part")]
    SingularAffine,
    #[error("component means coincide")]
    EqualMeans,
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("mixing proportion {0} is outside [0, 1]")]
    MixingOutOfRange(f64),
    #[error("alpha {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("codirectionality is undefined for proportional covariances")]
    ProportionalCovariances,
    #[error("pair is {0}, cusp location needs Type 1")]
    NotType1(PairType),
    #[error("canonical mean has no vanishing coordinate")]
    NotType2Canonical,
    #[error("at least {min} samples required, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("no cusp sign change found on the singular set")]
    CuspNotFound,
    #[error("no Newton seed converged")]
    NewtonDivergence,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("{0}")]
    BoundViolation(Box<BoundViolation>),
}

/// A random trial whose mode count exceeded a bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundViolation {
    pub pair: GaussianPair,
    pub c: f64,
    pub expected_type: PairType,
    pub observed_modes: usize,
    pub type_cap: usize,
    pub root_bound: usize,
}

impl fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pair at c={} has {} modes (type cap {}, root bound {}): {:?}",
            self.expected_type,
            self.c,
            self.observed_modes,
            self.type_cap,
            self.root_bound,
            self.pair
        )
    }
}
