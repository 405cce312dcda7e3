use thiserror::Error;

use crate::perm::{Permutation, Pos, Transposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{n}: {window:?}")]
    NotAPermutation { window: Vec<usize>, n: usize },

    #[error("not a partition (must be weakly decreasing): {0:?}")]
    InvalidPartition(Vec<usize>),

    #[error("could not parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("invalid transposition t({a},{b}): need 1 <= a < b")]
    InvalidTransposition { a: usize, b: usize },

    #[error("positions are 1-based, got {0}")]
    InvalidPosition(Pos),

    #[error("window bound must be at least 1")]
    InvalidBound,

    #[error("{0} is not dominant (contains a 132-pattern)")]
    NotDominant(Permutation),

    #[error("{w} is not below {pi} in left weak order")]
    NotBelowInWeakOrder { w: Permutation, pi: Permutation },

    #[error("{t} does not give a cover {w} -> t*w below {pi}")]
    NotACover {
        w: Permutation,
        t: Transposition,
        pi: Permutation,
    },

    #[error("pipe dream is not reduced")]
    NotReduced,

    #[error("trace box {requested} is smaller than the required {required}")]
    BoxTooSmall { requested: usize, required: usize },

    #[error("window {window} exceeds the brute-force limit {limit}")]
    WindowTooLarge { window: usize, limit: usize },

    #[error("position {0} is a cross, expected a bump")]
    MarkOnCross(Pos),

    #[error("mark {0} is not dominated")]
    NotDominated(Pos),

    #[error("marked pipe dream at {0} is not slidable")]
    NotSlidable(Pos),

    #[error("marked pipe dream at {0} is not swappable")]
    NotSwappable(Pos),

    #[error("marked pipe dream at {mark} is not ({kind},{k})-aligned")]
    NotAligned {
        mark: Pos,
        kind: &'static str,
        k: usize,
    },

    #[error("marked pipe dream at {0} is not in the P0 class")]
    NotClassZero(Pos),

    #[error("monomial exponent exceeds the padding partition at index {0}")]
    ExceedsPadding(usize),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
