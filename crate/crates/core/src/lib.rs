//! Permutations, pipe dreams, padded Schubert polynomials and the
//! bijection `Phi` behind the `sl_2` action on them.

pub mod error;
pub mod perm;
pub mod phi;
pub mod pipedream;
pub mod poly;
pub mod sweep;

pub use error::{Error, Result};
pub use phi::{AlignKind, MarkClass, PhiContext, PhiTrace};
pub use perm::{compose, dom, Partition, Permutation, Pos, Transposition};
pub use pipedream::{enumerate, MarkedPipeDream, PipeDream};
pub use poly::{padded_schubert, schubert, Monomial, Polynomial};
