//! Exact computations for quasimap wall-crossing in hybrid gauged linear
//! sigma models: sector bookkeeping, localization graphs, I- and
//! J-function coefficients, and the equivariant projective line.

pub mod algebra;
pub mod graphs;
pub mod jfun;
pub mod model;
pub mod p1series;

pub use algebra::{BigRat, CohClass, RatFun, Relation, TruncSeries};
