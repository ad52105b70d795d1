//! Exact computation of p-Frobenius numbers, p-genera, p-Sylvester sums and
//! their power and weighted analogues for numerical semigroups.
//!
//! Three independent routes are provided for every quantity:
//!
//! - [`oracle`]: brute force from the denumerant d(n; A), counted by dynamic
//!   programming. This is the ground truth.
//! - [`apery`]: the p-Apéry set found by scanning the denumerant table, then
//!   evaluated through the Apéry-set sum formulas (Bernoulli numbers for power
//!   sums, Eulerian numbers for weighted sums).
//! - [`arithmetic`]: closed forms for the triple (a, a+d, a+2d), valid for
//!   0 <= p <= floor(a/2), together with the classical two-generator,
//!   Roberts and Selmer baselines.
//!
//! [`query`] dispatches a single request to one or all of these routes, and
//! [`verify`] runs the cross-validation sweeps.

pub mod apery;
pub mod arithmetic;
pub mod error;
pub mod instance;
pub mod numeric;
pub mod oracle;
pub mod query;
pub mod verify;

pub use apery::AperySet;
pub use arithmetic::ArithTriple;
pub use error::{FrobError, Result};
pub use instance::Instance;
pub use numeric::{BigInt, BigRational};
pub use oracle::DenumerantTable;
pub use query::{Provenance, Quantity, Query, QueryResult};
