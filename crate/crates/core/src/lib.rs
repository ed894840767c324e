//! Exact computation in the ordered semigroups of rational step functions
//! `Lsc([0,1], N̄)` and their finite direct sums.
//!
//! The layers build on each other:
//! [`exactset_stepfn`] (open sets, step functions, `≪`),
//! [`semigroup`] (tuples, compacts),
//! [`xn_monoid`] (the exchange monoids `X_n`),
//! [`morphisms`] (grid certificates of Cu-morphisms),
//! [`chainable`] (chainable subsets, properties I₀ / I, factorization).

pub mod error;
pub mod rational;
pub mod exactset_stepfn;
pub mod semigroup;
pub mod xn_monoid;
pub mod morphisms;
pub mod chainable;
pub mod format;
pub mod cli;

pub use error::{Error, Result};
pub use exactset_stepfn::{Interval, OpenSet, StepFn};
pub use rational::Q;
pub use semigroup::SemigroupElem;
pub use xn_monoid::{Omega, XnElem, XnPair};
