//! Concrete categories: finite pointed sets, weighted modules, and the zero
//! category.

pub mod counterexamples;
pub mod pointed;
pub mod weighted;
mod zero;

pub use counterexamples::{counterexample_suite, CounterexampleReport};
pub use pointed::{pointed_strictness, FinPointedSet, PointedMap};
pub use weighted::{all_subspaces, brute_quotient_norm, WeightUniverse, WeightedCat};
pub use zero::ZeroCategory;
