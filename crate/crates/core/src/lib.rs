//! Exact computations in proto-exact categories: non-Archimedean weighted
//! modules, finite pointed sets, axiom audits, and small-object factorizations.

pub mod category;
pub mod exec;
pub mod factorization;
pub mod instances;
pub mod linalg;
pub mod random;
pub mod scalars;
pub mod weighted;
