//! Combinatorics of CAT(0) cube complexes.
//!
//! * [`median`]: finite cube complexes as hyperplane-labelled median graphs.
//! * [`sageev`]: dual cube complexes of finite wallspaces.
//! * [`flat`]: periodic wall data on a flat, orbit classification, windowed
//!   hulls and the product/non-cocompact dichotomy.
//! * [`lattice`]: integer sublattices and the commensurability obstruction.

pub mod bits;
pub mod median;
pub mod sageev;
pub mod fixtures;
pub mod flat;
pub mod lattice;
