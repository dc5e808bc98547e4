//! Exact computations with finite-dimensional Leibniz algebras: structural
//! invariants, second cohomology with trivial coefficients, central
//! extensions, a catalog of known families and isomorphism testing.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod extension;
pub mod isomorphism;
pub mod linalg;
