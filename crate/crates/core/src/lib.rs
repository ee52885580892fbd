//! Exact rational-tangle calculus.
//!
//! The crate builds planar diagrams from tangle expressions, computes link
//! determinants through Goeritz matrices, certifies quasi-alternating
//! links by their smoothing recursion, reduces Montesinos forms, tracks
//! Dehn-filling slopes through the double branched cover, and emits group
//! presentations of the covers from checkerboard disk-band decompositions.
//! All arithmetic is exact; there is no floating point anywhere.

pub mod diagram;
pub mod brunner;
pub mod corpus;
pub mod dehn;
pub mod exactalg;
pub mod expr;
pub mod fraction;
pub mod invariants;
pub mod montesinos;
pub mod quasialt;
pub mod map;

pub use diagram::PlanarDiagram;
pub use expr::TangleExpr;
pub use fraction::{ContinuedFraction, Fraction};
