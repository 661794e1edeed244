//! Recognition of figure-8 heptagonal knots from Radon-partition sign tables,
//! an independent Alexander-invariant knot oracle, and a knot census over the
//! Hamiltonian cycles of linear K6/K7 embeddings.

pub mod census;
pub mod cli_io;
pub mod exact;
pub mod geometry;
pub mod oracle;
pub mod radon;

pub use geometry::{Point3, Rational, Sign};
pub use oracle::KnotClass;
pub use radon::{Heptagon, Labeling, PenetrationTable};
