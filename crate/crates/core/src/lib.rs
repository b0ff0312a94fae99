//! Exact computations on the Picard lattices of A-, D- and E-surfaces, from
//! curve enumeration up to Cox-ring presentations and the quadrics relating
//! them to cones over flag varieties.
//!
//! All arithmetic is exact. Integers stay in `i64` where the values are
//! provably small (lattice coordinates, Dynkin labels); elimination and
//! Cox-ring coefficients use arbitrary-precision integers and rationals.

pub mod cox;
pub mod curves;
pub mod error;
pub mod flag;
pub mod lattice;
pub mod linalg;
pub mod roots;
pub mod selftest;
pub mod weights;

pub use error::{Error, Result};
pub use lattice::{DivisorClass, IntersectionLattice, Kind, SurfaceFamily};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
