//! Exact numerical K-theory of Fano threefolds with Picard group `Z`.
//!
//! Everything here is computed in exact arithmetic: cycle classes have
//! arbitrary-precision rational coefficients, lattices and Gram matrices are
//! arbitrary-precision integer matrices, and every check is an equality, not
//! a tolerance. The crate covers the classification registry of the 17
//! deformation classes, products in the numerical Chow ring, Riemann-Roch
//! Euler pairings via the Todd class, Chern characters of the distinguished
//! Mukai bundles, right-orthogonal complement lattices of exceptional
//! sequences with their Euler forms, Hermite/Smith normal forms and bounded
//! enumeration of unimodular isometries, rank-2 bundle numerology, and the
//! intersection-pairing criteria for AK-compatibility.

pub mod ak;
pub mod bundle;
pub mod chow;
pub mod ktheory;
pub mod lattice;
pub mod ratio;
pub mod registry;
pub mod sod;

pub use chow::CycleClass;
pub use ktheory::KClass;
pub use lattice::{BilinearLattice, IntMatrix};
pub use ratio::Rat;
pub use registry::FanoDescriptor;
