//! Finite `(L,M)`-fuzzy convex structures.

pub mod cli;
pub mod constructions;
pub mod convexity;
pub mod enumerate;
pub mod error;
pub mod functors;
pub mod fuzzy;
pub mod gallery;
pub mod io;
pub mod lattice;
pub mod morphisms;
pub mod oracle;
pub mod suite;

pub use error::{Error, Result};
pub use fuzzy::{Carrier, FuzzyDomain, FuzzySet, PointSet, SpaceMap};
pub use lattice::{Elem, ElementFamily, FiniteLattice, LatticeError};
