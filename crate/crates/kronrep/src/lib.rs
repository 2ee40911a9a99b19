//! Exact workbench for modules over the n-Kronecker algebra.
//!
//! The crate builds tree modules as subtrees of the universal cover of the
//! quiver (an n-regular bipartite tree), pushes them down to sparse matrix
//! presentations over exact fields, and provides the linear algebra needed
//! to count isomorphism classes and certify indecomposability.

pub mod cover;
pub mod error;
pub mod export;
pub mod field;
pub mod hom;
pub mod matrix;
pub mod module;
pub mod root_system;
pub mod verify;

pub use error::{Error, Result};
pub use root_system::{ArrowCount, CoxeterDirection, DimVector, RootClass, RootKind};
