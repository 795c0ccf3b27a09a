//! Exact-arithmetic engine for Brauer algebras of type C.
//!
//! The crate constructs the diagram algebra B(C_r, delta) and the group
//! algebra of the hyperoctahedral group W_r over the rationals or a prime
//! field, builds their permutation, Specht, cell and Young modules, and
//! machine-verifies the structural facts relating them (cell filtrations,
//! the stratifying system, and the Young-module decomposition of permutation
//! modules) at small rank.

pub mod algebra;
pub mod bipartition;
pub mod cli;
pub mod creps;
pub mod diagram;
pub mod ext;
pub mod fitting;
pub mod lr;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod signed_perm;
pub mod tableau;
pub mod verify;
pub mod wreps;

pub use bipartition::{BiPartition, CellIndex};
pub use matrix::Matrix;
pub use scalar::{FieldSpec, Scalar};
pub use signed_perm::{SignPlacement, SignedPerm};
