//! Graded Kantor pairs from root data.
//!
//! Combinatorics of Kantor-admissible and short-Peirce-admissible markings
//! of Dynkin diagrams, the Weyl group action on them, Chevalley-basis
//! oracles that realise each marking as a trilinear pair, and the matrix
//! constructions of close-to-Jordan pairs.

// Matrix code reads more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod admissibility;
pub mod chevalley;
pub mod error;
pub mod linalg;
pub mod matrix_pairs;
pub mod nodeset;
pub mod root_hom;
pub mod root_system;
pub mod verify;
pub mod weyl_image;

pub use admissibility::{Marking, OrbitEntry, PairParameters};
pub use error::{Error, Result};
pub use nodeset::NodeSet;
pub use root_hom::{RootHom, WeylElement};
pub use root_system::{DiagramType, Family, Root, RootSystem};
