//! Isomorph-free enumeration of small triangulated 3-manifolds and 3-balls.
//!
//! The crate is organised around one currency type, [`Complex`], a pure
//! simplicial complex stored as its sorted facet list over at most 16 vertex
//! labels. On top of it sit:
//!
//! - [`canon`]: lexicographically least relabelings, isomorphism tests and
//!   combinatorial automorphism groups;
//! - [`enum2`] / [`enum3`]: backtracking generation of triangulated 2-spheres
//!   (the vertex-link catalog) and of closed 3-manifolds seeded by vertex stars;
//! - [`topo`]: integral homology, bistellar moves and Walkup-bound checks;
//! - [`balls`]: the sphere/ball correspondence by star deletion and coning;
//! - [`decomp`]: shellability, vertex-decomposability and constructibility;
//! - [`census`]: census records, the line-oriented census file format,
//!   checkpoint logs and the disk-spilling dedupe store.

pub mod balls;
pub mod canon;
pub mod census;
pub mod complex;
pub mod decomp;
pub mod enum2;
pub mod enum3;
pub mod expected;
pub mod topo;

mod error;

pub use canon::{CanonicalForm, GroupFingerprint, Permutation};
pub use topo::TopoType;
pub use complex::{Complex, FVector, Facet, VertexSet};
pub use error::{Error, Result};
