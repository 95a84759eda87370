//! Involution prefixes and ancestor decompositions in Coxeter groups.
//!
//! The crate enumerates finite Coxeter groups from their root systems,
//! computes prefixes in the weak order, ancestors and involution lengths, and
//! sweeps whole groups to check that every non-identity element has a unique
//! longest involution prefix. Coxeter elements of arbitrary (also infinite)
//! groups are analysed purely on the Coxeter graph, and the universal group
//! is handled by word rewriting.

pub mod coxelem;
pub mod error;
pub mod graph;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod system;
pub mod table;
pub mod universal;
pub mod verify;
pub mod weak;

pub use error::{Error, Result};
pub use graph::{Coloring, VertexSet};
pub use roots::{build_root_system, Root, RootSystem};
pub use scalar::RootScalar;
pub use system::{parse_spec, CoxeterGraph, CoxeterMatrix, Label, SystemSpec};
pub use table::{build_group_table, ElementId, GroupTable, Word};
pub use universal::FreeWord;
pub use verify::{sweep, ConjectureReport, SweepOptions};
pub use weak::{AncestorDecomposition, Ambiguity, Outcome, PrefixSet};

/// Root system with double precision coordinates.
pub type RootSystemF64 = RootSystem<f64>;
/// Root system with single precision coordinates.
pub type RootSystemF32 = RootSystem<f32>;
