//! Graphs whose automorphism group is cyclic of order `2^n`, built on
//! `2^n + 6` vertices, together with the machinery to check them: bitset
//! graphs, graph6 I/O, permutation groups, an individualization-refinement
//! automorphism and canonical-form engine, and exhaustive enumeration of
//! small graphs by canonical augmentation.

pub mod aut;
pub mod cli;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod perm;

pub use aut::{are_isomorphic, automorphism_group, brute_force_aut, canonical_form, AutResult};
pub use construct::{build_gamma, GammaInstance};
pub use enumerate::{enumerate_graphs, search_min_vertices, SearchReport};
pub use error::{AutError, ConstructError, EnumerateError, Graph6Error, GraphError, PermError};
pub use graph::Graph;
pub use perm::{PermGroup, Permutation};
