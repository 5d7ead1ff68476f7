//! Minimal (irredundant) covers of hypergraphs.
//!
//! A hypergraph is a family of sets; its vertices are the union of the
//! family. A cover is a subfamily with the same union, and a cover is minimal
//! when no proper subfamily of it still covers. Finite hypergraphs always
//! have minimal covers; countable ones may not, and the obstruction is a copy
//! of the ω hypergraph (all finite initial segments of the naturals).
//!
//! * [`hypergraph`]: finite hypergraphs, restriction, subfamily selectors.
//! * [`covers`]: cover and minimality checks, greedy extraction, enumeration.
//! * [`structured`]: hypotheses that force minimal covers and the matching
//!   constructions.
//! * [`countable`]: lazily generated families, staircase search, and the
//!   vertex-by-vertex cover construction.
//! * [`format`] and [`cli`]: the text file format and command-line front end.

pub mod cli;
pub mod countable;
pub mod covers;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod isomorphism;
pub mod random;
pub mod structured;
pub mod vertex_set;

pub use countable::{
    find_omega_witness, gen_domotor, gen_lattice_lines, gen_omega, local_construction, truncate, validate_witness,
    ConstructionTrace, LazyHypergraph, OmegaWitness,
};
pub use covers::{
    delete_and_lift, enumerate_minimal_covers, greedy_minimalize, is_cover, is_minimal_cover, is_minimal_cover_def,
    Cover, MinimalityReport,
};
pub use error::{Error, Result};
pub use hypergraph::{Edge, FiniteHypergraph};
pub use isomorphism::is_isomorphic;
pub use structured::{
    bounded_width_cover, check_finite_support, check_nm, check_point_finite, maximal_disjoint_subfamily,
    point_finite_cover, NmParams, SupportReport,
};
pub use vertex_set::{Vertex, VertexSet};
