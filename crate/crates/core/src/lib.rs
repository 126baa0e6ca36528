//! Verification and search toolkit for r-graphs: regular multigraphs in which
//! every odd vertex set sends at least `r` edges to the rest of the graph.
//!
//! The crate covers perfect matchings and the Tutte condition ([`matching`]),
//! odd cuts via Gomory–Hu trees together with the bipartite / tight-cut /
//! bicritical trichotomy and brick recognition ([`oddcut`]), exact searches for
//! edge colourings, Berge–Fulkerson covers and restricted perfect-matching
//! families with gluing across tight cuts ([`covers`]), and the
//! vertex-to-multicycle construction on which no family avoids a fixed
//! perfect matching pairwise ([`gadget`]).

pub mod cli;
pub mod covers;
pub mod error;
pub mod format;
mod flow;
pub mod gadget;
pub mod matching;
pub mod multigraph;
pub mod named;
pub mod oddcut;

pub use error::{Error, Result};
pub use multigraph::{Edge, Multigraph, VertexSet};
