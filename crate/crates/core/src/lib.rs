//! Confluent drawings: render non-planar graphs without crossings by merging
//! edges into smooth tracks.
//!
//! The pipeline is parse → [`reduction`] (replace cliques and bicliques by
//! junctions until the graph is planar) → [`track`] (combinatorial track
//! network) → [`render`] (layout and SVG). [`oracle`] decides small instances
//! exactly by exhaustive merge search.

pub mod cli;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod planarity;
pub mod reduction;
pub mod render;
pub mod track;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
