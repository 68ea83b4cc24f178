//! Sparse-graph enumeration: degeneracy orientations, maximal cliques,
//! tuple-based maximal bicliques with a dynamically maintained index, and
//! one-way bicliques of digraphs.

mod bicliques;
mod cliques;
mod directed;
mod index;
mod orient;

pub use bicliques::{common_neighbors, list_max_bicliques, Biclique};
pub use cliques::{is_clique, list_max_cliques};
pub use directed::{directed_bicliques, DirectedBiclique};
pub use index::{build_index, BicliqueIndex, TupleEntry};
pub use orient::{orient, Orientation};
