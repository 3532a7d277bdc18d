//! Tetrahedral triangulations, their homology and cohomology, Pachner moves
//! and cyclic covers.

pub mod canon;
pub mod cocycle;
pub mod complex;
pub mod cover;
pub mod homology;
pub mod pachner;
pub mod perm;

pub use complex::{EdgeClass, EdgeEmbedding, FaceClass, Gluing, Triangulation, VertexClass, VertexKind, EDGE_SLOTS};
pub use homology::{fundamental_group, homology, DualTree};
pub use perm::Perm4;
pub use cocycle::{cocycle_space, cohomology_basis, peripheral_basis, standard_basis, Cocycle, CocycleSpace};
pub use canon::{canonical_string, isomorphism, Isomorphism};
pub use pachner::{pachner_23, pachner_32, valid_23_faces, valid_32_edges, MoveResult, TransportMap};
pub use cover::{cyclic_cover, CyclicCover};
