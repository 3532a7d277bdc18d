//! Finitely presented groups: words, presentations, coset tables, subgroup
//! presentations, abelian covers and simplification.

pub mod coset;
pub mod covers;
pub mod presentation;
pub mod schreier;
pub mod simplify;
pub mod surface;
pub mod word;

pub use coset::CosetTable;
pub use covers::{count_cyclic_quotients, cover_chain, enumerate_cyclic_covers, enumerate_regular_covers, Cover, CoverChain};
pub use presentation::Presentation;
pub use schreier::{cover_homology, reidemeister_schreier, Schreier};
pub use simplify::{replay, simplify_presentation, Move, SimplifyOptions, Simplified};
pub use surface::{surface_group_certificate, SurfaceCertificate, SurfaceKind};
pub use word::Word;
