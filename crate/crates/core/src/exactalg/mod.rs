//! Exact integer and rational algebra shared by the rest of the crate.

pub mod laurent;
pub mod matrix;
pub mod polytope;

pub use laurent::{laurent_det, laurent_gcd, laurent_maximal_minors, LaurentPoly};
pub use matrix::{abelian_invariants, smith_normal_form, AbelianGroup, IntMatrix, SmithForm};
pub use polytope::{convex_hull, dual_norm_ball, newton_polytope, DualBall, FaceData, Facet, Hull, LatticePolytope};
