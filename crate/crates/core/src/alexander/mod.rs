//! Fox calculus, Alexander polynomials and Alexander norm balls.

pub mod fox;
pub mod norm;
pub mod polynomial;

pub use fox::{fox_derivative, fox_matrix, AbelianizationMap};
pub use norm::{alexander_ball, alexander_norm, certified_faces, fibering_obstruction, norm_sandwich, BallFace, BallReport, NormBall, Sandwich};
pub use polynomial::{alexander_polynomial, alexander_polynomial_with, basis_equivalence, change_basis, AlexanderData};
