pub mod error;
pub mod alexander;
pub mod arith;
pub mod dualsurface;
pub mod exactalg;
pub mod fibering;
pub mod fpgroup;
pub mod triangulation;

pub use error::{Error, Result};
