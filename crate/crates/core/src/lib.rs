//! Exact computations with logarithmic tangent sheaves on the projective
//! plane, their restrictions to lines, and the Picard-lattice bookkeeping of
//! the cubic surface obtained by blowing up six points.
//!
//! Everything is exact: scalars are arbitrary-precision rationals and no
//! floating point is used anywhere.

pub mod blowup;
mod error;
pub mod exactalg;
pub mod p1split;
pub mod planelog;
pub mod rng;

pub use error::{Error, Result};
