//! Exact computations with divisor and curve classes on X^n_s, the blow-up
//! of projective n-space at s general points.
//!
//! The crate covers Cremona (Weyl group) orbits, joins and their base-locus
//! multiplicities, cones of moving curves, Weyl base loci and expected
//! dimensions, a finite-field interpolation oracle, and the Gale maps
//! relating X^4_8 to the degree one del Pezzo surface.

pub mod arith;
pub mod baselocus;
pub mod cones;
pub mod cycles;
pub mod error;
pub mod gale;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{CurveClass, DivisorClass, Space};
