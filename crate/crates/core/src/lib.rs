//! Bound quiver algebras over the rationals.
//!
//! The crate builds bound quivers (quivers with homogeneous relations),
//! computes their graded components, quadratic duals and trivial
//! extensions, materializes windows of their ℤ-covers and τ-slices,
//! generates McKay quivers with the relation families used for 2-slice
//! algebras, and classifies stable translation algebras as finite, tame or
//! wild from the spectrum of their Loewy matrix.
//!
//! Paths are written right to left: the path `[a, b]` means "b then a".

pub mod cli;
pub mod cover;
pub mod dual;
pub mod error;
pub mod graded;
pub mod io;
pub mod iso;
pub mod koszul;
pub mod linalg;
pub mod loewy;
pub mod mckay;
pub mod poly;
pub mod quiver;
pub mod trivext;

pub use error::{Error, Result};
