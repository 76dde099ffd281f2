//! Finite-geometry engine for maximal partial line spreads of PG(5,q).
//!
//! * [`gf`]: table-driven GF(q) arithmetic.
//! * [`projgeom`]: points, lines and hyperplanes of PG(N,q).
//! * [`spread`]: partial spreads, holes, and the maximality verifier.
//! * [`builder`]: the hyperplane construction and its size ladder.
//! * [`search`]: randomized search, size spectra and reference bounds.
//! * [`cert`]: the certificate file format and re-verification.

pub mod builder;
pub mod cert;
pub mod construct;
pub mod error;
pub mod gf;
pub mod projgeom;
pub mod search;
pub mod spread;

pub use error::{Error, Result};
