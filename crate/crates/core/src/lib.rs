//! Exact computer algebra for super-representations of quivers: the
//! supercommutative coordinate ring, supermatrices, the Lie superalgebra
//! action, generating semi-invariants and a brute-force oracle.

pub mod cli;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod ring;
pub mod semi;
pub mod space;
pub mod supermatrix;

pub use error::{Error, Result};
