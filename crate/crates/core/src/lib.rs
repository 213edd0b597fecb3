//! Generalized bicycle (GB) quantum codes over the ring F2[x]/(x^n - 1).
//!
//! The crate covers ring arithmetic, code construction, conversion from
//! additive cyclic codes over F4, distance bounds and exact search, the two
//! weight-four families, and Tanner-graph girth.

pub mod additive;
pub mod alist;
pub mod bits;
pub mod code;
pub mod distance;
pub mod families;
pub mod graph;
pub mod matrix;
pub mod poly;

pub use bits::Bits;
pub use code::{build_gb, CodeDescriptor, CodeError, GBCode};
pub use matrix::{BinaryMatrix, RowEchelon};
pub use poly::{CyclicPoly, F2Poly, PolyError};
