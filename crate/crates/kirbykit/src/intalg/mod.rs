//! Exact integer linear algebra and Laurent-polynomial arithmetic.
//!
//! Everything here works over arbitrary-precision integers; there is no
//! floating point anywhere in the invariant chain.

mod abelian;
mod laurent;
mod matrix;
mod snf;

pub use abelian::AbelianGroup;
pub use laurent::{LaurentError, LaurentPoly};
pub use matrix::{IntMatrix, MatrixError};
pub use snf::SmithNormalForm;
