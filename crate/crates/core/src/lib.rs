//! Exact computations with Hermitian forms of arbitrary signature, the hyperquadrics
//! they cut out, and polynomial maps between them that send one hyperquadric into
//! another.

pub mod error;
pub mod grassmann;
pub mod harness;
pub mod hermitian;
pub mod linalg;
pub mod maps;
pub mod poly;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use hermitian::{PointSign, Signature, Subspace, Vector};
pub use linalg::Matrix;
pub use poly::{DivisionResult, Monomial, Polynomial};
pub use scalar::{GaussianRational, GQ};
