//! Exact computations on finite truncations of the semi-infinite wedge.
//!
//! Everything is generic over a [`Scalar`] field; the aliases below fix
//! arbitrary-precision rationals, which is what the CLI and tests use.

pub mod elimination;
pub mod error;
pub mod format;
pub mod hpf;
pub mod index;
pub mod linalg;
pub mod multivector;
pub mod poly;
pub mod scalar;
pub mod variety;

pub use error::{Result, WedgeError};
pub use index::{GoodParams, IndexSet, Partition, SignedIndex, Window};
pub use multivector::{Covector, Matrix, Multivector, Transition};
pub use poly::{Monomial, WedgePolynomial};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type QMultivector = Multivector<Rational>;
pub type QCovector = Covector<Rational>;
pub type QMatrix = Matrix<Rational>;
pub type QPolynomial = WedgePolynomial<Rational>;
