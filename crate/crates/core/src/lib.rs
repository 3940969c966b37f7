//! Exact computations for the invariant rings `R_w` of weighted points on
//! the projective line.
//!
//! The crate covers three connected pieces:
//!
//! * [`combinatorics`]: two-row semistandard tableaux, their first-row
//!   partitions and a brute-force stretched Kostka count.
//! * [`hilbert`]: closed inclusion-exclusion formulas for the Hilbert
//!   function and degree, Hilbert polynomials, Hilbert series and the
//!   numerical Koszul test `H(-z)^{-1} >= 0`.
//! * [`polytope`] and [`toric`]: the polytopes `Q_w` and `P_w`, the lattice
//!   isomorphism between them, normality by even rounding, and the quadratic
//!   Groebner basis (type A and type B binomials) of the toric ideal of `P_w`
//!   together with degreewise and Buchberger certification.
//!
//! Integer-valued routines in [`hilbert`] and [`series`] are generic over a
//! [`Scalar`] ring (`i64`, `i128`, [`num_bigint::BigInt`]). The aliases below
//! fix the arbitrary-precision choice used by the command-line front end.

pub mod combinatorics;
pub mod error;
pub mod hilbert;
pub mod polytope;
pub mod scalar;
pub mod series;
pub mod subsets;
pub mod toric;
pub mod weights;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use weights::WeightVector;

/// Arbitrary-precision integer used for all unbounded counts.
pub type Int = num_bigint::BigInt;
/// Exact rationals over [`Int`].
pub type Rational = num_rational::BigRational;
/// Truncated power series with [`Int`] coefficients.
pub type Series = series::GradedSeries<Int>;
/// Rational form `numerator / (1 - z)^e` with [`Int`] coefficients.
pub type RationalForm = series::RationalHilbertForm<Int>;
/// Hilbert polynomial with [`Rational`] coefficients.
pub type HilbertPoly = hilbert::HilbertPolynomial<Int>;
