//! Exact integer rings the counting formulas are generic over.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer ring.
///
/// Implemented for `i64`, `i128` and [`num_bigint::BigInt`]. Fixed-width
/// types are fast but overflow on large inputs; the crate-root aliases use
/// `BigInt`.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type holds i64")
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
}
